#ifndef CONGEST_LOWERBOUND_HPP
#define CONGEST_LOWERBOUND_HPP

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "congest/algorithms/registry.hpp"
#include "congest/generators.hpp"

namespace congest {

enum class Outcome : std::uint8_t { kLLp, kLRp, kRLp, kRRp, kInvalid, kIncomplete };
inline constexpr std::size_t kOutcomeCount = 6;

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kLLp: return "LL'";
    case Outcome::kLRp: return "LR'";
    case Outcome::kRLp: return "RL'";
    case Outcome::kRRp: return "RR'";
    case Outcome::kInvalid: return "invalid";
    case Outcome::kIncomplete: return "incomplete";
  }
  return "?";
}

/// Names the output by which half of each component it equals. On the
/// bridge graph the four endpoints keep their sides from D, so LL' and RR'
/// name outputs that contain both ends of a bridge.
inline Outcome classify_outcome(const Graph& g, const std::vector<bool>& in_set) {
  if (!g.has_parts()) throw std::invalid_argument("classify_outcome needs L/R/L'/R' node metadata");
  if (in_set.size() != g.node_count()) throw std::invalid_argument("one membership flag per node required");
  // Bit 0: this half of G is selected; bit 1: this half of G'.
  bool l = true, r = true, lp = true, rp = true;
  bool l_any = false, r_any = false, lp_any = false, rp_any = false;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    const bool in = in_set[v];
    switch (g.part(v)) {
      case NodePart::kLeft: l = l && in; l_any = l_any || in; break;
      case NodePart::kRight: r = r && in; r_any = r_any || in; break;
      case NodePart::kLeftPrime: lp = lp && in; lp_any = lp_any || in; break;
      case NodePart::kRightPrime: rp = rp && in; rp_any = rp_any || in; break;
      default: throw std::invalid_argument("node outside the L/R/L'/R' halves");
    }
  }
  const bool first_l = l && !r_any;
  const bool first_r = r && !l_any;
  const bool second_l = lp && !rp_any;
  const bool second_r = rp && !lp_any;
  if (first_l && second_l) return Outcome::kLLp;
  if (first_l && second_r) return Outcome::kLRp;
  if (first_r && second_l) return Outcome::kRLp;
  if (first_r && second_r) return Outcome::kRRp;
  return Outcome::kInvalid;
}

/// Stream keys that depend on a node's position within its component and
/// on a per-component seed, so the two copies draw i.i.d. randomness.
/// Requires the D/B layout: component 0 is [0, n/2), component 1 the rest.
inline std::vector<std::uint64_t> component_exchangeable_keys(std::size_t n, std::uint64_t seed) {
  if (n % 4 != 0) throw InvalidParameter("component seeding needs n divisible by 4");
  std::vector<std::uint64_t> keys(n);
  const std::size_t half = n / 2;
  for (std::size_t v = 0; v < n; ++v) {
    const std::uint64_t component_seed = derive_seed(seed, v < half ? 0xc0 : 0xc1);
    keys[v] = derive_seed(component_seed, v % half);
  }
  return keys;
}

enum class FixtureKind { kDisconnected, kBridge };

struct BridgeExperimentConfig {
  std::size_t n = 64;
  std::string algorithm = "2rs-msg";
  AlgoParams params;
  std::optional<std::uint64_t> mu;  // message budget; none = unbudgeted
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  FixtureKind kind = FixtureKind::kBridge;
  bool exchangeable_seeding = false;
  std::optional<Round> round_cap;
};

struct BridgeTrialRecord {
  std::uint64_t graph_seed = 0;
  std::uint64_t run_seed = 0;
  bool crossed = false;
  std::optional<std::uint64_t> messages_before_first_crossing;
  Outcome outcome = Outcome::kIncomplete;
  std::uint64_t messages_total = 0;
  Round rounds = 0;
};

/// Called with the engine statistics of every trial.
using BridgeTrialObserver = std::function<void(const SimStats&)>;

struct BridgeExperimentResult {
  BridgeExperimentConfig config;
  std::vector<BridgeTrialRecord> trials;
  double crossing_rate = 0;
  std::array<std::size_t, kOutcomeCount> histogram{};
  /// Mean over trials of min(1, 16 M / n^2): the chance that M messages on
  /// uniformly chosen ports of the n^2/4 port slots hit one of the 4 bridge
  /// ports (union bound).
  double predicted_rate = 0;
};

/// Trial t uses graph seed derive_seed(seed, 2t) and run seed
/// derive_seed(seed, 2t + 1) for both fixture kinds, so D and B trials pair up:
/// both graphs share IDs and port layout, and a trial without a bridge send
/// has the same trace on both.
inline BridgeExperimentResult bridge_experiment(const BridgeExperimentConfig& config,
                                                const BridgeTrialObserver& observe = {}) {
  if (config.n == 0 || config.n % 4 != 0) throw InvalidParameter("bridge experiment needs n divisible by 4");
  if (config.trials == 0) throw InvalidParameter("bridge experiment needs at least one trial");
  const auto& algo = find_algorithm(config.algorithm);
  const AlgoParams params = resolve_params(algo, config.params);
  BridgeExperimentResult result;
  result.config = config;
  std::size_t crossed = 0;
  const double ports = static_cast<double>(config.n) * static_cast<double>(config.n) / 4.0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    BridgeTrialRecord rec;
    rec.graph_seed = derive_seed(config.seed, 2 * t);
    rec.run_seed = derive_seed(config.seed, 2 * t + 1);
    const Graph g = config.kind == FixtureKind::kBridge ? gen_bridge_graph(config.n, rec.graph_seed)
                                                        : gen_disconnected_d(config.n, rec.graph_seed);
    RunOptions opts;
    opts.seed = rec.run_seed;
    opts.message_limit = config.mu;
    opts.round_cap = config.round_cap;
    if (config.exchangeable_seeding) opts.stream_keys = component_exchangeable_keys(config.n, rec.run_seed);
    const auto out = algo.run(g, params, opts);
    const auto& st = out.stats;
    if (observe) observe(st);
    rec.messages_total = st.messages_total;
    rec.rounds = st.rounds;
    if (const auto it = st.messages_by_tag.find("bridge"); it != st.messages_by_tag.end() && it->second > 0) {
      rec.crossed = true;
      rec.messages_before_first_crossing = st.messages_before_first_tag.at("bridge");
    }
    rec.outcome = st.complete() ? classify_outcome(g, out.in_set) : Outcome::kIncomplete;
    crossed += rec.crossed;
    ++result.histogram[static_cast<std::size_t>(rec.outcome)];
    result.predicted_rate += std::min(1.0, 4.0 * static_cast<double>(rec.messages_total) / ports);
    result.trials.push_back(rec);
  }
  result.crossing_rate = static_cast<double>(crossed) / static_cast<double>(config.trials);
  result.predicted_rate /= static_cast<double>(config.trials);
  return result;
}

}  // namespace congest

#endif  // CONGEST_LOWERBOUND_HPP
