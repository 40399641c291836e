#ifndef CONGEST_ALGORITHMS_REGISTRY_HPP
#define CONGEST_ALGORITHMS_REGISTRY_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "congest/algorithms/fast_two_ruling_set.hpp"
#include "congest/algorithms/five_ruling_set.hpp"
#include "congest/algorithms/ghaffari.hpp"
#include "congest/algorithms/greedy.hpp"
#include "congest/algorithms/luby.hpp"
#include "congest/algorithms/msg_efficient.hpp"
#include "congest/algorithms/sparsify.hpp"
#include "congest/algorithms/three_ruling_set.hpp"
#include "congest/algorithms/two_ruling_set.hpp"

namespace congest {

using AlgoParams = std::map<std::string, std::string>;

inline constexpr unsigned kUnbounded = 0xffffffffu;

struct AlgorithmSpec {
  std::string name;
  std::string summary;
  AlgoParams defaults;
  std::function<RulingSetOutput(const Graph&, const AlgoParams&, const RunOptions&)> run;
  /// The (alpha, beta) contract the output is verified against.
  std::function<std::pair<unsigned, unsigned>(const AlgoParams&)> bounds;
};

namespace detail {

inline double real_param(const AlgoParams& p, const std::string& key) {
  const std::string& text = p.at(key);
  std::size_t pos = 0;
  double value = 0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty()) throw InvalidParameter("parameter " + key + " needs a number, got '" + text + "'");
  return value;
}

inline bool bool_param(const AlgoParams& p, const std::string& key) {
  const std::string& text = p.at(key);
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw InvalidParameter("parameter " + key + " needs true or false, got '" + text + "'");
}

inline unsigned beta_param(const AlgoParams& p) {
  const double b = real_param(p, "beta");
  if (b < 1 || b != static_cast<unsigned>(b)) throw InvalidParameter("beta must be a positive integer");
  return static_cast<unsigned>(b);
}

inline auto fixed(unsigned alpha, unsigned beta) {
  return [=](const AlgoParams&) { return std::pair{alpha, beta}; };
}

inline std::vector<AlgorithmSpec> make_registry() {
  std::vector<AlgorithmSpec> r;
  r.push_back({"luby", "Luby's marking MIS", {}, [](const Graph& g, const AlgoParams&, const RunOptions& o) {
                 return run_luby(g, o);
               },
               fixed(2, 1)});
  r.push_back({"greedy-rs", "greedy beta-ruling set by ID on all nodes", {{"beta", "2"}},
               [](const Graph& g, const AlgoParams& p, const RunOptions& o) { return run_greedy(g, beta_param(p), o); },
               [](const AlgoParams& p) { return std::pair{2u, beta_param(p)}; }});
  r.push_back({"2rs-time", "time-efficient 2-ruling set (scales of marking plus greedy sub-calls)",
               {{"eps", "0.25"}, {"c_iter", "16"}},
               [](const Graph& g, const AlgoParams& p, const RunOptions& o) {
                 return run_two_ruling_set(g, {real_param(p, "eps"), real_param(p, "c_iter")}, o);
               },
               fixed(2, 2)});
  r.push_back({"sparsify", "dominating set with small induced degree", {{"f", "auto"}, {"rate", "1"}, {"c_sparsify", "4"}},
               [](const Graph& g, const AlgoParams& p, const RunOptions& o) {
                 SparsifyParams sp;
                 sp.f = p.at("f") == "auto" ? std::exp2(std::ceil(std::sqrt(log2_at_least_1(g.node_count()))))
                                            : real_param(p, "f");
                 sp.rate = real_param(p, "rate");
                 sp.c_sparsify = real_param(p, "c_sparsify");
                 return run_sparsify(g, sp, o);
               },
               fixed(1, 1)});
  r.push_back({"3rs", "3-ruling set: sparsify, then 2rs-time on G[S]",
               {{"eps", "0.16"}, {"c_iter", "16"}, {"sparsify_rate", "1"}},
               [](const Graph& g, const AlgoParams& p, const RunOptions& o) {
                 ThreeRulingSetParams tp;
                 tp.two = {real_param(p, "eps"), real_param(p, "c_iter")};
                 tp.sparsify_rate = real_param(p, "sparsify_rate");
                 return run_three_ruling_set(g, tp, o);
               },
               fixed(2, 3)});
  r.push_back({"ghaffari-p1", "first phase of the desire-level MIS (partial independent set)", {{"c_ghaffari", "8"}},
               [](const Graph& g, const AlgoParams& p, const RunOptions& o) {
                 GhaffariPhase1 prog;
                 prog.duration = ghaffari_duration(real_param(p, "c_ghaffari"), g.max_degree());
                 auto res = run(g, prog, o);
                 RulingSetOutput out;
                 out.in_set.resize(g.node_count());
                 std::size_t undecided = 0;
                 for (NodeIndex v = 0; v < g.node_count(); ++v) {
                   out.in_set[v] = res.states[v].status == GhaffariPhase1::Status::kJoined;
                   undecided += res.states[v].status == GhaffariPhase1::Status::kUndecided;
                 }
                 out.info.values["undecided"] = static_cast<double>(undecided);
                 out.info.values["duration"] = static_cast<double>(prog.duration);
                 out.stats = std::move(res.stats);
                 return out;
               },
               fixed(2, kUnbounded)});
  r.push_back({"5rs", "5-ruling set: sparsify, desire-level phase on G[S], greedy 4-ruling set",
               {{"c_ghaffari", "8"}, {"sparsify_rate", "1"}},
               [](const Graph& g, const AlgoParams& p, const RunOptions& o) {
                 return run_five_ruling_set(g, {real_param(p, "c_ghaffari"), real_param(p, "sparsify_rate")}, o);
               },
               fixed(2, 5)});
  r.push_back({"2rs-msg", "message-efficient 2-ruling set with category labels",
               {{"sample_factor", "4"}, {"broadcast_check", "false"}},
               [](const Graph& g, const AlgoParams& p, const RunOptions& o) {
                 return run_msg_efficient(g, {real_param(p, "sample_factor"), bool_param(p, "broadcast_check")}, o);
               },
               fixed(2, 2)});
  r.push_back({"2rs-fast", "MIS of a random active set (high-degree nodes sampled)", {},
               [](const Graph& g, const AlgoParams&, const RunOptions& o) { return run_fast_two_ruling_set(g, o); },
               fixed(2, 2)});
  return r;
}

}  // namespace detail

inline const std::vector<AlgorithmSpec>& algorithm_registry() {
  static const std::vector<AlgorithmSpec> registry = detail::make_registry();
  return registry;
}

inline const AlgorithmSpec& find_algorithm(const std::string& name) {
  for (const auto& a : algorithm_registry()) {
    if (a.name == name) return a;
  }
  std::string known;
  for (const auto& a : algorithm_registry()) known += (known.empty() ? "" : ", ") + a.name;
  throw InvalidParameter("unknown algorithm '" + name + "' (known: " + known + ")");
}

/// Defaults overlaid with `given`; unknown keys are rejected.
inline AlgoParams resolve_params(const AlgorithmSpec& spec, const AlgoParams& given) {
  AlgoParams out = spec.defaults;
  for (const auto& [k, v] : given) {
    if (!spec.defaults.count(k)) throw InvalidParameter("algorithm " + spec.name + " has no parameter '" + k + "'");
    out[k] = v;
  }
  return out;
}

}  // namespace congest

#endif  // CONGEST_ALGORITHMS_REGISTRY_HPP
