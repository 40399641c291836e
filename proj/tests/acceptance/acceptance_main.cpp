// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [criterion ...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "congest/algorithms/registry.hpp"
#include "congest/lowerbound.hpp"
#include "congest/verify.hpp"
#include "test_support.hpp"

namespace {

using namespace congest;

double lg(std::size_t n) { return std::log2(static_cast<double>(n)); }

double fraction(std::size_t hit, std::size_t total) {
  return total == 0 ? 1.0 : static_cast<double>(hit) / static_cast<double>(total);
}

double median(std::vector<double> v) { return summarize(std::move(v)).median; }

// Engine invariants, accumulated over every run of the suite.
struct EngineLedger {
  std::size_t runs = 0;
  std::size_t budget_violations = 0;
  std::size_t conservation_failures = 0;
  std::size_t replays = 0;
  std::size_t replay_mismatches = 0;

  void record(const SimStats& s) {
    ++runs;
    budget_violations += s.budget_violations;
    if (s.sent_total() != s.messages_total || s.received_total() != s.messages_total) ++conservation_failures;
  }
  void replay(const SimStats& a, const SimStats& b) {
    ++replays;
    if (!(a == b)) ++replay_mismatches;
  }
};

EngineLedger ledger;

// 64 n falls below the O(Delta log n) round bound on the tight example.
Round round_cap(const Graph& g) {
  const Round n = std::max<Round>(1, g.node_count());
  const auto by_degree = static_cast<Round>(64.0 * std::max<std::uint32_t>(1, g.max_degree()) *
                                            std::ceil(std::max(1.0, lg(g.node_count()))));
  return std::max<Round>(64 * n, by_degree);
}

RunOptions options(const Graph& g, std::uint64_t seed) {
  RunOptions o;
  o.seed = seed;
  o.round_cap = round_cap(g);
  return o;
}

/// Runs a registry algorithm, records the engine invariants, and replays
/// the run when `replay` is set.
RulingSetOutput run_algo(const std::string& name, const Graph& g, std::uint64_t seed, bool replay = false,
                         const AlgoParams& given = {}) {
  const auto& a = find_algorithm(name);
  const auto params = resolve_params(a, given);
  auto out = a.run(g, params, options(g, seed));
  ledger.record(out.stats);
  if (replay) {
    const auto again = a.run(g, params, options(g, seed));
    ledger.record(again.stats);
    ledger.replay(out.stats, again.stats);
  }
  return out;
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}
std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}
std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::uint64_t graph_seed(std::uint64_t family, std::size_t n, std::uint64_t s) {
  return derive_seed(derive_seed(0xacce97 + family, n), s);
}

// ---------------------------------------------------------------------------

Verdict criterion1() {
  Verdict v;
  const auto corpus = fixtures::small_corpus(8, 200, 2024);
  std::size_t checks = 0, failures = 0;
  for (const auto& a : algorithm_registry()) {
    const auto params = resolve_params(a, {});
    const auto [alpha, beta] = a.bounds(params);
    for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
      const Graph& g = corpus[gi];
      for (std::uint64_t s = 0; s < 20; ++s) {
        const auto out = run_algo(a.name, g, derive_seed(gi, s), s == 0);
        ++checks;
        bool ok = out.stats.complete();
        if (ok) {
          const auto r = verify_ruling_set(g, out.in_set, alpha, beta == kUnbounded ? 0 : beta);
          ok = r.alpha_violations.empty() && (beta == kUnbounded || r.beta_violations.empty());
        }
        if (!ok && failures++ < 3) v.note(a.name + " failed on corpus graph " + std::to_string(gi));
      }
    }
  }
  v.require(failures == 0, std::to_string(failures) + " of " + std::to_string(checks) + " runs invalid");

  std::size_t oracle_mismatch = 0;
  for (const Graph& g : corpus) {
    const auto d = fixtures::floyd_warshall(g);
    for (unsigned alpha = 1; alpha <= 3; ++alpha) {
      for (unsigned beta = 1; beta <= 3; ++beta) {
        const auto sets = brute_force_ruling_sets(g, alpha, beta);
        const std::set<std::uint32_t> found(sets.begin(), sets.end());
        for (std::uint32_t mask = 0; mask < (1u << g.node_count()); ++mask) {
          if (fixtures::oracle_ruling_set(d, mask, alpha, beta) != static_cast<bool>(found.count(mask))) ++oracle_mismatch;
        }
      }
    }
  }
  v.require(oracle_mismatch == 0, std::to_string(oracle_mismatch) + " verifier/oracle disagreements");
  v.note(std::to_string(corpus.size()) + " graphs x " + std::to_string(algorithm_registry().size()) +
         " algorithms x 20 seeds, verifier matches distance-matrix oracle on all subsets for alpha,beta in 1..3");
  return v;
}

// Criteria 2-4 share one sweep: gnp(n, 8/n) and gnp(n, 0.5), n = 2^8..2^12, 50 seeds.
struct SweepOutcome {
  Verdict c2, c3, c4;
};

SweepOutcome criteria2to4() {
  SweepOutcome out;
  std::size_t msg_runs = 0, msg_within = 0, node_total = 0, node_within = 0;
  std::size_t luby_invalid = 0, luby_slow = 0, msg_invalid = 0, msg_slow = 0;
  double worst_luby_ratio = 0, worst_round_ratio = 0;
  std::vector<double> dense_medians;
  for (int family = 0; family < 2; ++family) {
    for (std::size_t n = 256; n <= 4096; n *= 2) {
      const double p = family == 0 ? 8.0 / static_cast<double>(n) : 0.5;
      std::vector<double> per_m;
      for (std::uint64_t s = 0; s < 50; ++s) {
        const Graph g = gen_gnp(n, p, graph_seed(family, n, s));
        const bool replay = s == 0;
        const auto luby = run_algo("luby", g, s, replay);
        if (!luby.stats.complete() || !verify_mis(g, luby.in_set)) ++luby_invalid;
        const double luby_bound = 8 * lg(n);
        worst_luby_ratio = std::max(worst_luby_ratio, luby.stats.rounds / luby_bound);
        if (luby.stats.rounds > luby_bound) ++luby_slow;

        const auto msg = run_algo("2rs-msg", g, s, replay);
        if (!msg.stats.complete() || !verify_categories(g, msg.categories).valid()) ++msg_invalid;
        ++msg_runs;
        msg_within += msg.stats.messages_total <= 64 * n * lg(n) * lg(n);
        per_m.push_back(static_cast<double>(msg.stats.messages_total) / static_cast<double>(g.edge_count()));
        const double round_bound = 32.0 * g.max_degree() * lg(n);
        worst_round_ratio = std::max(worst_round_ratio, msg.stats.rounds / round_bound);
        if (msg.stats.rounds > round_bound) ++msg_slow;
        for (NodeIndex v = 0; v < n; ++v) {
          ++node_total;
          node_within += msg.decision_round[v] <= 32.0 * std::max<std::uint32_t>(g.degree(v), 1) * lg(n);
        }
      }
      if (family == 1) dense_medians.push_back(median(per_m));
    }
  }
  out.c2.require(luby_invalid == 0, std::to_string(luby_invalid) + " invalid MIS");
  out.c2.require(luby_slow == 0, std::to_string(luby_slow) + " runs above 8 log2 n rounds");
  out.c2.note(fmt("max rounds / (8 log2 n) = %.3f over 500 runs", worst_luby_ratio));

  const double share = fraction(msg_within, msg_runs);
  out.c3.require(share >= 0.95, fmt("messages <= 64 n log2^2 n in %.3f of runs", share));
  bool decreasing = true;
  for (std::size_t i = 1; i < dense_medians.size(); ++i) decreasing = decreasing && dense_medians[i] < dense_medians[i - 1];
  std::string med;
  for (const double m : dense_medians) med += (med.empty() ? "" : ", ") + fmt("%.4f", m);
  out.c3.require(decreasing, "median messages/m on gnp(n,0.5) not strictly decreasing");
  out.c3.note(fmt("%.3f of runs within the message bound", share) + "; dense median messages/m: " + med);
  out.c3.require(msg_invalid == 0, std::to_string(msg_invalid) + " invalid category labelings");

  const double node_share = fraction(node_within, node_total);
  out.c4.require(msg_slow == 0, std::to_string(msg_slow) + " runs above 32 Delta log2 n rounds");
  out.c4.require(node_share >= 0.99, fmt("per-node decision time within bound for %.4f of nodes", node_share));
  out.c4.note(fmt("max rounds / (32 Delta log2 n) = %.4f; nodes within 32 d log2 n: %.5f", worst_round_ratio, node_share));
  return out;
}

Verdict criterion5() {
  Verdict v;
  std::vector<double> edge_ratio;
  std::string detail;
  for (const std::size_t n : {256u, 1024u, 4096u}) {
    std::vector<double> rounds;
    std::size_t over = 0, invalid = 0;
    std::size_t m = 0;
    for (std::uint64_t s = 0; s < 25; ++s) {
      const Graph g = gen_tight_example(n, 0.5, 0.25, graph_seed(7, n, s));
      m = g.edge_count();
      const auto out = run_algo("2rs-msg", g, s, s == 0);
      if (!out.stats.complete() || !verify_categories(g, out.categories).valid()) ++invalid;
      rounds.push_back(static_cast<double>(out.stats.rounds));
      over += out.stats.messages_total > 64 * n * lg(n) * lg(n);
    }
    const double med = median(rounds);
    const double floor = 0.25 * std::sqrt(static_cast<double>(n));
    v.require(med >= floor, "n=" + std::to_string(n) + fmt(" median rounds %.1f < %.1f", med, floor));
    v.require(over == 0, "n=" + std::to_string(n) + ": " + std::to_string(over) + " runs above 64 n log2^2 n messages");
    v.require(invalid == 0, "n=" + std::to_string(n) + ": " + std::to_string(invalid) + " invalid outputs");
    edge_ratio.push_back(static_cast<double>(m) / std::pow(static_cast<double>(n), 1.75));
    detail += (detail.empty() ? "" : ", ") + ("n=" + std::to_string(n)) + fmt(" median rounds %.0f (floor %.0f)", med, floor) +
              fmt(" m/n^1.75=%.3f", edge_ratio.back());
  }
  const auto [lo, hi] = std::minmax_element(edge_ratio.begin(), edge_ratio.end());
  // Theta(n^1.75): the normalised edge count stays within a factor 2 across sizes.
  v.require(*hi <= 2 * *lo, "m/n^1.75 varies by more than a factor 2");
  v.note(detail);
  return v;
}

Verdict criterion6() {
  Verdict v;
  std::size_t runs = 0, valid = 0, msg_over = 0, round_over = 0;
  for (std::size_t n = 512; n <= 4096; n *= 2) {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const Graph g = gen_gnp(n, 0.05, graph_seed(3, n, s));
      const auto out = run_algo("2rs-fast", g, s, s == 0);
      ++runs;
      valid += out.stats.complete() && verify_ruling_set(g, out.in_set, 2, 2).valid;
      msg_over += out.stats.messages_total > 8 * std::pow(static_cast<double>(n), 1.5) * lg(n);
      round_over += out.stats.rounds > 16 * lg(n);
    }
  }
  const double share = fraction(valid, runs);
  v.require(share >= 0.95, fmt("valid in %.3f of runs", share));
  v.require(msg_over == 0, std::to_string(msg_over) + " runs above 8 n^1.5 log2 n messages");
  v.require(round_over == 0, std::to_string(round_over) + " runs above 16 log2 n rounds");
  v.note(fmt("valid in %.3f of %.0f runs", share, static_cast<double>(runs)));
  return v;
}

// Criteria 7-8 sweep: gnp(n, 2/n) restricted to Delta <= 2^sqrt(log2 n).
struct SparseGraph {
  Graph g;
  std::uint64_t seed;
};

std::vector<SparseGraph> sparse_sweep(std::size_t n, std::size_t count) {
  std::vector<SparseGraph> out;
  for (std::uint64_t s = 0; out.size() < count && s < 50 * count; ++s) {
    Graph g = gen_gnp(n, 2.0 / static_cast<double>(n), graph_seed(11, n, s));
    if (g.max_degree() <= two_rs_luby_threshold(n)) out.push_back({std::move(g), s});
  }
  return out;
}

struct SparseOutcome {
  Verdict c7, c8;
  std::vector<std::pair<double, double>> sparsify_records;  // (induced degree, 4 f log2 n)
};

SparseOutcome criteria7and8() {
  SparseOutcome out;
  std::size_t runs = 0, invalid2 = 0, delegated = 0, w_viol = 0, m_viol = 0, b_ok = 0, m_ok = 0;
  std::size_t invalid3 = 0, invalid5 = 0;
  double max_b = 0, max_m = 0;
  std::size_t stress_runs = 0, stress_b_calls = 0;
  double stress_b_max = 0;
  std::string medians;
  for (std::size_t n = 256; n <= 4096; n *= 2) {
    const auto graphs = sparse_sweep(n, 50);
    out.c7.require(graphs.size() == 50, "only " + std::to_string(graphs.size()) + " graphs with small Delta at n=" +
                                            std::to_string(n));
    const double b_bound = 4 * std::sqrt(lg(n));
    const double m_bound = 4 * lg(n) / std::log2(lg(n));
    std::vector<double> r2, r5;
    for (const auto& [g, s] : graphs) {
      const bool replay = s == graphs.front().seed;
      const auto two = run_algo("2rs-time", g, s, replay);
      ++runs;
      if (!two.stats.complete() || !verify_ruling_set(g, two.in_set, 2, 2).valid) ++invalid2;
      delegated += two.info.values.at("delegated_to_luby") != 0;
      w_viol += static_cast<std::size_t>(two.info.values.count("w_buffer_violations") ? two.info.values.at("w_buffer_violations") : 0);
      m_viol += static_cast<std::size_t>(two.info.values.count("m_adjacency_violations") ? two.info.values.at("m_adjacency_violations") : 0);
      bool b_within = true, m_within = true;
      if (two.info.series.count("greedy_iterations_b")) {
        for (const double it : two.info.series.at("greedy_iterations_b")) {
          b_within = b_within && it <= b_bound;
          max_b = std::max(max_b, it);
        }
      }
      if (two.info.series.count("greedy_iterations_m")) {
        for (const double it : two.info.series.at("greedy_iterations_m")) {
          m_within = m_within && it <= m_bound;
          max_m = std::max(max_m, it);
        }
      }
      b_ok += b_within;
      m_ok += m_within;

      const auto three = run_algo("3rs", g, s, replay);
      if (!three.stats.complete() || !verify_ruling_set(g, three.in_set, 2, 3).valid) ++invalid3;
      out.sparsify_records.emplace_back(three.info.values.at("induced_max_degree"),
                                        4 * three.info.values.at("f") * lg(n));
      const auto five = run_algo("5rs", g, s, replay);
      if (!five.stats.complete() || !verify_ruling_set(g, five.in_set, 2, 5).valid) ++invalid5;
      out.sparsify_records.emplace_back(five.info.values.at("induced_max_degree"), 4 * five.info.values.at("f") * lg(n));
      r2.push_back(static_cast<double>(two.stats.rounds));
      r5.push_back(static_cast<double>(five.stats.rounds));
    }
    // Few marking iterations leave nonempty B_t, exercising the B_t greedy path.
    for (std::size_t i = 0; i < 10 && i < graphs.size(); ++i) {
      const auto& [g, s] = graphs[i];
      const auto stress = run_algo("2rs-time", g, s, false, {{"c_iter", "1"}});
      ++stress_runs;
      if (!stress.stats.complete() || !verify_ruling_set(g, stress.in_set, 2, 2).valid) ++invalid2;
      w_viol += static_cast<std::size_t>(stress.info.values.at("w_buffer_violations"));
      m_viol += static_cast<std::size_t>(stress.info.values.at("m_adjacency_violations"));
      for (const double it : stress.info.series.at("greedy_iterations_b")) {
        stress_b_max = std::max(stress_b_max, it);
        stress_b_calls += it > 0;
      }
    }
    const double m2 = median(r2), m5 = median(r5);
    if (n >= 1024) {
      out.c8.require(m5 < m2, "n=" + std::to_string(n) + fmt(": median 5rs rounds %.1f >= 2rs-time %.1f", m5, m2));
    }
    medians += (medians.empty() ? "" : ", ") + ("n=" + std::to_string(n)) + fmt(" 5rs %.0f vs 2rs-time %.0f", m5, m2);
  }
  out.c7.require(invalid2 == 0, std::to_string(invalid2) + " invalid 2-ruling sets");
  out.c7.require(delegated == 0, std::to_string(delegated) + " runs delegated to Luby");
  out.c7.require(w_viol == 0, std::to_string(w_viol) + " W-buffer violations");
  out.c7.require(m_viol == 0, std::to_string(m_viol) + " adjacent M-set pairs");
  out.c7.require(fraction(b_ok, runs) >= 0.95, fmt("B_t iteration bound held in %.3f of runs", fraction(b_ok, runs)));
  out.c7.require(fraction(m_ok, runs) >= 0.95, fmt("M_it iteration bound held in %.3f of runs", fraction(m_ok, runs)));
  out.c7.note(fmt("%.0f runs; max greedy iterations on B_t %.0f, on M_it %.0f", static_cast<double>(runs), max_b, max_m));
  out.c7.note(fmt("c_iter=1 stress: %.0f runs valid, %.0f nonempty B_t, max B_t iterations %.0f",
                  static_cast<double>(stress_runs), static_cast<double>(stress_b_calls), stress_b_max));
  out.c8.require(invalid3 == 0, std::to_string(invalid3) + " invalid 3-ruling sets");
  out.c8.require(invalid5 == 0, std::to_string(invalid5) + " invalid 5-ruling sets");
  out.c8.note("median rounds " + medians);
  return out;
}

Verdict criterion9(const std::vector<std::pair<double, double>>& composite_records) {
  Verdict v;
  std::size_t runs = 0, dominated = 0, within = 0;
  for (int family = 0; family < 3; ++family) {
    for (std::size_t n = 256; n <= 4096; n *= 2) {
      const double p = family == 0 ? 8.0 / static_cast<double>(n) : (family == 1 ? 0.05 : 0.5);
      for (std::uint64_t s = 0; s < (family == 2 ? 10u : 30u); ++s) {
        const Graph g = gen_gnp(n, p, graph_seed(20 + family, n, s));
        const auto out = run_algo("sparsify", g, s, s == 0);
        ++runs;
        dominated += out.stats.complete() && verify_ruling_set(g, out.in_set, 1, 1).valid;
        within += out.info.values.at("induced_max_degree") <= 4 * out.info.values.at("f") * lg(n);
      }
    }
  }
  std::size_t comp_within = 0;
  for (const auto& [d, bound] : composite_records) comp_within += d <= bound;
  v.require(dominated == runs, std::to_string(runs - dominated) + " runs without domination");
  const double share = fraction(within + comp_within, runs + composite_records.size());
  v.require(share >= 0.95, fmt("induced degree bound held in %.3f of runs", share));
  v.note(fmt("%.0f standalone runs plus %.0f inside 3rs/5rs; bound held in %.4f", static_cast<double>(runs),
             static_cast<double>(composite_records.size()), share));
  return v;
}

Verdict criterion10() {
  Verdict v;
  const BridgeTrialObserver observe = [](const SimStats& s) { ledger.record(s); };
  // (a) Four MIS outcomes of Luby on D(64) with exchangeable component seeds.
  {
    BridgeExperimentConfig c;
    c.n = 64;
    c.algorithm = "luby";
    c.kind = FixtureKind::kDisconnected;
    c.exchangeable_seeding = true;
    c.trials = 2000;
    c.seed = 0x10a;
    const auto r = bridge_experiment(c, observe);
    const double sigma = std::sqrt(0.25 * 0.75 / static_cast<double>(c.trials));
    std::string hist;
    for (std::size_t o = 0; o < 4; ++o) {
      const double share = static_cast<double>(r.histogram[o]) / static_cast<double>(c.trials);
      v.require(std::abs(share - 0.25) <= 3 * sigma, std::string("(a) outcome ") + outcome_name(static_cast<Outcome>(o)) +
                                                         fmt(" share %.4f", share));
      hist += (hist.empty() ? "" : "/") + std::to_string(r.histogram[o]);
    }
    v.require(r.histogram[4] + r.histogram[5] == 0, "(a) invalid or incomplete Luby outputs on D(64)");
    v.note("(a) LL'/LR'/RL'/RR' = " + hist);
  }
  // (b) Crossing rate of the message-efficient algorithm on bridge graphs.
  {
    std::vector<double> rates;
    std::string detail;
    for (const std::size_t n : {64u, 256u, 1024u}) {
      BridgeExperimentConfig c;
      c.n = n;
      c.trials = 200;
      c.seed = 0x10b + n;
      const auto r = bridge_experiment(c, observe);
      const double pred = r.predicted_rate;
      const double sigma = std::sqrt(std::max(pred * (1 - pred), 1e-12) / static_cast<double>(c.trials));
      v.require(r.crossing_rate <= pred + 3 * sigma,
                "(b) n=" + std::to_string(n) + fmt(" crossing rate %.4f above band %.4f", r.crossing_rate, pred + 3 * sigma));
      rates.push_back(r.crossing_rate);
      detail += (detail.empty() ? "" : ", ") + ("n=" + std::to_string(n)) +
                fmt(" rate %.4f predicted %.4f", r.crossing_rate, pred);
    }
    for (std::size_t i = 1; i < rates.size(); ++i) {
      v.require(rates[i] < rates[i - 1] || (rates[i] == 0 && rates[i - 1] == 0), "(b) crossing rate does not decrease");
    }
    v.note("(b) " + detail);
  }
  // (c) Trials that never use a bridge are indistinguishable from D.
  {
    BridgeExperimentConfig c;
    c.n = 256;
    c.trials = 200;
    c.seed = 0x10c;
    const auto b = bridge_experiment(c, observe);
    c.kind = FixtureKind::kDisconnected;
    const auto d = bridge_experiment(c, observe);
    std::array<std::size_t, kOutcomeCount> hb{}, hd{};
    std::size_t mismatched = 0, d_crossed = 0;
    for (std::size_t t = 0; t < c.trials; ++t) {
      d_crossed += d.trials[t].crossed;
      if (b.trials[t].crossed) continue;
      ++hb[static_cast<std::size_t>(b.trials[t].outcome)];
      ++hd[static_cast<std::size_t>(d.trials[t].outcome)];
      mismatched += b.trials[t].outcome != d.trials[t].outcome || b.trials[t].messages_total != d.trials[t].messages_total;
    }
    v.require(hb == hd, "(c) histograms of non-crossing B trials and paired D trials differ");
    v.require(mismatched == 0, "(c) " + std::to_string(mismatched) + " paired trials differ");
    v.require(d_crossed == 0, "(c) messages tagged as bridge on D");
    // Budget mu = 0: nothing is delivered on either fixture.
    c.mu = 0;
    const auto d0 = bridge_experiment(c, observe);
    c.kind = FixtureKind::kBridge;
    const auto b0 = bridge_experiment(c, observe);
    v.require(b0.crossing_rate == 0 && b0.histogram == d0.histogram, "(c) mu = 0 histograms differ or a bridge was used");
    std::size_t uncrossed = 0;
    for (const auto x : hb) uncrossed += x;
    v.note("(c) " + std::to_string(uncrossed) + " non-crossing trials identical to D");
  }
  // Determinism of the experiment as a whole.
  {
    BridgeExperimentConfig c;
    c.n = 64;
    c.trials = 20;
    const auto a = bridge_experiment(c, observe);
    const auto b = bridge_experiment(c, observe);
    for (std::size_t t = 0; t < c.trials; ++t) {
      ++ledger.replays;
      const auto& x = a.trials[t];
      const auto& y = b.trials[t];
      if (x.rounds != y.rounds || x.messages_total != y.messages_total || x.outcome != y.outcome) ++ledger.replay_mismatches;
    }
  }
  return v;
}

Verdict criterion11() {
  Verdict v;
  // A final replay set across every algorithm on mid-size graphs.
  for (const auto& a : algorithm_registry()) {
    for (std::uint64_t s = 0; s < 3; ++s) {
      const Graph g = gen_gnp(512, 0.02, graph_seed(40, 512, s));
      run_algo(a.name, g, s, true);
    }
  }
  v.require(ledger.budget_violations == 0, std::to_string(ledger.budget_violations) + " word-budget violations");
  v.require(ledger.conservation_failures == 0, std::to_string(ledger.conservation_failures) + " runs break conservation");
  v.require(ledger.replay_mismatches == 0, std::to_string(ledger.replay_mismatches) + " replays differ");
  v.note(std::to_string(ledger.runs) + " runs checked, " + std::to_string(ledger.replays) + " replayed");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  const auto want = [&](std::initializer_list<int> ids) {
    if (wanted.empty()) return true;
    for (const int id : ids) {
      if (wanted.count(id)) return true;
    }
    return false;
  };
  bool all = true;
  const auto report = [&](int id, const Verdict& v, double seconds) {
    std::printf("%s criterion %d: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", id, v.detail.c_str(), seconds);
    std::fflush(stdout);
    all = all && v.pass;
  };
  using clock = std::chrono::steady_clock;
  const auto timed = [](auto&& f) {
    const auto t0 = clock::now();
    auto r = f();
    return std::pair{std::move(r), std::chrono::duration<double>(clock::now() - t0).count()};
  };
  try {
    if (want({1})) {
      auto [v, t] = timed(criterion1);
      report(1, v, t);
    }
    if (want({2, 3, 4})) {
      auto [r, t] = timed(criteria2to4);
      report(2, r.c2, t);
      report(3, r.c3, 0);
      report(4, r.c4, 0);
    }
    if (want({5})) {
      auto [v, t] = timed(criterion5);
      report(5, v, t);
    }
    if (want({6})) {
      auto [v, t] = timed(criterion6);
      report(6, v, t);
    }
    std::vector<std::pair<double, double>> composite;
    if (want({7, 8, 9})) {
      auto [r, t] = timed(criteria7and8);
      if (want({7})) report(7, r.c7, t);
      if (want({8})) report(8, r.c8, 0);
      composite = std::move(r.sparsify_records);
    }
    if (want({9})) {
      auto [v, t] = timed([&] { return criterion9(composite); });
      report(9, v, t);
    }
    if (want({10})) {
      auto [v, t] = timed(criterion10);
      report(10, v, t);
    }
    if (want({11})) {
      auto [v, t] = timed(criterion11);
      report(11, v, t);
    }
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 1;
  }
  return all ? 0 : 1;
}
