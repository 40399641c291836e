#ifndef CONGEST_ALGORITHMS_FIVE_RULING_SET_HPP
#define CONGEST_ALGORITHMS_FIVE_RULING_SET_HPP

#include <cmath>

#include "congest/algorithms/ghaffari.hpp"
#include "congest/algorithms/greedy.hpp"
#include "congest/algorithms/sparsify.hpp"

namespace congest {

struct FiveRulingSetParams {
  double c_ghaffari = 8.0;
  double sparsify_rate = 1.0;
};

/// f = 2^sqrt(log2 n), at least 2.
inline double five_rs_sparsify_factor(std::size_t n) {
  return std::max(2.0, std::exp2(std::sqrt(std::log2(std::max<double>(static_cast<double>(n), 1.0)))));
}

/// Sparsify, the first phase of the desire-level MIS on G[S], then a greedy
/// 4-ruling set of the still undecided S nodes within G[S].
inline RulingSetOutput run_five_ruling_set(const Graph& g, const FiveRulingSetParams& params,
                                           const RunOptions& opts) {
  const std::size_t n = g.node_count();
  StagedRun staged(g, opts);
  RulingSetOutput out;
  out.in_set.assign(n, false);
  SparsifyParams sp;
  sp.f = five_rs_sparsify_factor(n);
  sp.rate = params.sparsify_rate;
  auto s = run_sparsify_stage(staged, sp);
  out.info.values["f"] = sp.f;
  out.info.values["induced_max_degree"] = s.induced_max_degree;
  if (staged.stopped()) {
    out.stats = staged.stats();
    return out;
  }
  const Knowledge k{n, s.induced_max_degree};

  GhaffariPhase1 phase1;
  phase1.duration = ghaffari_duration(params.c_ghaffari, s.induced_max_degree);
  phase1.members = &s.in_s;
  phase1.ports = &s.s_ports;
  auto pres = staged.run(phase1, k);
  out.info.values["ghaffari_rounds"] = static_cast<double>(phase1.duration);
  if (staged.stopped()) {
    out.stats = staged.stats();
    return out;
  }
  std::vector<bool> residual(n, false);
  std::size_t undecided = 0;
  for (NodeIndex v = 0; v < n; ++v) {
    const auto status = pres.states[v].status;
    if (!s.in_s[v]) continue;
    if (status == GhaffariPhase1::Status::kJoined) out.in_set[v] = true;
    if (status == GhaffariPhase1::Status::kUndecided) {
      residual[v] = true;
      ++undecided;
    }
  }
  out.info.values["undecided_after_phase1"] = static_cast<double>(undecided);

  if (undecided > 0) {
    GreedyRulingSet greedy;
    greedy.beta = 4;
    greedy.participants = &s.in_s;
    greedy.candidates = &residual;
    greedy.ports = &s.s_ports;
    auto gres = staged.run(greedy, k);
    std::uint32_t iters = 0;
    for (NodeIndex v = 0; v < n; ++v) {
      if (gres.states[v].joined) out.in_set[v] = true;
      iters = std::max(iters, gres.states[v].join_iteration);
    }
    out.info.values["greedy_iterations"] = iters;
  } else {
    out.info.values["greedy_iterations"] = 0;
  }
  out.stats = staged.stats();
  return out;
}

}  // namespace congest

#endif  // CONGEST_ALGORITHMS_FIVE_RULING_SET_HPP
