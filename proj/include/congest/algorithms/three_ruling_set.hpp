#ifndef CONGEST_ALGORITHMS_THREE_RULING_SET_HPP
#define CONGEST_ALGORITHMS_THREE_RULING_SET_HPP

#include <cmath>

#include "congest/algorithms/sparsify.hpp"
#include "congest/algorithms/two_ruling_set.hpp"

namespace congest {

struct ThreeRulingSetParams {
  /// The 2-ruling set on G[S] needs eps below 1/6.
  TwoRulingSetParams two{0.16, 16.0};
  double sparsify_rate = 1.0;
};

/// f = 2^((log2 n)^(1/3)), at least 2.
inline double three_rs_sparsify_factor(std::size_t n) {
  return std::max(2.0, std::exp2(std::cbrt(std::log2(std::max<double>(static_cast<double>(n), 1.0)))));
}

/// Sparsify, then the 2-ruling set on G[S]: every node is within one hop
/// of S and every S node within two hops of the result.
inline RulingSetOutput run_three_ruling_set(const Graph& g, const ThreeRulingSetParams& params,
                                            const RunOptions& opts) {
  StagedRun staged(g, opts);
  RulingSetOutput out;
  SparsifyParams sp;
  sp.f = three_rs_sparsify_factor(g.node_count());
  sp.rate = params.sparsify_rate;
  auto s = run_sparsify_stage(staged, sp);
  out.info.values["f"] = sp.f;
  out.info.values["induced_max_degree"] = s.induced_max_degree;
  if (staged.stopped()) {
    out.in_set.assign(g.node_count(), false);
  } else {
    out.in_set = two_ruling_set_stages(staged, s.in_s, s.s_ports, params.two, out.info);
  }
  out.stats = staged.stats();
  return out;
}

}  // namespace congest

#endif  // CONGEST_ALGORITHMS_THREE_RULING_SET_HPP
