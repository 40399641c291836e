#ifndef CONGEST_ALGORITHMS_SPARSIFY_HPP
#define CONGEST_ALGORITHMS_SPARSIFY_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "congest/algorithms/common.hpp"

namespace congest {

struct SparsifyParams {
  double f = 2.0;
  /// Join-rate multiplier: stage i joins with prob min(1, rate f log n / Delta_i).
  double rate = 1.0;
  /// Constant of the bound Delta(G[S]) <= c f log n checked by callers.
  double c_sparsify = 4.0;
};

inline std::size_t sparsify_stages(double f, std::uint32_t max_degree) {
  if (max_degree <= 1) return 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log(max_degree) / std::log(f) - 1e-9)));
}

/// Domination sparsification. In stage i (one round) every uncovered node
/// joins S with probability min(1, rate f log n / Delta_i), where
/// Delta_i = Delta / f^(i-1); joiners notify their neighbors, which become
/// covered. A final round adds every node still uncovered, and one more
/// round delivers the last notifications. Members learn their S-ports from
/// the notifications.
struct Sparsify {
  SparsifyParams params;

  enum : Word { kJoin = 1 };

  struct State {
    bool in_s = false;
    bool covered = false;
    std::vector<Port> s_ports;
  };

  State init(NodeContext&) const {
    if (!(params.f >= 2.0)) throw std::invalid_argument("sparsify needs f >= 2");
    if (!(params.rate > 0.0)) throw std::invalid_argument("sparsify rate must be positive");
    return {};
  }

  StepResult step(State& s, NodeContext& ctx, Inbox in, Outbox& out) const {
    const Round r = ctx.round();
    const std::uint32_t delta = ctx.max_degree();
    const std::size_t stages = sparsify_stages(params.f, delta);
    for (const auto& d : in) {
      s.covered = true;
      if (s.in_s) s.s_ports.push_back(d.port);
    }
    if (r > stages + 1) return StepResult::halt();
    if (s.covered || s.in_s) return StepResult::idle();
    bool join = true;
    if (r <= stages) {
      const double lg = log2_at_least_1(static_cast<double>(ctx.n()));
      const double delta_i = static_cast<double>(delta) / std::pow(params.f, static_cast<double>(r - 1));
      join = ctx.rng().bernoulli(params.rate * params.f * lg / std::max(delta_i, 1.0));
    }
    if (!join) return StepResult::active();
    s.in_s = true;
    out.broadcast(Message{kJoin});
    // Same-round joiners' notices arrive next round; a later round cannot
    // bring any, since covered nodes never join.
    return StepResult::sleep_until(r + 1);
  }

  bool output(const State& s) const { return s.in_s; }
};

struct SparsifyResult {
  std::vector<bool> in_s;
  PortLists s_ports;
  std::uint32_t induced_max_degree = 0;
};

inline SparsifyResult run_sparsify_stage(StagedRun& staged, const SparsifyParams& params) {
  const Graph& g = staged.graph();
  const Knowledge k{g.node_count(), g.max_degree()};
  const Sparsify program{params};
  auto result = staged.run(program, k);
  SparsifyResult out;
  out.in_s.resize(g.node_count());
  out.s_ports.resize(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    out.in_s[v] = result.states[v].in_s;
    out.s_ports[v] = std::move(result.states[v].s_ports);
  }
  out.induced_max_degree = max_list_degree(out.s_ports);
  return out;
}

inline RulingSetOutput run_sparsify(const Graph& g, const SparsifyParams& params, const RunOptions& opts) {
  StagedRun staged(g, opts);
  auto s = run_sparsify_stage(staged, params);
  RulingSetOutput out;
  out.in_set = std::move(s.in_s);
  out.stats = staged.stats();
  out.info.values["f"] = params.f;
  out.info.values["induced_max_degree"] = s.induced_max_degree;
  out.info.values["stages"] = static_cast<double>(sparsify_stages(params.f, g.max_degree()));
  return out;
}

}  // namespace congest

#endif  // CONGEST_ALGORITHMS_SPARSIFY_HPP
