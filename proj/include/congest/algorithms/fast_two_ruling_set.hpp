#ifndef CONGEST_ALGORITHMS_FAST_TWO_RULING_SET_HPP
#define CONGEST_ALGORITHMS_FAST_TWO_RULING_SET_HPP

#include <cmath>
#include <vector>

#include "congest/algorithms/luby.hpp"

namespace congest {

/// Activation step: nodes of degree below sqrt(n) are active; the others
/// become active with probability 2 log2 n / sqrt(n). Active nodes tell
/// their neighbors, so each learns its ports into the active set.
struct FastActivation {
  enum : Word { kActive = 1 };

  struct State {
    bool active = false;
    std::vector<Port> active_ports;
  };

  State init(NodeContext&) const { return {}; }

  StepResult step(State& s, NodeContext& ctx, Inbox in, Outbox& out) const {
    if (ctx.round() == 1) {
      const double n = static_cast<double>(ctx.n());
      const double root = std::sqrt(n);
      s.active = ctx.degree() < root || ctx.rng().bernoulli(2.0 * log2_at_least_1(n) / root);
      if (!s.active) return StepResult::halt();
      out.broadcast(Message{kActive});
      return StepResult::active();
    }
    for (const auto& d : in) s.active_ports.push_back(d.port);
    return StepResult::halt();
  }

  bool output(const State& s) const { return s.active; }
};

/// MIS of the active set, computed by Luby's algorithm within G[S].
inline RulingSetOutput run_fast_two_ruling_set(const Graph& g, const RunOptions& opts) {
  const std::size_t n = g.node_count();
  StagedRun staged(g, opts);
  const Knowledge k{n, std::nullopt};
  auto act = staged.run(FastActivation{}, k);
  RulingSetOutput out;
  out.in_set.assign(n, false);
  std::vector<bool> active(n);
  PortLists ports(n);
  std::size_t count = 0;
  for (NodeIndex v = 0; v < n; ++v) {
    active[v] = act.states[v].active;
    count += active[v];
    ports[v] = std::move(act.states[v].active_ports);
  }
  out.info.values["active"] = static_cast<double>(count);
  if (!staged.stopped()) {
    LubyMis luby;
    luby.members = &active;
    luby.ports = &ports;
    auto res = staged.run(luby, k);
    for (NodeIndex v = 0; v < n; ++v) out.in_set[v] = res.states[v].in_mis;
  }
  out.stats = staged.stats();
  return out;
}

}  // namespace congest

#endif  // CONGEST_ALGORITHMS_FAST_TWO_RULING_SET_HPP
