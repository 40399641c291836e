#ifndef CONGEST_ALGORITHMS_LUBY_HPP
#define CONGEST_ALGORITHMS_LUBY_HPP

#include <tuple>
#include <vector>

#include "congest/algorithms/common.hpp"

namespace congest {

/// Luby's marking MIS. Phases of three rounds:
///   1. drop ports of departed neighbors; mark with prob 1/(2 d) where d is
///      the current degree; marked nodes send (d, id);
///   2. a marked node without a marked neighbor of larger (d, id) joins and
///      tells its neighbors;
///   3. neighbors of joiners tell their remaining neighbors they leave.
/// Optionally restricted to the members of a subgraph, described by
/// per-node port lists.
struct LubyMis {
  const std::vector<bool>* members = nullptr;
  const PortLists* ports = nullptr;

  enum : Word { kMark = 1, kJoined = 2, kRemoved = 3 };

  struct State {
    std::vector<Port> live;
    bool member = true;
    bool marked = false;
    bool in_mis = false;
  };

  State init(NodeContext& ctx) const {
    State s;
    const NodeIndex v = ctx.index();
    s.member = members == nullptr || (*members)[v];
    if (!s.member) return s;
    if (ports != nullptr) {
      s.live = (*ports)[v];
    } else {
      s.live.resize(ctx.degree());
      for (Port p = 1; p <= ctx.degree(); ++p) s.live[p - 1] = p;
    }
    return s;
  }

  StepResult step(State& s, NodeContext& ctx, Inbox in, Outbox& out) const {
    if (!s.member) return StepResult::halt();
    const Round r = ctx.round();
    const Round pos = (r - 1) % 3;
    auto next_phase = [&] { return StepResult::sleep_until(r + 3 - pos); };

    if (pos == 0) {
      std::vector<Port> gone;
      for (const auto& d : in) {
        if (d.message[0] == kRemoved) gone.push_back(d.port);
      }
      erase_ports(s.live, gone);
      if (s.live.empty()) {
        s.in_mis = true;
        return StepResult::halt();
      }
      s.marked = ctx.rng().bernoulli(1.0 / (2.0 * static_cast<double>(s.live.size())));
      if (!s.marked) return next_phase();
      const Message m{kMark, s.live.size(), ctx.id()};
      for (const Port p : s.live) out.send(p, m);
      return StepResult::active();
    }
    if (pos == 1) {
      if (!s.marked) return next_phase();
      s.marked = false;
      const auto mine = std::make_tuple(Word{s.live.size()}, Word{ctx.id()});
      for (const auto& d : in) {
        if (d.message[0] == kMark && std::make_tuple(d.message[1], d.message[2]) > mine) return next_phase();
      }
      s.in_mis = true;
      const Message m{kJoined};
      for (const Port p : s.live) out.send(p, m);
      return StepResult::halt();
    }
    // pos == 2
    std::vector<Port> joined;
    for (const auto& d : in) {
      if (d.message[0] == kJoined) joined.push_back(d.port);
    }
    if (joined.empty()) return next_phase();
    erase_ports(s.live, joined);
    const Message m{kRemoved};
    for (const Port p : s.live) out.send(p, m);
    return StepResult::halt();
  }

  bool output(const State& s) const { return s.in_mis; }
};

inline RulingSetOutput run_luby(const Graph& g, const RunOptions& opts) {
  const LubyMis program;
  auto result = run(g, program, opts);
  RulingSetOutput out;
  out.in_set.resize(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) out.in_set[v] = program.output(result.states[v]);
  out.stats = std::move(result.stats);
  return out;
}

}  // namespace congest

#endif  // CONGEST_ALGORITHMS_LUBY_HPP
