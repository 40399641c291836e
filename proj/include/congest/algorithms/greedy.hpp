#ifndef CONGEST_ALGORITHMS_GREEDY_HPP
#define CONGEST_ALGORITHMS_GREEDY_HPP

#include <stdexcept>
#include <vector>

#include "congest/algorithms/common.hpp"

namespace congest {

/// Greedy beta-ruling set on a candidate set R. Each while-iteration takes
/// beta + 1 rounds: one round in which undecided candidates exchange IDs, a
/// join round for local ID maxima, and beta - 1 further rounds in which the
/// removal wave travels (its last hop lands on the next iteration's first
/// round).
///
/// The executed graph is given by `ports` (all ports when null); nodes
/// outside `participants` take no part.
struct GreedyRulingSet {
  unsigned beta = 1;
  const std::vector<bool>* participants = nullptr;
  const std::vector<bool>* candidates = nullptr;
  const PortLists* ports = nullptr;

  enum : Word { kId = 1, kRemove = 2 };

  struct State {
    bool participant = true;
    bool in_u = false;
    bool joined = false;
    bool dominated = false;  // received the removal wave directly from a joiner
    std::uint32_t join_iteration = 0;
    Round cover_until = 0;
  };

  State init(NodeContext& ctx) const {
    if (beta < 1) throw std::invalid_argument("greedy ruling set needs beta >= 1");
    State s;
    const NodeIndex v = ctx.index();
    s.participant = participants == nullptr || (*participants)[v];
    s.in_u = s.participant && (candidates == nullptr || (*candidates)[v]);
    return s;
  }

  template <class F>
  void for_ports(NodeContext& ctx, F&& f) const {
    if (ports != nullptr) {
      for (const Port p : (*ports)[ctx.index()]) f(p);
    } else {
      for (Port p = 1; p <= ctx.degree(); ++p) f(p);
    }
  }

  StepResult step(State& s, NodeContext& ctx, Inbox in, Outbox& out) const {
    if (!s.participant) return StepResult::halt();
    const Round r = ctx.round();
    const Round length = beta + 1;
    const Round pos = (r - 1) % length;

    Word best_h = 0;
    bool wave = false;
    for (const auto& d : in) {
      if (d.message[0] != kRemove) continue;
      const Word h = d.message[1];
      if (h + 1 == beta) s.dominated = true;
      s.in_u = false;
      if (h > 0 && r + h > s.cover_until) {
        best_h = std::max(best_h, h);
        wave = true;
      }
    }
    bool sent = false;
    if (wave) {
      s.cover_until = r + best_h;
      const Message m{kRemove, best_h - 1};
      for_ports(ctx, [&](Port p) { out.send(p, m); });
      sent = true;
    }

    if (!s.in_u) return StepResult::idle();
    if (pos == 0) {
      const Message m{kId, ctx.id()};
      for_ports(ctx, [&](Port p) { out.send(p, m); });
      return StepResult::active();
    }
    // pos == 1: a local maximum among undecided neighbors joins.
    for (const auto& d : in) {
      if (d.message[0] == kId && d.message[1] > ctx.id()) return StepResult::sleep_until(r + length - 1);
    }
    s.in_u = false;
    s.joined = true;
    s.join_iteration = static_cast<std::uint32_t>((r - 1) / length + 1);
    if (sent) throw std::logic_error("greedy ruling set: removal wave crossed a join round");
    s.cover_until = r + beta;
    const Message m{kRemove, Word{beta} - 1};
    for_ports(ctx, [&](Port p) { out.send(p, m); });
    return StepResult::idle();
  }

  bool output(const State& s) const { return s.joined; }
};

/// Join iteration per node (0 if not joined) and the number of iterations.
struct GreedyTrace {
  std::vector<std::uint32_t> join_iteration;
  std::vector<bool> dominated;
  std::uint32_t iterations = 0;
};

template <class States>
GreedyTrace greedy_trace(const States& states) {
  GreedyTrace t;
  t.join_iteration.resize(states.size());
  t.dominated.resize(states.size());
  for (std::size_t v = 0; v < states.size(); ++v) {
    t.join_iteration[v] = states[v].join_iteration;
    t.dominated[v] = states[v].dominated;
    t.iterations = std::max(t.iterations, states[v].join_iteration);
  }
  return t;
}

inline RulingSetOutput run_greedy(const Graph& g, unsigned beta, const RunOptions& opts,
                                  const std::vector<bool>* candidates = nullptr) {
  GreedyRulingSet program;
  program.beta = beta;
  program.candidates = candidates;
  auto result = run(g, program, opts);
  RulingSetOutput out;
  out.in_set.resize(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) out.in_set[v] = result.states[v].joined;
  const auto trace = greedy_trace(result.states);
  out.info.values["iterations"] = trace.iterations;
  out.info.series["join_iteration"].assign(trace.join_iteration.begin(), trace.join_iteration.end());
  out.stats = std::move(result.stats);
  return out;
}

}  // namespace congest

#endif  // CONGEST_ALGORITHMS_GREEDY_HPP
