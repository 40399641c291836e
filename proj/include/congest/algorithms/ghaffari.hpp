#ifndef CONGEST_ALGORITHMS_GHAFFARI_HPP
#define CONGEST_ALGORITHMS_GHAFFARI_HPP

#include <cmath>
#include <vector>

#include "congest/algorithms/common.hpp"

namespace congest {

inline Round ghaffari_duration(double c_ghaffari, std::uint32_t max_degree) {
  return std::max<Round>(1, static_cast<Round>(std::ceil(c_ghaffari * std::log2(std::max<double>(max_degree, 2.0)))));
}

/// First phase of the dynamic-desire-level MIS procedure, for a fixed number
/// of rounds. Every round each undecided node holds a desire level
/// p = 2^-k (k >= 1) and sends one word (k, marked, joined) to its live
/// neighbors. A node marked last round whose neighbors were all unmarked
/// joins; neighbors of joiners become decided. Desire levels halve when the
/// neighbors' sum is at least 2 and otherwise double, capped at 1/2.
struct GhaffariPhase1 {
  Round duration = 1;
  const std::vector<bool>* members = nullptr;
  const PortLists* ports = nullptr;

  enum class Status : std::uint8_t { kUndecided, kJoined, kDominated };

  struct State {
    bool member = true;
    Status status = Status::kUndecided;
    std::uint32_t k = 1;
    bool marked = false;
    std::vector<Port> live;
  };

  static Word encode(std::uint32_t k, bool marked, bool joined) {
    return (Word{k} << 2) | (Word{marked} << 1) | Word{joined};
  }

  State init(NodeContext& ctx) const {
    State s;
    s.member = members == nullptr || (*members)[ctx.index()];
    if (!s.member) return s;
    if (ports != nullptr) {
      s.live = (*ports)[ctx.index()];
    } else {
      s.live.resize(ctx.degree());
      for (Port p = 1; p <= ctx.degree(); ++p) s.live[p - 1] = p;
    }
    return s;
  }

  StepResult step(State& s, NodeContext& ctx, Inbox in, Outbox& out) const {
    if (!s.member) return StepResult::halt();
    const Round r = ctx.round();
    bool neighbor_joined = false;
    bool neighbor_marked = false;
    double desire_sum = 0.0;
    if (r > 1) {
      std::vector<Port> heard;
      heard.reserve(in.size());
      for (const auto& d : in) {
        const Word w = d.message[0];
        if (w & 1) neighbor_joined = true;
        if (w & 2) neighbor_marked = true;
        desire_sum += std::ldexp(1.0, -static_cast<int>(w >> 2));
        heard.push_back(d.port);
      }
      s.live = std::move(heard);
    }
    if (neighbor_joined) {
      s.status = Status::kDominated;
      return StepResult::halt();
    }
    if (r > duration) return StepResult::halt();
    if ((s.marked && !neighbor_marked) || s.live.empty()) {
      s.status = Status::kJoined;
      const Message m{encode(s.k, false, true)};
      for (const Port p : s.live) out.send(p, m);
      return StepResult::halt();
    }
    if (r > 1) {
      if (desire_sum >= 2.0) {
        ++s.k;
      } else if (s.k > 1) {
        --s.k;
      }
    }
    s.marked = r < duration && ctx.rng().bernoulli(std::ldexp(1.0, -static_cast<int>(s.k)));
    const Message m{encode(s.k, s.marked, false)};
    for (const Port p : s.live) out.send(p, m);
    return StepResult::active();
  }

  Status output(const State& s) const { return s.status; }
};

}  // namespace congest

#endif  // CONGEST_ALGORITHMS_GHAFFARI_HPP
