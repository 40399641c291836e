#ifndef CONGEST_ALGORITHMS_MSG_EFFICIENT_HPP
#define CONGEST_ALGORITHMS_MSG_EFFICIENT_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "congest/algorithms/common.hpp"

namespace congest {

struct MsgEfficientParams {
  /// Checking-sample size is ceil(sample_factor * log2 d).
  double sample_factor = 4.0;
  /// Also become category-3 when the broadcast replies reveal a category-2
  /// neighbor (the five-round variant). Off by default.
  bool broadcast_check = false;
};

inline std::size_t checking_sample_size(double factor, std::uint32_t degree) {
  if (degree <= 1) return 0;
  return static_cast<std::size_t>(std::ceil(factor * std::log2(static_cast<double>(degree)) - 1e-9));
}

/// Message-efficient 2-ruling set; needs no global knowledge. Phases of four
/// rounds (five with broadcast_check):
///   0. apply category-1 announcements; undecided nodes mark with prob 1/(2d)
///      and marked ones query a random sample of neighbors;
///   1. queried nodes reply with their category;
///   2. a marked node that saw a category-2 reply becomes category-3,
///      otherwise it broadcasts (marked, d);
///   3. a broadcaster that heard no marked neighbor of equal or higher degree
///      becomes category-1 and announces it.
/// With broadcast_check, receivers of a broadcast also reply with their
/// category and a fifth round turns a surviving broadcaster that saw a
/// category-2 reply into category-3 instead.
/// Decided nodes only answer queries and apply announcements. An undecided
/// node skips the phases in which it does not mark (a geometric draw) and is
/// woken by incoming messages.
struct MsgEfficient2rs {
  MsgEfficientParams params;

  enum : Word { kQuery = 1, kReply = 2, kMarked = 3, kAnnounce = 4, kStatus = 5 };

  struct State {
    Category label = Category::kUndecided;
    Round decided_at = 0;
    bool marked = false;
    bool broadcasting = false;
    Round next_mark_phase = 0;  // 0-based phase index of the next marking
    std::uint64_t sent_after_decision = 0;
  };

  Round phase_length() const { return params.broadcast_check ? 5 : 4; }

  State init(NodeContext&) const { return {}; }

  void decide(State& s, Category c, Round r) const {
    s.label = c;
    s.decided_at = r;
    s.marked = false;
    s.broadcasting = false;
  }

  // Initiated sends (queries, broadcasts, announcements) go through here so
  // that the post-decision audit sees them.
  void initiate(State& s, Outbox& out, Port p, const Message& m, Round r) const {
    if (s.label != Category::kUndecided && s.decided_at < r) ++s.sent_after_decision;
    out.send(p, m);
  }

  // Phases without marking before the next marking phase.
  static std::uint64_t draw_skip(NodeContext& ctx) {
    return std::min<std::uint64_t>(ctx.rng().geometric(1.0 / (2.0 * ctx.degree())), std::uint64_t{1} << 40);
  }

  StepResult schedule(State& s, NodeContext& ctx, Round r) const {
    if (s.label != Category::kUndecided) return StepResult::idle();
    const Round len = phase_length();
    const Round phase = (r - 1) / len;
    if (s.marked) return StepResult::active();
    if (s.next_mark_phase <= phase) {
      // Draw the next marking phase after this one.
      s.next_mark_phase = phase + 1 + draw_skip(ctx);
    }
    return StepResult::sleep_until(s.next_mark_phase * len + 1);
  }

  StepResult step(State& s, NodeContext& ctx, Inbox in, Outbox& out) const {
    const Round r = ctx.round();
    const Round len = phase_length();
    const Round pos = (r - 1) % len;
    const Round phase = (r - 1) / len;
    const std::uint32_t d = ctx.degree();

    // Replies and status answers are owed by every node, decided or not.
    for (const auto& m : in) {
      if (m.message[0] == kQuery) {
        out.send(m.port, Message{kReply, static_cast<Word>(s.label)});
      } else if (m.message[0] == kMarked && params.broadcast_check) {
        out.send(m.port, Message{kStatus, static_cast<Word>(s.label)});
      }
    }
    if (pos == 0) {
      for (const auto& m : in) {
        if (m.message[0] != kAnnounce) continue;
        if (s.label == Category::kUndecided || s.label == Category::kCat3) decide(s, Category::kCat2, r);
      }
    }
    if (s.label != Category::kUndecided) return StepResult::idle();

    if (r == 1) {
      if (d == 0) {
        decide(s, Category::kCat1, r);
        return StepResult::halt();
      }
      s.next_mark_phase = draw_skip(ctx);
    }

    if (pos == 0 && phase == s.next_mark_phase) {
      s.marked = true;
      const std::size_t k = checking_sample_size(params.sample_factor, d);
      std::vector<Port> sample(k);
      for (auto& p : sample) p = static_cast<Port>(ctx.rng().between(1, d));
      std::sort(sample.begin(), sample.end());
      sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
      for (const Port p : sample) initiate(s, out, p, Message{kQuery}, r);
      return StepResult::active();
    }
    if (!s.marked) return schedule(s, ctx, r);

    if (pos == 2) {
      for (const auto& m : in) {
        if (m.message[0] == kReply && m.message[1] == static_cast<Word>(Category::kCat2)) {
          decide(s, Category::kCat3, r);
          return StepResult::idle();
        }
      }
      s.broadcasting = true;
      for (Port p = 1; p <= d; ++p) initiate(s, out, p, Message{kMarked, d}, r);
      return StepResult::active();
    }
    if (pos == 3 && s.broadcasting) {
      for (const auto& m : in) {
        if (m.message[0] == kMarked && m.message[1] >= d) {
          s.marked = false;
          s.broadcasting = false;
          return schedule(s, ctx, r);
        }
      }
      if (params.broadcast_check) return StepResult::active();
      decide(s, Category::kCat1, r);
      for (Port p = 1; p <= d; ++p) out.send(p, Message{kAnnounce});
      return StepResult::idle();
    }
    if (pos == 4 && s.broadcasting) {
      for (const auto& m : in) {
        if (m.message[0] == kStatus && m.message[1] == static_cast<Word>(Category::kCat2)) {
          decide(s, Category::kCat3, r);
          return StepResult::idle();
        }
      }
      decide(s, Category::kCat1, r);
      for (Port p = 1; p <= d; ++p) out.send(p, Message{kAnnounce});
      return StepResult::idle();
    }
    if (pos == 1) return StepResult::active();
    return schedule(s, ctx, r);
  }

  Category output(const State& s) const { return s.label; }
};

inline RulingSetOutput run_msg_efficient(const Graph& g, const MsgEfficientParams& params, const RunOptions& opts) {
  const MsgEfficient2rs program{params};
  auto result = run(g, program, opts);
  RulingSetOutput out;
  const std::size_t n = g.node_count();
  out.in_set.resize(n);
  out.categories.resize(n);
  out.decision_round.resize(n);
  std::uint64_t audit = 0;
  for (NodeIndex v = 0; v < n; ++v) {
    const auto& s = result.states[v];
    out.categories[v] = s.label;
    out.in_set[v] = s.label == Category::kCat1;
    out.decision_round[v] = s.decided_at;
    audit += s.sent_after_decision;
  }
  out.info.values["sent_after_decision"] = static_cast<double>(audit);
  out.stats = std::move(result.stats);
  return out;
}

}  // namespace congest

#endif  // CONGEST_ALGORITHMS_MSG_EFFICIENT_HPP
