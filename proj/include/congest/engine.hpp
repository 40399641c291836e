#ifndef CONGEST_ENGINE_HPP
#define CONGEST_ENGINE_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <concepts>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "congest/graph.hpp"
#include "congest/rng.hpp"

namespace congest {

using Word = std::uint64_t;
using Round = std::uint64_t;

inline constexpr std::size_t kMessageCapacity = 6;
inline constexpr Round kNever = std::numeric_limits<Round>::max();

/// One CONGEST message: a short sequence of words.
class Message {
 public:
  Message() = default;
  Message(std::initializer_list<Word> words) {
    for (const Word w : words) push(w);
  }

  void push(Word w) {
    if (size_ == kMessageCapacity) throw std::length_error("message exceeds word capacity");
    words_[size_++] = w;
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  Word operator[](std::size_t i) const { return words_[i]; }
  std::span<const Word> words() const noexcept { return {words_.data(), size_}; }

  friend bool operator==(const Message& a, const Message& b) {
    return std::equal(a.words().begin(), a.words().end(), b.words().begin(), b.words().end());
  }

 private:
  std::array<Word, kMessageCapacity> words_{};
  std::uint8_t size_ = 0;
};

/// CONGEST bandwidth: at most `max_words` words of `word_bits` bits each.
struct WordBudget {
  unsigned word_bits = 64;
  unsigned max_words = 4;

  /// One word holds any of: a node ID, a degree, a node count. With IDs drawn
  /// from [1, n^4] this is 4*ceil(log2 n) bits, still O(log n). The floor
  /// leaves room for message-type codes on tiny graphs.
  static constexpr unsigned kMinWordBits = 8;

  static WordBudget for_graph(const Graph& g, unsigned max_words = 4) {
    const std::uint64_t largest = std::max<std::uint64_t>({g.node_count(), g.max_id(), g.max_degree(), 2});
    return WordBudget{std::max(kMinWordBits, static_cast<unsigned>(std::bit_width(largest))), max_words};
  }

  bool fits(const Message& m) const noexcept {
    if (m.size() > max_words) return false;
    if (word_bits >= 64) return true;
    const Word limit = Word{1} << word_bits;
    return std::all_of(m.words().begin(), m.words().end(), [&](Word w) { return w < limit; });
  }
};

struct Delivery {
  Port port;
  Message message;
};

/// Messages delivered this round, ascending by port.
using Inbox = std::span<const Delivery>;

/// What a node asks of the scheduler after a step.
class StepResult {
 public:
  enum class Kind : std::uint8_t { kActive, kSleep, kHalt };

  /// Step again next round.
  static StepResult active() noexcept { return {Kind::kActive, 0}; }
  /// Not stepped before `round` unless a message arrives earlier.
  static StepResult sleep_until(Round round) noexcept { return {Kind::kSleep, round}; }
  /// Stepped only when a message arrives (a decided node that still answers).
  static StepResult idle() noexcept { return {Kind::kSleep, kNever}; }
  /// Never stepped again; later messages to it are dropped.
  static StepResult halt() noexcept { return {Kind::kHalt, 0}; }

  Kind kind() const noexcept { return kind_; }
  Round wake_round() const noexcept { return wake_; }

 private:
  StepResult(Kind k, Round w) : kind_(k), wake_(w) {}
  Kind kind_;
  Round wake_;
};

/// Global knowledge granted to every node of a run.
struct Knowledge {
  std::optional<std::size_t> n;
  std::optional<std::uint32_t> max_degree;
};

class NodeContext {
 public:
  NodeIndex index() const noexcept { return index_; }
  NodeId id() const noexcept { return id_; }
  std::uint32_t degree() const noexcept { return degree_; }
  Round round() const noexcept { return round_; }
  Rng& rng() noexcept { return rng_; }

  bool knows_n() const noexcept { return knowledge_->n.has_value(); }
  bool knows_max_degree() const noexcept { return knowledge_->max_degree.has_value(); }
  std::size_t n() const {
    if (!knowledge_->n) throw std::logic_error("program reads n without knows_n");
    return *knowledge_->n;
  }
  std::uint32_t max_degree() const {
    if (!knowledge_->max_degree) throw std::logic_error("program reads max degree without knows_delta");
    return *knowledge_->max_degree;
  }

 private:
  template <class P>
  friend class Simulation;

  NodeIndex index_ = 0;
  NodeId id_ = 0;
  std::uint32_t degree_ = 0;
  Round round_ = 0;
  Rng rng_;
  const Knowledge* knowledge_ = nullptr;
};

class BudgetViolation : public std::runtime_error {
 public:
  BudgetViolation(NodeIndex node, Round round, Port port, std::size_t words)
      : std::runtime_error("oversize message from node " + std::to_string(node) + " on port " +
                           std::to_string(port) + " in round " + std::to_string(round) + " (" +
                           std::to_string(words) + " words)"),
        node_(node),
        round_(round) {}
  NodeIndex node() const noexcept { return node_; }
  Round round() const noexcept { return round_; }

 private:
  NodeIndex node_;
  Round round_;
};

/// Rounds, messages and bandwidth accounting of one run (or a sequence of
/// stages, see StagedRun).
struct SimStats {
  Round rounds = 0;
  std::uint64_t messages_total = 0;
  std::vector<std::uint64_t> sent_per_node;
  std::vector<std::uint64_t> received_per_node;
  /// Sends over edges carrying each tag (only sends within the message limit).
  std::map<std::string, std::uint64_t> messages_by_tag;
  /// Messages sent before the first send over an edge with that tag.
  std::map<std::string, std::uint64_t> messages_before_first_tag;
  std::uint64_t budget_violations = 0;
  bool halted_all = false;
  bool timed_out = false;
  bool truncated = false;

  bool complete() const noexcept { return halted_all && !timed_out && !truncated; }

  std::uint64_t sent_total() const {
    std::uint64_t s = 0;
    for (auto x : sent_per_node) s += x;
    return s;
  }
  std::uint64_t received_total() const {
    std::uint64_t s = 0;
    for (auto x : received_per_node) s += x;
    return s;
  }

  /// Appends a later stage executed on the same graph.
  void absorb(const SimStats& stage) {
    if (sent_per_node.empty()) {
      sent_per_node.assign(stage.sent_per_node.size(), 0);
      received_per_node.assign(stage.received_per_node.size(), 0);
    }
    for (std::size_t v = 0; v < stage.sent_per_node.size(); ++v) {
      sent_per_node[v] += stage.sent_per_node[v];
      received_per_node[v] += stage.received_per_node[v];
    }
    for (const auto& [tag, first] : stage.messages_before_first_tag) {
      messages_before_first_tag.try_emplace(tag, messages_total + first);
    }
    for (const auto& [tag, count] : stage.messages_by_tag) messages_by_tag[tag] += count;
    rounds += stage.rounds;
    messages_total += stage.messages_total;
    budget_violations += stage.budget_violations;
    halted_all = stage.halted_all;
    timed_out = timed_out || stage.timed_out;
    truncated = truncated || stage.truncated;
  }

  friend bool operator==(const SimStats&, const SimStats&) = default;
};

inline Round default_round_cap(std::size_t n) { return 64 * std::max<Round>(n, 1); }

struct RunOptions {
  std::uint64_t seed = 0;
  std::optional<WordBudget> budget;  // default: WordBudget::for_graph
  std::optional<Round> round_cap;    // default: 64 n
  /// Count oversize sends instead of aborting on the first one.
  bool audit = false;
  /// Stop at the end of the round in which messages_total exceeds this.
  std::optional<std::uint64_t> message_limit;
  Knowledge knowledge;
  /// Per-node randomness keys; empty means the node index. A node's stream is
  /// Rng(derive_seed(seed, key)).
  std::vector<std::uint64_t> stream_keys;
};

namespace detail {

struct Pending {
  NodeIndex to;
  Port port;  // port at the receiver
  Message message;
};

struct RoundSink {
  const Graph* graph;
  const WordBudget* budget;
  SimStats* stats;
  std::vector<Pending>* pending;
  std::vector<Round>* port_stamp;
  std::optional<std::uint64_t> message_limit;
  bool audit;
  bool over_limit = false;
  Round round = 0;
};

}  // namespace detail

/// Send side of a node's step.
class Outbox {
 public:
  std::uint32_t degree() const noexcept { return sink_->graph->degree(node_); }

  /// Sends `m` on port `p`. At most one message per port per round.
  void send(Port p, const Message& m) {
    const Graph& g = *sink_->graph;
    if (p < 1 || p > g.degree(node_)) {
      throw std::out_of_range("node " + std::to_string(node_) + " has no port " + std::to_string(p));
    }
    const std::size_t slot = g.slot(node_, p);
    auto& stamp = (*sink_->port_stamp)[slot];
    if (stamp == sink_->round) {
      throw std::logic_error("node " + std::to_string(node_) + " sent twice on port " + std::to_string(p) +
                             " in round " + std::to_string(sink_->round));
    }
    stamp = sink_->round;
    if (!sink_->budget->fits(m)) {
      ++sink_->stats->budget_violations;
      if (!sink_->audit) throw BudgetViolation(node_, sink_->round, p, m.size());
      return;
    }
    SimStats& st = *sink_->stats;
    const NodeIndex to = g.neighbor(node_, p);
    const bool within_limit = !sink_->message_limit || st.messages_total < *sink_->message_limit;
    ++st.messages_total;
    ++st.sent_per_node[node_];
    ++st.received_per_node[to];
    if (!within_limit) {
      sink_->over_limit = true;
      return;
    }
    if (const TagId t = g.tag(node_, p); t != kNoTag) {
      const std::string& name = g.tag_name(t);
      ++st.messages_by_tag[name];
      st.messages_before_first_tag.try_emplace(name, st.messages_total - 1);
    }
    sink_->pending->push_back({to, g.reverse_port(node_, p), m});
  }

  void broadcast(const Message& m) {
    for (Port p = 1; p <= degree(); ++p) send(p, m);
  }

 private:
  template <class P>
  friend class Simulation;
  Outbox(detail::RoundSink* sink, NodeIndex node) : sink_(sink), node_(node) {}

  detail::RoundSink* sink_;
  NodeIndex node_;
};

template <class P>
concept NodeProgram = requires(const P& p, typename P::State& s, const typename P::State& cs, NodeContext& ctx,
                               Inbox in, Outbox& out) {
  { p.init(ctx) } -> std::convertible_to<typename P::State>;
  { p.step(s, ctx, in, out) } -> std::same_as<StepResult>;
  p.output(cs);
};

template <class P>
struct RunResult {
  using State = typename P::State;
  std::vector<State> states;
  SimStats stats;

  auto output(NodeIndex v, const P& program) const { return program.output(states[v]); }
};

/// Synchronous round executor. Nodes are stepped in index order; a message
/// sent in round r is visible to its receiver in round r + 1 only.
template <class P>
class Simulation {
 public:
  using State = typename P::State;

  Simulation(const Graph& g, const P& program, const RunOptions& opts)
      : graph_(g), program_(program), opts_(opts) {}

  RunResult<P> run() {
    const std::size_t n = graph_.node_count();
    const WordBudget budget = opts_.budget.value_or(WordBudget::for_graph(graph_));
    const Round cap = opts_.round_cap.value_or(default_round_cap(n));
    if (cap < 1) throw std::invalid_argument("round_cap must be >= 1");
    if (!opts_.stream_keys.empty() && opts_.stream_keys.size() != n) {
      throw std::invalid_argument("stream_keys must have one entry per node");
    }

    RunResult<P> result;
    SimStats& stats = result.stats;
    stats.sent_per_node.assign(n, 0);
    stats.received_per_node.assign(n, 0);

    contexts_.resize(n);
    for (NodeIndex v = 0; v < n; ++v) {
      NodeContext& c = contexts_[v];
      c.index_ = v;
      c.id_ = graph_.id(v);
      c.degree_ = graph_.degree(v);
      c.knowledge_ = &opts_.knowledge;
      c.rng_.reseed(derive_seed(opts_.seed, opts_.stream_keys.empty() ? v : opts_.stream_keys[v]));
    }
    result.states.reserve(n);
    for (NodeIndex v = 0; v < n; ++v) result.states.push_back(program_.init(contexts_[v]));

    enum : std::uint8_t { kActive, kSleeping, kHalted };
    std::vector<std::uint8_t> status(n, kActive);
    std::vector<std::uint32_t> generation(n, 0);
    using Timer = std::tuple<Round, NodeIndex, std::uint32_t>;
    std::priority_queue<Timer, std::vector<Timer>, std::greater<>> timers;

    std::vector<NodeIndex> active(n);
    for (NodeIndex v = 0; v < n; ++v) active[v] = v;
    std::vector<NodeIndex> next_active;
    std::vector<detail::Pending> pending;
    std::vector<Round> port_stamp(graph_.port_count(), 0);
    std::vector<Delivery> mail;
    std::vector<std::size_t> mail_begin(n, 0);
    std::vector<std::uint32_t> mail_count(n, 0);
    std::vector<NodeIndex> receivers;
    std::vector<NodeIndex> schedule;
    std::vector<Round> scheduled_at(n, 0);

    detail::RoundSink sink{&graph_, &budget, &stats, &pending, &port_stamp, opts_.message_limit, opts_.audit};

    auto timer_valid = [&](const Timer& t) {
      const auto& [when, v, gen] = t;
      return status[v] == kSleeping && generation[v] == gen;
    };

    Round round = 0;
    bool natural_end = false;
    while (true) {
      if (active.empty() && pending.empty()) {
        while (!timers.empty() && !timer_valid(timers.top())) timers.pop();
        if (timers.empty()) {
          natural_end = true;
          break;
        }
        const Round wake = std::get<0>(timers.top());
        if (wake > cap) {
          round = cap;
          stats.timed_out = true;
          break;
        }
        round = wake - 1;  // nothing happens in the skipped rounds
      }
      if (round >= cap) {
        stats.timed_out = true;
        break;
      }
      ++round;
      sink.round = round;

      // Bucket last round's sends by receiver, each bucket sorted by port.
      receivers.clear();
      for (const auto& pm : pending) {
        if (mail_count[pm.to]++ == 0) receivers.push_back(pm.to);
      }
      std::sort(receivers.begin(), receivers.end());
      mail.resize(pending.size());
      {
        std::size_t offset = 0;
        for (const NodeIndex v : receivers) {
          mail_begin[v] = offset;
          offset += mail_count[v];
          mail_count[v] = 0;
        }
        for (auto& pm : pending) mail[mail_begin[pm.to] + mail_count[pm.to]++] = {pm.port, pm.message};
        for (const NodeIndex v : receivers) {
          std::sort(mail.begin() + static_cast<std::ptrdiff_t>(mail_begin[v]),
                    mail.begin() + static_cast<std::ptrdiff_t>(mail_begin[v] + mail_count[v]),
                    [](const Delivery& a, const Delivery& b) { return a.port < b.port; });
        }
      }
      pending.clear();

      schedule.clear();
      auto enqueue = [&](NodeIndex v) {
        if (scheduled_at[v] != round && status[v] != kHalted) {
          scheduled_at[v] = round;
          schedule.push_back(v);
        }
      };
      for (const NodeIndex v : active) enqueue(v);
      for (const NodeIndex v : receivers) enqueue(v);
      while (!timers.empty() && std::get<0>(timers.top()) <= round) {
        if (timer_valid(timers.top())) enqueue(std::get<1>(timers.top()));
        timers.pop();
      }
      std::sort(schedule.begin(), schedule.end());

      next_active.clear();
      for (const NodeIndex v : schedule) {
        NodeContext& ctx = contexts_[v];
        ctx.round_ = round;
        const std::uint32_t count = mail_count[v];
        const Inbox inbox = count ? Inbox(mail.data() + mail_begin[v], count) : Inbox{};
        Outbox out(&sink, v);
        const StepResult r = program_.step(result.states[v], ctx, inbox, out);
        switch (r.kind()) {
          case StepResult::Kind::kActive:
            status[v] = kActive;
            next_active.push_back(v);
            break;
          case StepResult::Kind::kSleep:
            if (r.wake_round() <= round + 1) {
              status[v] = kActive;
              next_active.push_back(v);
            } else {
              status[v] = kSleeping;
              ++generation[v];
              if (r.wake_round() != kNever) timers.emplace(r.wake_round(), v, generation[v]);
            }
            break;
          case StepResult::Kind::kHalt:
            status[v] = kHalted;
            break;
        }
      }
      for (const NodeIndex v : receivers) mail_count[v] = 0;
      active.swap(next_active);

      if (sink.over_limit) {
        stats.truncated = true;
        break;
      }
    }
    stats.rounds = round;
    stats.halted_all = natural_end;
    return result;
  }

 private:
  const Graph& graph_;
  const P& program_;
  const RunOptions& opts_;
  std::vector<NodeContext> contexts_;
};

/// Executes `program` on `g` until every node halts or sleeps with no
/// message in flight, or until the round cap.
template <class P>
  requires NodeProgram<P>
RunResult<P> run(const Graph& g, const P& program, const RunOptions& opts = {}) {
  return Simulation<P>(g, program, opts).run();
}

/// Runs several programs one after another on the same graph, as stages of
/// one algorithm. A stage starts once the previous one has terminated (the
/// simulator's global view stands in for a fixed round schedule). Rounds,
/// messages and remaining round/message budgets carry across stages.
class StagedRun {
 public:
  StagedRun(const Graph& g, RunOptions base) : graph_(g), base_(std::move(base)) {
    total_.sent_per_node.assign(g.node_count(), 0);
    total_.received_per_node.assign(g.node_count(), 0);
    total_.halted_all = true;
  }

  /// Runs one stage; knowledge overrides apply to this stage only.
  template <class P>
    requires NodeProgram<P>
  RunResult<P> run(const P& program, std::optional<Knowledge> knowledge = std::nullopt) {
    RunOptions opts = base_;
    opts.seed = derive_seed(base_.seed, 0x5ea9e000ULL + stage_++);
    const Round cap = base_.round_cap.value_or(default_round_cap(graph_.node_count()));
    opts.round_cap = cap > total_.rounds ? cap - total_.rounds : 1;
    if (base_.message_limit) {
      opts.message_limit = *base_.message_limit > total_.messages_total ? *base_.message_limit - total_.messages_total : 0;
    }
    if (knowledge) opts.knowledge = *knowledge;
    auto result = Simulation<P>(graph_, program, opts).run();
    total_.absorb(result.stats);
    if (!result.stats.complete()) stopped_ = true;
    return result;
  }

  /// True once a stage timed out or hit the message limit.
  bool stopped() const noexcept { return stopped_; }
  const SimStats& stats() const noexcept { return total_; }
  const Graph& graph() const noexcept { return graph_; }
  const RunOptions& options() const noexcept { return base_; }
  std::size_t stages() const noexcept { return stage_; }

 private:
  const Graph& graph_;
  RunOptions base_;
  SimStats total_;
  std::uint64_t stage_ = 0;
  bool stopped_ = false;
};

struct Summary {
  double mean = 0;
  double median = 0;
  double max = 0;
};

inline Summary summarize(std::vector<double> values) {
  Summary s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  for (const double x : values) s.mean += x;
  s.mean /= static_cast<double>(values.size());
  const std::size_t k = values.size();
  s.median = k % 2 ? values[k / 2] : (values[k / 2 - 1] + values[k / 2]) / 2.0;
  s.max = values.back();
  return s;
}

/// A failure inside run_many, tagged with the index of the failing run.
class RunError : public std::runtime_error {
 public:
  RunError(std::size_t index, std::uint64_t seed, const std::string& what)
      : std::runtime_error("run " + std::to_string(index) + " (seed " + std::to_string(seed) + "): " + what),
        index_(index),
        seed_(seed) {}
  std::size_t index() const noexcept { return index_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::size_t index_;
  std::uint64_t seed_;
};

template <class P>
struct ManyRuns {
  std::vector<std::uint64_t> seeds;
  std::vector<RunResult<P>> runs;
  Summary rounds;
  Summary messages;
};

/// One run per seed. `graph_for(seed)` supplies the graph, so a family can
/// be resampled per seed or a fixed graph reused.
template <class P, class GraphFor>
  requires NodeProgram<P> && std::invocable<GraphFor, std::uint64_t>
ManyRuns<P> run_many(GraphFor&& graph_for, const P& program, std::span<const std::uint64_t> seeds,
                     const RunOptions& base = {}) {
  if (seeds.empty()) throw std::invalid_argument("run_many needs at least one seed");
  ManyRuns<P> out;
  out.seeds.assign(seeds.begin(), seeds.end());
  std::vector<double> rounds, messages;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    RunOptions opts = base;
    opts.seed = seeds[i];
    try {
      const Graph& g = graph_for(seeds[i]);
      out.runs.push_back(run(g, program, opts));
    } catch (const std::exception& e) {
      throw RunError(i, seeds[i], e.what());
    }
    rounds.push_back(static_cast<double>(out.runs.back().stats.rounds));
    messages.push_back(static_cast<double>(out.runs.back().stats.messages_total));
  }
  out.rounds = summarize(std::move(rounds));
  out.messages = summarize(std::move(messages));
  return out;
}

template <class P>
  requires NodeProgram<P>
ManyRuns<P> run_many(const Graph& g, const P& program, std::span<const std::uint64_t> seeds,
                     const RunOptions& base = {}) {
  return run_many([&g](std::uint64_t) -> const Graph& { return g; }, program, seeds, base);
}

}  // namespace congest

#endif  // CONGEST_ENGINE_HPP
