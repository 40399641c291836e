#ifndef CONGEST_ALGORITHMS_TWO_RULING_SET_HPP
#define CONGEST_ALGORITHMS_TWO_RULING_SET_HPP

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "congest/algorithms/common.hpp"
#include "congest/algorithms/greedy.hpp"
#include "congest/algorithms/luby.hpp"

namespace congest {

struct TwoRulingSetParams {
  double eps = 0.25;
  double c_iter = 16.0;
};

inline std::size_t two_rs_scales(std::uint32_t max_degree) {
  if (max_degree <= 1) return 1;
  return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(max_degree)) - 1e-12));
}

inline std::size_t two_rs_iterations(const TwoRulingSetParams& p, std::size_t n) {
  const double lg = log2_at_least_1(static_cast<double>(n));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(p.c_iter * std::pow(lg, 0.5 + p.eps) - 1e-9)));
}

/// Degree threshold above which the scale structure is skipped for Luby.
inline double two_rs_luby_threshold(std::size_t n) {
  return std::exp2(std::sqrt(std::log2(std::max<double>(static_cast<double>(n), 1.0))));
}

/// One scale of the marking loop: the iterations that build M_{i,t} and
/// W_{i,t}, followed by the selection of B_t. Round 1 lets nodes removed by
/// the previous scale's greedy call notify their S-neighbors; iteration i
/// uses rounds 2i (mark) and 2i + 1 (buffer); two closing rounds pick B_t
/// and deliver its departure.
struct TwoRsScale {
  const std::vector<bool>* in_s = nullptr;
  const std::vector<bool>* leaving = nullptr;
  const PortLists* s_ports = nullptr;
  std::size_t iterations = 1;
  double mark_prob = 1.0;
  double delta_t = 1.0;
  bool last_scale = false;

  enum : Word { kLeave = 1, kMark = 2 };

  struct State {
    bool in_s = false;
    bool marked = false;
    bool in_b = false;
    std::uint32_t m_iter = 0;
    std::uint32_t w_iter = 0;
    std::vector<Port> s_ports;
    std::vector<Port> st_ports;   // S-ports at the start of the scale
    std::vector<Port> same_m;     // ports to nodes of the same M_{i,t}
  };

  State init(NodeContext& ctx) const {
    State s;
    const NodeIndex v = ctx.index();
    s.in_s = (*in_s)[v];
    if (s.in_s) s.s_ports = (*s_ports)[v];
    return s;
  }

  void send_leave(State& s, Outbox& out, std::span<const Port> skip = {}) const {
    const Message m{kLeave};
    auto k = skip.begin();
    for (const Port p : s.s_ports) {
      while (k != skip.end() && *k < p) ++k;
      if (k != skip.end() && *k == p) continue;
      out.send(p, m);
    }
    s.in_s = false;
  }

  void drop_leavers(State& s, Inbox in) const {
    std::vector<Port> gone;
    for (const auto& d : in) {
      if (d.message[0] == kLeave) gone.push_back(d.port);
    }
    erase_ports(s.s_ports, gone);
  }

  StepResult step(State& s, NodeContext& ctx, Inbox in, Outbox& out) const {
    if (!s.in_s) return StepResult::halt();
    const Round r = ctx.round();
    const Round closing = 2 * static_cast<Round>(iterations) + 2;
    if (r == 1) {
      if ((*leaving)[ctx.index()]) {
        send_leave(s, out);
        return StepResult::halt();
      }
      return StepResult::active();
    }
    if (r < closing && r % 2 == 0) {  // mark round of iteration r / 2
      drop_leavers(s, in);
      if (r == 2) s.st_ports = s.s_ports;
      s.marked = ctx.rng().bernoulli(mark_prob);
      if (!s.marked) return StepResult::sleep_until(r + 2);
      s.m_iter = static_cast<std::uint32_t>(r / 2);
      const Message m{kMark};
      for (const Port p : s.s_ports) out.send(p, m);
      return StepResult::active();
    }
    if (r < closing) {  // buffer round
      std::vector<Port> marks;
      for (const auto& d : in) {
        if (d.message[0] == kMark) marks.push_back(d.port);
      }
      if (s.marked) {
        s.same_m = std::move(marks);
        s.in_s = false;
        return StepResult::halt();
      }
      if (marks.empty()) return StepResult::sleep_until(r + 1);
      s.w_iter = static_cast<std::uint32_t>(r / 2);
      send_leave(s, out, marks);
      return StepResult::halt();
    }
    drop_leavers(s, in);
    if (r == closing) {
      if (last_scale || static_cast<double>(s.s_ports.size()) >= delta_t / 2.0) {
        s.in_b = true;
        send_leave(s, out);
        return StepResult::halt();
      }
      return StepResult::active();
    }
    return StepResult::halt();
  }

  bool output(const State& s) const { return s.in_s; }
};

namespace detail {

struct MSetKey {
  std::uint32_t scale;
  std::uint32_t iteration;
  auto operator<=>(const MSetKey&) const = default;
};

}  // namespace detail

/// Runs the 2-ruling set on the subgraph given by `member` and `ports`
/// (all of G when both cover everything), appending stages to `staged`.
/// Returns the ruling set; fills `info` with the sub-call iteration counts
/// and the invariant checks.
inline std::vector<bool> two_ruling_set_stages(StagedRun& staged, const std::vector<bool>& member,
                                               const PortLists& ports, const TwoRulingSetParams& params,
                                               Instrumentation& info) {
  if (!(params.eps > 0.0)) throw std::invalid_argument("2rs-time needs eps > 0");
  if (!(params.c_iter >= 1.0)) throw std::invalid_argument("2rs-time needs c_iter >= 1");
  const Graph& g = staged.graph();
  const std::size_t n = g.node_count();
  const std::uint32_t delta = max_list_degree(ports);
  const Knowledge knowledge{n, delta};
  std::vector<bool> in_i(n, false);

  info.values["delta"] = delta;
  if (static_cast<double>(delta) > two_rs_luby_threshold(n)) {
    info.values["delegated_to_luby"] = 1;
    LubyMis luby;
    luby.members = &member;
    luby.ports = &ports;
    auto res = staged.run(luby, knowledge);
    for (NodeIndex v = 0; v < n; ++v) in_i[v] = res.states[v].in_mis;
    return in_i;
  }
  info.values["delegated_to_luby"] = 0;

  const double lg = log2_at_least_1(static_cast<double>(n));
  const std::size_t scales = two_rs_scales(delta);
  const std::size_t iterations = two_rs_iterations(params, n);
  info.values["scales"] = static_cast<double>(scales);
  info.values["iterations_per_scale"] = static_cast<double>(iterations);

  std::vector<bool> in_s = member;
  std::vector<bool> leaving(n, false);
  PortLists s_ports = ports;
  std::vector<std::uint32_t> m_scale(n, 0), m_iter(n, 0);
  PortLists same_m(n);
  std::uint64_t w_violations = 0;
  auto& b_iters = info.series["greedy_iterations_b"];

  for (std::size_t t = 1; t <= scales; ++t) {
    TwoRsScale scale;
    scale.in_s = &in_s;
    scale.leaving = &leaving;
    scale.s_ports = &s_ports;
    scale.iterations = iterations;
    scale.delta_t = static_cast<double>(delta) / std::exp2(static_cast<double>(t - 1));
    scale.mark_prob = std::min(1.0, 1.0 / (scale.delta_t * std::pow(lg, params.eps)));
    scale.last_scale = t == scales;
    auto res = staged.run(scale, knowledge);
    if (staged.stopped()) return in_i;

    std::vector<bool> in_st(n, false), in_b(n, false);
    PortLists st_ports(n);
    bool any_b = false;
    for (NodeIndex v = 0; v < n; ++v) {
      auto& st = res.states[v];
      in_st[v] = in_s[v] && !leaving[v];
      in_s[v] = st.in_s;
      in_b[v] = st.in_b;
      any_b = any_b || st.in_b;
      s_ports[v] = std::move(st.s_ports);
      st_ports[v] = std::move(st.st_ports);
      if (st.m_iter) {
        m_scale[v] = static_cast<std::uint32_t>(t);
        m_iter[v] = st.m_iter;
        same_m[v] = std::move(st.same_m);
      }
    }
    // W buffer: after iteration i nothing left in S touches M_{i,t} in G[S_t].
    for (NodeIndex v = 0; v < n; ++v) {
      const auto i = res.states[v].m_iter;
      if (!i) continue;
      for (const Port p : st_ports[v]) {
        const auto& u = res.states[g.neighbor(v, p)];
        const bool ok = u.m_iter == i || (u.w_iter >= 1 && u.w_iter <= i);
        if (!ok) ++w_violations;
      }
    }
    std::fill(leaving.begin(), leaving.end(), false);
    if (!any_b) {
      b_iters.push_back(0);
      continue;
    }
    GreedyRulingSet greedy;
    greedy.beta = 2;
    greedy.participants = &in_st;
    greedy.candidates = &in_b;
    greedy.ports = &st_ports;
    auto gres = staged.run(greedy, knowledge);
    if (staged.stopped()) return in_i;
    std::uint32_t iters = 0;
    for (NodeIndex v = 0; v < n; ++v) {
      const auto& st = gres.states[v];
      if (st.joined) in_i[v] = true;
      iters = std::max(iters, st.join_iteration);
      // S-neighbors of B_t joiners are covered; keeping them in S would let a
      // later M set pick a neighbor of a joiner.
      if (st.dominated && in_s[v]) leaving[v] = true;
    }
    b_iters.push_back(iters);
  }

  // M sets of distinct (t, i) must be pairwise non-adjacent for the joint
  // greedy MIS below to be an MIS of each.
  std::uint64_t m_adjacent = 0;
  std::vector<bool> in_m(n, false);
  for (NodeIndex v = 0; v < n; ++v) {
    if (!m_iter[v]) continue;
    in_m[v] = true;
    for (const NodeIndex u : g.neighbors(v)) {
      if (m_iter[u] && (m_scale[u] != m_scale[v] || m_iter[u] != m_iter[v])) ++m_adjacent;
    }
  }
  info.values["w_buffer_violations"] = static_cast<double>(w_violations);
  info.values["m_adjacency_violations"] = static_cast<double>(m_adjacent / 2);

  GreedyRulingSet mis;
  mis.beta = 1;
  mis.participants = &in_m;
  mis.candidates = &in_m;
  mis.ports = &same_m;
  auto mres = staged.run(mis, knowledge);
  std::map<detail::MSetKey, std::uint32_t> per_set;
  for (NodeIndex v = 0; v < n; ++v) {
    if (!in_m[v]) continue;
    const auto& st = mres.states[v];
    if (st.joined) in_i[v] = true;
    auto& it = per_set[{m_scale[v], m_iter[v]}];
    it = std::max(it, st.join_iteration);
  }
  auto& m_iters = info.series["greedy_iterations_m"];
  for (const auto& [key, iters] : per_set) m_iters.push_back(iters);
  return in_i;
}

inline RulingSetOutput run_two_ruling_set(const Graph& g, const TwoRulingSetParams& params, const RunOptions& opts) {
  StagedRun staged(g, opts);
  RulingSetOutput out;
  out.in_set = two_ruling_set_stages(staged, std::vector<bool>(g.node_count(), true), all_ports(g), params, out.info);
  out.stats = staged.stats();
  return out;
}

}  // namespace congest

#endif  // CONGEST_ALGORITHMS_TWO_RULING_SET_HPP
