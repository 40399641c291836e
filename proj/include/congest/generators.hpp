#ifndef CONGEST_GENERATORS_HPP
#define CONGEST_GENERATORS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "congest/graph.hpp"
#include "congest/rng.hpp"

namespace congest {

enum class IdMode {
  kRandom,      // distinct, uniform from [1, n^id_exponent]
  kSequential,  // 1..n, for debugging
};

struct IdOptions {
  IdMode mode = IdMode::kRandom;
  unsigned id_exponent = 4;
};

namespace detail {

// Seed streams of one generator call: the topology, the IDs, the port
// shuffle and (for bridge graphs) the rewiring draw are independent.
enum GeneratorStream : std::uint64_t { kTopology = 1, kIds = 2, kPorts = 3, kBridge = 4 };

inline NodeId id_range(std::size_t n, unsigned exponent) {
  const long double r = std::pow(static_cast<long double>(std::max<std::size_t>(n, 2)), exponent);
  constexpr auto cap = static_cast<long double>(std::uint64_t{1} << 62);
  return r >= cap ? (std::uint64_t{1} << 62) : static_cast<NodeId>(r);
}

inline void assign_ids(GraphBuilder& b, std::uint64_t seed, const IdOptions& opts) {
  const std::size_t n = b.node_count();
  if (opts.mode == IdMode::kSequential) return;  // builder default is 1..n
  const NodeId range = std::max<NodeId>(id_range(n, opts.id_exponent), n);
  Rng rng(derive_seed(seed, kIds));
  std::unordered_set<NodeId> used;
  used.reserve(n * 2);
  for (std::size_t v = 0; v < n; ++v) {
    NodeId id;
    do {
      id = rng.between(1, range);
    } while (!used.insert(id).second);
    b.set_id(static_cast<NodeIndex>(v), id);
  }
}

inline void shuffle_ports(GraphBuilder& b, std::uint64_t seed) {
  Rng rng(derive_seed(seed, kPorts));
  for (std::size_t v = 0; v < b.node_count(); ++v) {
    auto& list = b.ports(static_cast<NodeIndex>(v));
    rng.shuffle(std::span<NodeIndex>(list));
  }
}

inline std::size_t ceil_size(double x) {
  // pow() results like 256^0.75 land a hair above the integer.
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

inline void add_complete_bipartite(GraphBuilder& b, NodeIndex left0, std::size_t a, NodeIndex right0,
                                   std::size_t c) {
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      b.add_edge(static_cast<NodeIndex>(left0 + i), static_cast<NodeIndex>(right0 + j));
    }
  }
}

}  // namespace detail

inline Graph gen_cycle(std::size_t n, std::uint64_t seed, const IdOptions& ids = {}) {
  if (n < 3) throw InvalidParameter("cycle needs n >= 3");
  GraphBuilder b(n);
  for (std::size_t v = 0; v < n; ++v) b.add_edge(static_cast<NodeIndex>(v), static_cast<NodeIndex>((v + 1) % n));
  detail::shuffle_ports(b, seed);
  detail::assign_ids(b, seed, ids);
  return b.build();
}

inline Graph gen_path(std::size_t n, std::uint64_t seed, const IdOptions& ids = {}) {
  if (n < 1) throw InvalidParameter("path needs n >= 1");
  GraphBuilder b(n);
  for (std::size_t v = 0; v + 1 < n; ++v) b.add_edge(static_cast<NodeIndex>(v), static_cast<NodeIndex>(v + 1));
  detail::shuffle_ports(b, seed);
  detail::assign_ids(b, seed, ids);
  return b.build();
}

inline Graph gen_star(std::size_t leaves, std::uint64_t seed, const IdOptions& ids = {}) {
  GraphBuilder b(leaves + 1);
  for (std::size_t v = 1; v <= leaves; ++v) b.add_edge(0, static_cast<NodeIndex>(v));
  detail::shuffle_ports(b, seed);
  detail::assign_ids(b, seed, ids);
  return b.build();
}

inline Graph gen_empty(std::size_t n, std::uint64_t seed, const IdOptions& ids = {}) {
  GraphBuilder b(n);
  detail::assign_ids(b, seed, ids);
  return b.build();
}

inline Graph gen_complete(std::size_t n, std::uint64_t seed, const IdOptions& ids = {}) {
  GraphBuilder b(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) b.add_edge(static_cast<NodeIndex>(u), static_cast<NodeIndex>(v));
  }
  detail::shuffle_ports(b, seed);
  detail::assign_ids(b, seed, ids);
  return b.build();
}

/// K_{a,b}; nodes 0..a-1 are the left side, a..a+b-1 the right side.
inline Graph gen_complete_bipartite(std::size_t a, std::size_t b_count, std::uint64_t seed,
                                    const IdOptions& ids = {}) {
  if (a < 1 || b_count < 1) throw InvalidParameter("complete bipartite sides must be >= 1");
  GraphBuilder b(a + b_count);
  detail::add_complete_bipartite(b, 0, a, static_cast<NodeIndex>(a), b_count);
  for (std::size_t v = 0; v < a + b_count; ++v) {
    b.set_part(static_cast<NodeIndex>(v), v < a ? NodePart::kLeft : NodePart::kRight);
  }
  detail::shuffle_ports(b, seed);
  detail::assign_ids(b, seed, ids);
  return b.build();
}

inline Graph gen_gnp(std::size_t n, double p, std::uint64_t seed, const IdOptions& ids = {}) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("gnp needs 0 <= p <= 1");
  GraphBuilder b(n);
  Rng rng(derive_seed(seed, detail::kTopology));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) b.add_edge(static_cast<NodeIndex>(u), static_cast<NodeIndex>(v));
    }
  }
  detail::shuffle_ports(b, seed);
  detail::assign_ids(b, seed, ids);
  return b.build();
}

namespace detail {

inline GraphBuilder disconnected_d_builder(std::size_t n, std::uint64_t seed) {
  if (n == 0 || n % 4 != 0) throw InvalidParameter("n must be a positive multiple of 4");
  const std::size_t q = n / 4;
  GraphBuilder b(n);
  // Layout: L = [0, q), R = [q, 2q), L' = [2q, 3q), R' = [3q, 4q).
  add_complete_bipartite(b, 0, q, static_cast<NodeIndex>(q), q);
  add_complete_bipartite(b, static_cast<NodeIndex>(2 * q), q, static_cast<NodeIndex>(3 * q), q);
  const NodePart parts[] = {NodePart::kLeft, NodePart::kRight, NodePart::kLeftPrime, NodePart::kRightPrime};
  for (std::size_t v = 0; v < n; ++v) b.set_part(static_cast<NodeIndex>(v), parts[v / q]);
  shuffle_ports(b, seed);
  return b;
}

}  // namespace detail

/// Two disjoint copies of K_{n/4,n/4} with halves L, R, L', R'.
inline Graph gen_disconnected_d(std::size_t n, std::uint64_t seed, const IdOptions& ids = {}) {
  auto b = detail::disconnected_d_builder(n, seed);
  detail::assign_ids(b, seed, ids);
  return b.build();
}

/// Result of a bridge construction, for tests that need the drawn edges.
struct BridgeChoice {
  NodeIndex u, v;        // removed e = (u, v), u in L, v in R
  NodeIndex u_p, v_p;    // removed e' = (u', v'), u' in L', v' in R'
};

inline BridgeChoice draw_bridge_choice(std::size_t n, std::uint64_t seed) {
  const std::size_t q = n / 4;
  Rng rng(derive_seed(seed, detail::kBridge));
  BridgeChoice c{};
  c.u = static_cast<NodeIndex>(rng.below(q));
  c.v = static_cast<NodeIndex>(q + rng.below(q));
  c.u_p = static_cast<NodeIndex>(2 * q + rng.below(q));
  c.v_p = static_cast<NodeIndex>(3 * q + rng.below(q));
  return c;
}

/// D(n) with e and e' replaced by bridges (u,u') and (v,v') that reuse the
/// freed ports. Same seed gives the same IDs and port layout as
/// gen_disconnected_d, so runs on D and B are comparable trace by trace.
inline Graph gen_bridge_graph(std::size_t n, std::uint64_t seed, const IdOptions& ids = {}) {
  auto b = detail::disconnected_d_builder(n, seed);
  // The two edges lie in different components, so the rewiring can never
  // create a parallel edge and no redraw is needed.
  const BridgeChoice c = draw_bridge_choice(n, seed);
  auto rewire = [&](NodeIndex at, NodeIndex from, NodeIndex to) {
    auto& list = b.ports(at);
    const auto it = std::find(list.begin(), list.end(), from);
    *it = to;
  };
  rewire(c.u, c.v, c.u_p);
  rewire(c.v, c.u, c.v_p);
  rewire(c.u_p, c.v_p, c.u);
  rewire(c.v_p, c.u_p, c.v);
  b.tag_edge(c.u, c.u_p, "bridge");
  b.tag_edge(c.v, c.v_p, "bridge");
  detail::assign_ids(b, seed, ids);
  return b.build();
}

struct TightExampleSizes {
  std::size_t a, b, c;
};

inline TightExampleSizes tight_example_sizes(std::size_t n, double eps, double eps_p) {
  if (!(0.0 < eps_p && eps_p < eps && eps < 1.0)) throw InvalidParameter("tight example needs 0 < eps' < eps < 1");
  const double nd = static_cast<double>(n);
  TightExampleSizes s{};
  s.a = detail::ceil_size(std::pow(nd, 1.0 - eps));
  s.b = detail::ceil_size(std::pow(nd, 1.0 - eps_p));
  if (s.a < 1 || s.b < 1 || s.a + s.b + 1 >= n) throw InvalidParameter("tight example sizes leave C empty");
  s.c = n - 1 - s.a - s.b;
  return s;
}

/// Node 0 is s, then A, B, C in that order.
inline Graph gen_tight_example(std::size_t n, double eps, double eps_p, std::uint64_t seed,
                               const IdOptions& ids = {}) {
  const auto sz = tight_example_sizes(n, eps, eps_p);
  GraphBuilder b(n);
  const NodeIndex a0 = 1;
  const auto b0 = static_cast<NodeIndex>(a0 + sz.a);
  const auto c0 = static_cast<NodeIndex>(b0 + sz.b);
  for (std::size_t i = 0; i < sz.a; ++i) b.add_edge(0, static_cast<NodeIndex>(a0 + i));
  detail::add_complete_bipartite(b, a0, sz.a, b0, sz.b);
  detail::add_complete_bipartite(b, b0, sz.b, c0, sz.c);
  b.set_part(0, NodePart::kSource);
  for (NodeIndex v = 1; v < n; ++v) {
    b.set_part(v, v < b0 ? NodePart::kSetA : (v < c0 ? NodePart::kSetB : NodePart::kSetC));
  }
  detail::shuffle_ports(b, seed);
  detail::assign_ids(b, seed, ids);
  return b.build();
}

enum class GraphFamily {
  kCycle,
  kPath,
  kStar,
  kEmpty,
  kComplete,
  kCompleteBipartite,
  kGnp,
  kBridge,
  kDisconnectedD,
  kTightExample,
  kFromFile,
};

/// A graph family plus its parameters; fully determines a Graph.
struct GraphFamilySpec {
  GraphFamily family = GraphFamily::kCycle;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 1;
  IdOptions ids;
};

inline const std::map<std::string, GraphFamily>& family_names() {
  static const std::map<std::string, GraphFamily> names{
      {"cycle", GraphFamily::kCycle},
      {"path", GraphFamily::kPath},
      {"star", GraphFamily::kStar},
      {"empty", GraphFamily::kEmpty},
      {"complete", GraphFamily::kComplete},
      {"complete_bipartite", GraphFamily::kCompleteBipartite},
      {"kab", GraphFamily::kCompleteBipartite},
      {"gnp", GraphFamily::kGnp},
      {"bridge", GraphFamily::kBridge},
      {"disconnected_d", GraphFamily::kDisconnectedD},
      {"disconnected", GraphFamily::kDisconnectedD},
      {"tight_example", GraphFamily::kTightExample},
      {"tight", GraphFamily::kTightExample},
      {"file", GraphFamily::kFromFile},
  };
  return names;
}

inline std::string family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::kCycle: return "cycle";
    case GraphFamily::kPath: return "path";
    case GraphFamily::kStar: return "star";
    case GraphFamily::kEmpty: return "empty";
    case GraphFamily::kComplete: return "complete";
    case GraphFamily::kCompleteBipartite: return "complete_bipartite";
    case GraphFamily::kGnp: return "gnp";
    case GraphFamily::kBridge: return "bridge";
    case GraphFamily::kDisconnectedD: return "disconnected_d";
    case GraphFamily::kTightExample: return "tight_example";
    case GraphFamily::kFromFile: return "file";
  }
  return "?";
}

namespace detail {

inline const std::string& require(const GraphFamilySpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    throw InvalidParameter(family_name(spec.family) + " needs parameter '" + key + "'");
  }
  return it->second;
}

inline std::size_t param_size(const GraphFamilySpec& spec, const std::string& key) {
  const auto& text = require(spec, key);
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty() || text[0] == '-') {
    throw InvalidParameter("parameter '" + key + "' must be a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

inline double param_real(const GraphFamilySpec& spec, const std::string& key) {
  const auto& text = require(spec, key);
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty()) {
    throw InvalidParameter("parameter '" + key + "' must be a number, got '" + text + "'");
  }
  return v;
}

}  // namespace detail

}  // namespace congest

#endif  // CONGEST_GENERATORS_HPP
