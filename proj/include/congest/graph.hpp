#ifndef CONGEST_GRAPH_HPP
#define CONGEST_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

namespace congest {

using NodeIndex = std::uint32_t;
using NodeId = std::uint64_t;
/// Port numbers are 1-based: a node of degree d owns ports 1..d.
using Port = std::uint32_t;
using TagId = std::uint16_t;

inline constexpr TagId kNoTag = 0;

class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
  GraphError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  std::optional<std::size_t> line_;
};

/// Raised by generators for parameters outside their domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structural role of a node in the special topologies (bipartite halves,
/// the tight example's sets). Not part of the on-disk format.
enum class NodePart : std::uint8_t {
  kNone,
  kLeft,         // L
  kRight,        // R
  kLeftPrime,    // L'
  kRightPrime,   // R'
  kSource,       // s of the tight example
  kSetA,
  kSetB,
  kSetC,
};

/// Immutable port-numbered undirected graph.
///
/// Adjacency is stored in CSR order: the neighbor behind port p of node v is
/// `neighbor(v, p)`. Every directed port also knows its reverse port, so a
/// message sent by v on port p arrives at u = neighbor(v, p) on port
/// `reverse_port(v, p)`. Instances are only produced by GraphBuilder, which
/// enforces symmetry, simplicity and distinct IDs.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }
  std::size_t port_count() const noexcept { return targets_.size(); }

  NodeId id(NodeIndex v) const { return ids_[v]; }
  std::span<const NodeId> ids() const noexcept { return ids_; }
  NodeId max_id() const noexcept { return max_id_; }

  std::uint32_t degree(NodeIndex v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::uint32_t max_degree() const noexcept { return max_degree_; }

  /// Neighbors of v in port order (index 0 is port 1).
  std::span<const NodeIndex> neighbors(NodeIndex v) const {
    return {targets_.data() + offsets_[v], degree(v)};
  }
  NodeIndex neighbor(NodeIndex v, Port p) const { return targets_[slot(v, p)]; }
  Port reverse_port(NodeIndex v, Port p) const { return reverse_[slot(v, p)]; }

  /// Flat index of directed port (v, p) in [0, port_count()).
  std::size_t slot(NodeIndex v, Port p) const { return offsets_[v] + p - 1; }
  std::size_t port_offset(NodeIndex v) const { return offsets_[v]; }

  TagId tag(NodeIndex v, Port p) const {
    return tags_.empty() ? kNoTag : tags_[slot(v, p)];
  }
  /// Tag names; index 0 is the empty "no tag" entry.
  std::span<const std::string> tag_names() const noexcept { return tag_names_; }
  const std::string& tag_name(TagId t) const { return tag_names_[t]; }
  bool has_tags() const noexcept { return !tags_.empty(); }
  std::optional<TagId> find_tag(const std::string& name) const {
    for (std::size_t i = 1; i < tag_names_.size(); ++i) {
      if (tag_names_[i] == name) return static_cast<TagId>(i);
    }
    return std::nullopt;
  }

  /// Undirected tagged edges as (u, v, tag) with u < v.
  std::vector<std::tuple<NodeIndex, NodeIndex, TagId>> tagged_edges() const {
    std::vector<std::tuple<NodeIndex, NodeIndex, TagId>> out;
    if (tags_.empty()) return out;
    for (NodeIndex v = 0; v < node_count(); ++v) {
      for (Port p = 1; p <= degree(v); ++p) {
        const NodeIndex u = neighbor(v, p);
        if (v < u && tag(v, p) != kNoTag) out.emplace_back(v, u, tag(v, p));
      }
    }
    return out;
  }

  NodePart part(NodeIndex v) const { return parts_.empty() ? NodePart::kNone : parts_[v]; }
  bool has_parts() const noexcept { return !parts_.empty(); }

  /// Port of v leading to u, if adjacent. Linear in deg(v).
  std::optional<Port> port_to(NodeIndex v, NodeIndex u) const {
    const auto nbrs = neighbors(v);
    const auto it = std::find(nbrs.begin(), nbrs.end(), u);
    if (it == nbrs.end()) return std::nullopt;
    return static_cast<Port>(it - nbrs.begin() + 1);
  }

  std::vector<std::uint32_t> degree_sequence() const {
    std::vector<std::uint32_t> out(node_count());
    for (NodeIndex v = 0; v < node_count(); ++v) out[v] = degree(v);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend class GraphBuilder;

  std::vector<NodeId> ids_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeIndex> targets_;
  std::vector<Port> reverse_;
  std::vector<TagId> tags_;
  std::vector<std::string> tag_names_{""};
  std::vector<NodePart> parts_;
  NodeId max_id_ = 0;
  std::uint32_t max_degree_ = 0;
};

/// Collects per-node port lists and produces a validated Graph.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) : adjacency_(n), ids_(n) {
    for (std::size_t v = 0; v < n; ++v) ids_[v] = v + 1;
  }

  std::size_t node_count() const noexcept { return adjacency_.size(); }

  void set_id(NodeIndex v, NodeId id) { ids_.at(v) = id; }
  void set_ids(std::vector<NodeId> ids) {
    if (ids.size() != ids_.size()) throw GraphError("id vector has wrong length");
    ids_ = std::move(ids);
  }
  void set_part(NodeIndex v, NodePart part) {
    if (parts_.empty()) parts_.assign(adjacency_.size(), NodePart::kNone);
    parts_.at(v) = part;
  }

  /// Appends u to v's port list and v to u's (next free port on each side).
  void add_edge(NodeIndex u, NodeIndex v) {
    adjacency_.at(u).push_back(v);
    adjacency_.at(v).push_back(u);
  }

  /// Replaces v's port list wholesale (the loader and rewiring use this).
  void set_ports(NodeIndex v, std::vector<NodeIndex> ports) { adjacency_.at(v) = std::move(ports); }
  std::vector<NodeIndex>& ports(NodeIndex v) { return adjacency_.at(v); }
  const std::vector<NodeIndex>& ports(NodeIndex v) const { return adjacency_.at(v); }

  void tag_edge(NodeIndex u, NodeIndex v, const std::string& label) {
    if (label.empty()) throw GraphError("empty edge tag");
    edge_tags_[key(u, v)] = label;
  }
  bool edge_tagged(NodeIndex u, NodeIndex v) const { return edge_tags_.count(key(u, v)) != 0; }

  Graph build() const {
    const std::size_t n = adjacency_.size();
    if (n > std::numeric_limits<NodeIndex>::max() - 1) throw GraphError("too many nodes");
    Graph g;
    g.ids_ = ids_;
    g.parts_ = parts_;
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + adjacency_[v].size();
    g.targets_.reserve(g.offsets_[n]);
    for (const auto& list : adjacency_) g.targets_.insert(g.targets_.end(), list.begin(), list.end());

    {
      std::unordered_set<NodeId> seen;
      seen.reserve(n * 2);
      for (std::size_t v = 0; v < n; ++v) {
        if (!seen.insert(ids_[v]).second) {
          throw GraphError("duplicate node id " + std::to_string(ids_[v]));
        }
        g.max_id_ = std::max(g.max_id_, ids_[v]);
      }
    }

    // Reverse ports in linear time: group the directed slots by target, then
    // resolve each group against a port lookup table for that target.
    const std::size_t slots = g.targets_.size();
    std::vector<std::size_t> in_offsets(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
      const auto& list = adjacency_[v];
      for (std::size_t i = 0; i < list.size(); ++i) {
        const NodeIndex u = list[i];
        if (u >= n) throw GraphError("node " + std::to_string(v) + " port " + std::to_string(i + 1) +
                                     " points to missing node " + std::to_string(u));
        if (u == v) throw GraphError("self-loop at node " + std::to_string(v));
        ++in_offsets[u + 1];
      }
      g.max_degree_ = std::max<std::uint32_t>(g.max_degree_, static_cast<std::uint32_t>(list.size()));
    }
    for (std::size_t u = 0; u < n; ++u) in_offsets[u + 1] += in_offsets[u];
    std::vector<std::size_t> incoming(slots);  // slots pointing at each node
    std::vector<NodeIndex> owner(slots);
    {
      std::vector<std::size_t> fill(in_offsets.begin(), in_offsets.end() - 1);
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < adjacency_[v].size(); ++i) {
          const std::size_t k = fill[adjacency_[v][i]]++;
          incoming[k] = g.offsets_[v] + i;
          owner[k] = static_cast<NodeIndex>(v);
        }
      }
    }
    g.reverse_.assign(slots, 0);
    std::vector<Port> port_of(n, 0);  // port_of[w]: port of u leading to w
    for (std::size_t u = 0; u < n; ++u) {
      const auto& list = adjacency_[u];
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (port_of[list[i]] != 0) {
          throw GraphError("parallel edge between nodes " + std::to_string(u) + " and " + std::to_string(list[i]));
        }
        port_of[list[i]] = static_cast<Port>(i + 1);
      }
      for (std::size_t k = in_offsets[u]; k < in_offsets[u + 1]; ++k) {
        const NodeIndex v = owner[k];
        if (port_of[v] == 0) {
          throw GraphError("asymmetric edge: node " + std::to_string(v) + " lists " + std::to_string(u) +
                           " but not vice versa");
        }
        g.reverse_[incoming[k]] = port_of[v];
      }
      if (in_offsets[u + 1] - in_offsets[u] != list.size()) {
        throw GraphError("asymmetric edge at node " + std::to_string(u));
      }
      for (const NodeIndex w : list) port_of[w] = 0;
    }

    if (!edge_tags_.empty()) {
      std::map<std::string, TagId> names;
      g.tags_.assign(g.targets_.size(), kNoTag);
      for (const auto& [edge, label] : edge_tags_) {
        const auto [u, v] = edge;
        auto [it, inserted] = names.try_emplace(label, static_cast<TagId>(g.tag_names_.size()));
        if (inserted) g.tag_names_.push_back(label);
        const auto pu = g.port_to(u, v);
        if (!pu) throw GraphError("tag on missing edge " + std::to_string(u) + "-" + std::to_string(v));
        g.tags_[g.slot(u, *pu)] = it->second;
        g.tags_[g.slot(v, g.reverse_port(u, *pu))] = it->second;
      }
    }
    return g;
  }

 private:
  static std::pair<NodeIndex, NodeIndex> key(NodeIndex u, NodeIndex v) {
    return u < v ? std::pair{u, v} : std::pair{v, u};
  }

  std::vector<std::vector<NodeIndex>> adjacency_;
  std::vector<NodeId> ids_;
  std::vector<NodePart> parts_;
  std::map<std::pair<NodeIndex, NodeIndex>, std::string> edge_tags_;
};

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Hop distance from every node to the nearest source; kUnreachable if none.
inline std::vector<std::uint32_t> bfs_distances(const Graph& g, std::span<const NodeIndex> sources) {
  std::vector<std::uint32_t> dist(g.node_count(), kUnreachable);
  std::vector<NodeIndex> frontier;
  for (const NodeIndex s : sources) {
    if (dist.at(s) != 0) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }
  std::vector<NodeIndex> next;
  for (std::uint32_t d = 1; !frontier.empty(); ++d) {
    next.clear();
    for (const NodeIndex v : frontier) {
      for (const NodeIndex u : g.neighbors(v)) {
        if (dist[u] == kUnreachable) {
          dist[u] = d;
          next.push_back(u);
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

/// Nodes whose flag is set, in index order.
inline std::vector<NodeIndex> members(const std::vector<bool>& flags) {
  std::vector<NodeIndex> out;
  for (std::size_t v = 0; v < flags.size(); ++v) {
    if (flags[v]) out.push_back(static_cast<NodeIndex>(v));
  }
  return out;
}

}  // namespace congest

#endif  // CONGEST_GRAPH_HPP
