#ifndef CONGEST_ALGORITHMS_COMMON_HPP
#define CONGEST_ALGORITHMS_COMMON_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "congest/engine.hpp"
#include "congest/graph.hpp"

namespace congest {

enum class Category : std::uint8_t { kUndecided = 0, kCat1 = 1, kCat2 = 2, kCat3 = 3 };

inline const char* category_name(Category c) {
  switch (c) {
    case Category::kUndecided: return "undecided";
    case Category::kCat1: return "category-1";
    case Category::kCat2: return "category-2";
    case Category::kCat3: return "category-3";
  }
  return "?";
}

/// Per-node list of ports, ascending. Describes a subgraph as seen from
/// each node (e.g. G[S]); node v uses only entry v.
using PortLists = std::vector<std::vector<Port>>;

inline PortLists all_ports(const Graph& g) {
  PortLists lists(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    lists[v].resize(g.degree(v));
    for (Port p = 1; p <= g.degree(v); ++p) lists[v][p - 1] = p;
  }
  return lists;
}

/// Ports of each member leading to other members: the port view of G[S].
inline PortLists induced_ports(const Graph& g, const std::vector<bool>& member) {
  PortLists lists(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (!member[v]) continue;
    for (Port p = 1; p <= g.degree(v); ++p) {
      if (member[g.neighbor(v, p)]) lists[v].push_back(p);
    }
  }
  return lists;
}

inline std::uint32_t max_list_degree(const PortLists& lists) {
  std::size_t d = 0;
  for (const auto& l : lists) d = std::max(d, l.size());
  return static_cast<std::uint32_t>(d);
}

/// Removes every port in `gone` (ascending) from `live` (ascending).
inline void erase_ports(std::vector<Port>& live, std::span<const Port> gone) {
  if (gone.empty()) return;
  auto out = live.begin();
  auto g = gone.begin();
  for (auto it = live.begin(); it != live.end(); ++it) {
    while (g != gone.end() && *g < *it) ++g;
    if (g != gone.end() && *g == *it) continue;
    *out++ = *it;
  }
  live.erase(out, live.end());
}

inline double log2_at_least_1(double x) { return std::max(1.0, std::log2(std::max(x, 1.0))); }

/// Scalar and series measurements an algorithm driver reports.
struct Instrumentation {
  std::map<std::string, double> values;
  std::map<std::string, std::vector<double>> series;
};

struct RulingSetOutput {
  std::vector<bool> in_set;
  /// Filled by the message-efficient algorithm only.
  std::vector<Category> categories;
  std::vector<Round> decision_round;
  SimStats stats;
  Instrumentation info;

  std::vector<NodeIndex> members() const { return congest::members(in_set); }
};

}  // namespace congest

#endif  // CONGEST_ALGORITHMS_COMMON_HPP
