#ifndef CONGEST_VERIFY_HPP
#define CONGEST_VERIFY_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "congest/algorithms/common.hpp"
#include "congest/graph.hpp"

namespace congest {

struct RulingSetReport {
  bool valid = true;
  /// Pairs (a, b), a < b, of set members closer than alpha.
  std::vector<std::pair<NodeIndex, NodeIndex>> alpha_violations;
  /// Nodes farther than beta from the set (or unreachable from it).
  std::vector<NodeIndex> beta_violations;
  /// Largest distance of a node to the set; kUnreachable if some node cannot reach it.
  std::uint32_t achieved_beta = 0;
};

inline void check_node_set(const Graph& g, std::span<const NodeIndex> set) {
  std::vector<bool> seen(g.node_count(), false);
  for (const NodeIndex v : set) {
    if (v >= g.node_count()) throw std::invalid_argument("set contains node " + std::to_string(v) + " outside the graph");
    if (seen[v]) throw std::invalid_argument("set lists node " + std::to_string(v) + " twice");
    seen[v] = true;
  }
}

/// Exact (alpha, beta)-ruling set check: one multi-source BFS for beta and a
/// BFS truncated at depth alpha - 1 from every member for alpha.
inline RulingSetReport verify_ruling_set(const Graph& g, std::span<const NodeIndex> set, unsigned alpha,
                                         unsigned beta) {
  check_node_set(g, set);
  RulingSetReport report;
  const std::size_t n = g.node_count();

  const auto dist = bfs_distances(g, set);
  for (NodeIndex v = 0; v < n; ++v) {
    report.achieved_beta = std::max(report.achieved_beta, dist[v]);
    if (dist[v] > beta) report.beta_violations.push_back(v);
  }

  if (alpha >= 2 && set.size() > 1) {
    std::vector<bool> member(n, false);
    for (const NodeIndex v : set) member[v] = true;
    std::vector<std::uint32_t> depth(n, kUnreachable);
    std::vector<NodeIndex> touched, frontier, next;
    for (const NodeIndex s : set) {
      touched.assign({s});
      frontier.assign({s});
      depth[s] = 0;
      for (std::uint32_t d = 1; d < alpha && !frontier.empty(); ++d) {
        next.clear();
        for (const NodeIndex v : frontier) {
          for (const NodeIndex u : g.neighbors(v)) {
            if (depth[u] != kUnreachable) continue;
            depth[u] = d;
            touched.push_back(u);
            next.push_back(u);
            if (member[u] && s < u) report.alpha_violations.emplace_back(s, u);
          }
        }
        frontier.swap(next);
      }
      for (const NodeIndex v : touched) depth[v] = kUnreachable;
    }
    std::sort(report.alpha_violations.begin(), report.alpha_violations.end());
  }
  report.valid = report.alpha_violations.empty() && report.beta_violations.empty();
  return report;
}

inline RulingSetReport verify_ruling_set(const Graph& g, const std::vector<bool>& in_set, unsigned alpha,
                                         unsigned beta) {
  const auto set = members(in_set);
  return verify_ruling_set(g, std::span<const NodeIndex>(set), alpha, beta);
}

inline bool verify_mis(const Graph& g, std::span<const NodeIndex> set) {
  return verify_ruling_set(g, set, 2, 1).valid;
}

inline bool verify_mis(const Graph& g, const std::vector<bool>& in_set) {
  return verify_ruling_set(g, in_set, 2, 1).valid;
}

enum class CategoryVerdict { kValid, kInvalid, kIncomplete };

struct CategoryReport {
  CategoryVerdict verdict = CategoryVerdict::kValid;
  std::vector<std::string> diagnostics;
  bool valid() const noexcept { return verdict == CategoryVerdict::kValid; }
};

/// Category-1 must be a 2-ruling set, category-2 exactly its outside
/// neighbors, category-3 the rest with a category-2 neighbor.
inline CategoryReport verify_categories(const Graph& g, std::span<const Category> labels) {
  const std::size_t n = g.node_count();
  if (labels.size() != n) throw std::invalid_argument("one label per node required");
  CategoryReport report;
  for (NodeIndex v = 0; v < n; ++v) {
    if (labels[v] == Category::kUndecided) {
      report.verdict = CategoryVerdict::kIncomplete;
      report.diagnostics.push_back("node " + std::to_string(v) + " is undecided");
    }
  }
  if (report.verdict == CategoryVerdict::kIncomplete) return report;

  auto fail = [&](std::string why) {
    report.verdict = CategoryVerdict::kInvalid;
    report.diagnostics.push_back(std::move(why));
  };
  std::vector<bool> in_i(n);
  for (NodeIndex v = 0; v < n; ++v) in_i[v] = labels[v] == Category::kCat1;
  const auto rs = verify_ruling_set(g, in_i, 2, 2);
  for (const auto& [a, b] : rs.alpha_violations) {
    fail("category-1 nodes " + std::to_string(a) + " and " + std::to_string(b) + " are adjacent");
  }
  for (const NodeIndex v : rs.beta_violations) fail("node " + std::to_string(v) + " is more than 2 hops from category-1");

  for (NodeIndex v = 0; v < n; ++v) {
    bool has1 = false;
    bool has2 = false;
    for (const NodeIndex u : g.neighbors(v)) {
      has1 = has1 || labels[u] == Category::kCat1;
      has2 = has2 || labels[u] == Category::kCat2;
    }
    const std::string who = "node " + std::to_string(v);
    switch (labels[v]) {
      case Category::kCat1: break;
      case Category::kCat2:
        if (!has1) fail(who + " is category-2 without a category-1 neighbor");
        break;
      case Category::kCat3:
        if (has1) fail(who + " is category-3 but has a category-1 neighbor");
        if (!has2) fail(who + " is category-3 without a category-2 neighbor");
        break;
      case Category::kUndecided: break;
    }
  }
  return report;
}

inline constexpr std::size_t kBruteForceMaxNodes = 16;

/// Every (alpha, beta)-ruling set of a graph with at most 16 nodes, as
/// node-index bitmasks in increasing order.
inline std::vector<std::uint32_t> brute_force_ruling_sets(const Graph& g, unsigned alpha, unsigned beta) {
  const std::size_t n = g.node_count();
  if (n > kBruteForceMaxNodes) {
    throw std::invalid_argument("brute force enumeration is limited to " + std::to_string(kBruteForceMaxNodes) +
                                " nodes");
  }
  std::vector<std::uint32_t> found;
  std::vector<NodeIndex> set;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    set.clear();
    for (NodeIndex v = 0; v < n; ++v) {
      if (mask >> v & 1u) set.push_back(v);
    }
    if (verify_ruling_set(g, std::span<const NodeIndex>(set), alpha, beta).valid) found.push_back(mask);
  }
  return found;
}

}  // namespace congest

#endif  // CONGEST_VERIFY_HPP
