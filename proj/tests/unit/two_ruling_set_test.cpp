#include <gtest/gtest.h>

#include <cmath>

#include "congest/algorithms/two_ruling_set.hpp"
#include "congest/verify.hpp"
#include "test_support.hpp"

namespace congest {
namespace {

RunOptions seeded(std::uint64_t seed) {
  RunOptions o;
  o.seed = seed;
  return o;
}

TEST(TwoRulingSet, Schedules) {
  EXPECT_EQ(two_rs_scales(0), 1u);
  EXPECT_EQ(two_rs_scales(2), 1u);
  EXPECT_EQ(two_rs_scales(8), 3u);
  EXPECT_EQ(two_rs_scales(9), 4u);
  // c (log2 n)^(1/2 + eps): 16 * 16^0.75 = 128 for n = 2^16.
  EXPECT_EQ(two_rs_iterations({0.25, 16}, std::size_t{1} << 16), 128u);
  EXPECT_EQ(two_rs_iterations({0.25, 1}, 1), 1u);
  EXPECT_DOUBLE_EQ(two_rs_luby_threshold(std::size_t{1} << 16), 16.0);
}

TEST(TwoRulingSet, IsolatedNodes) {
  const Graph g = gen_empty(9, 1);
  const auto out = run_two_ruling_set(g, {}, seeded(1));
  EXPECT_EQ(out.in_set, std::vector<bool>(9, true));
}

TEST(TwoRulingSet, SingleEdge) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto out = run_two_ruling_set(gen_complete(2, s), {}, seeded(s));
    EXPECT_EQ(out.members().size(), 1u);
  }
}

TEST(TwoRulingSet, SmallCorpus) {
  for (const Graph& g : fixtures::small_corpus(8, 40, 6)) {
    for (std::uint64_t s = 0; s < 4; ++s) {
      const auto out = run_two_ruling_set(g, {}, seeded(s));
      ASSERT_TRUE(out.stats.complete());
      EXPECT_TRUE(verify_ruling_set(g, out.in_set, 2, 2).valid);
    }
  }
}

TEST(TwoRulingSet, DelegatesAboveThreshold) {
  const Graph g = gen_gnp(2048, 16.0 / 2048, 4);
  ASSERT_GT(g.max_degree(), two_rs_luby_threshold(2048));
  for (std::uint64_t s = 0; s < 25; ++s) {
    const auto out = run_two_ruling_set(g, {}, seeded(s));
    EXPECT_EQ(out.info.values.at("delegated_to_luby"), 1);
    EXPECT_TRUE(verify_ruling_set(g, out.in_set, 2, 2).valid);
  }
}

TEST(TwoRulingSet, ScaleStructureInvariants) {
  const std::size_t n = 2048;
  std::size_t used = 0;
  for (std::uint64_t s = 0; used < 25 && s < 200; ++s) {
    const Graph g = gen_gnp(n, 2.0 / n, s);
    if (g.max_degree() > two_rs_luby_threshold(n)) continue;
    ++used;
    const auto out = run_two_ruling_set(g, {}, seeded(s));
    ASSERT_EQ(out.info.values.at("delegated_to_luby"), 0);
    EXPECT_TRUE(verify_ruling_set(g, out.in_set, 2, 2).valid);
    EXPECT_EQ(out.info.values.at("w_buffer_violations"), 0);
    EXPECT_EQ(out.info.values.at("m_adjacency_violations"), 0);
    const double lg = std::log2(static_cast<double>(n));
    for (const double it : out.info.series.at("greedy_iterations_m")) EXPECT_LE(it, 4 * lg / std::log2(lg));
    EXPECT_EQ(out.info.series.at("greedy_iterations_b").size(), out.info.values.at("scales"));
  }
  EXPECT_EQ(used, 25u);
}

TEST(TwoRulingSet, SubgraphRun) {
  const Graph g = gen_gnp(300, 0.01, 8);
  std::vector<bool> member(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) member[v] = v % 3 != 0;
  const auto ports = induced_ports(g, member);
  StagedRun staged(g, seeded(3));
  Instrumentation info;
  const auto in_i = two_ruling_set_stages(staged, member, ports, {}, info);
  // Check against the induced subgraph built explicitly.
  std::vector<NodeIndex> index(g.node_count(), 0);
  std::size_t k = 0;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (member[v]) index[v] = static_cast<NodeIndex>(k++);
  }
  GraphBuilder b(k);
  std::vector<bool> sub_set(k);
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (!member[v]) {
      EXPECT_FALSE(in_i[v]);
      continue;
    }
    sub_set[index[v]] = in_i[v];
    for (const NodeIndex u : g.neighbors(v)) {
      if (member[u] && v < u) b.add_edge(index[v], index[u]);
    }
  }
  EXPECT_TRUE(verify_ruling_set(b.build(), sub_set, 2, 2).valid);
}

TEST(TwoRulingSet, RejectsBadParameters) {
  EXPECT_THROW(run_two_ruling_set(gen_cycle(5, 1), {0.0, 16}, {}), std::invalid_argument);
  EXPECT_THROW(run_two_ruling_set(gen_cycle(5, 1), {0.25, 0.5}, {}), std::invalid_argument);
}

}  // namespace
}  // namespace congest
