#include <gtest/gtest.h>

#include <cmath>

#include "congest/algorithms/registry.hpp"
#include "congest/verify.hpp"
#include "test_support.hpp"

namespace congest {
namespace {

RunOptions seeded(std::uint64_t seed) {
  RunOptions o;
  o.seed = seed;
  return o;
}

TEST(ThreeRulingSet, SparsifyFactor) {
  EXPECT_DOUBLE_EQ(three_rs_sparsify_factor(1), 2.0);
  EXPECT_DOUBLE_EQ(three_rs_sparsify_factor(std::size_t{1} << 27), 8.0);
}

TEST(ThreeRulingSet, IsolatedNodesAndStar) {
  const auto iso = run_three_ruling_set(gen_empty(5, 1), {}, seeded(1));
  EXPECT_EQ(iso.in_set, std::vector<bool>(5, true));
  const Graph star = gen_star(64, 2);
  for (std::uint64_t s = 0; s < 10; ++s) {
    EXPECT_TRUE(verify_ruling_set(star, run_three_ruling_set(star, {}, seeded(s)).in_set, 2, 3).valid);
  }
}

TEST(ThreeRulingSet, RandomGraph) {
  const Graph g = gen_gnp(4096, 0.01, 3);
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto out = run_three_ruling_set(g, {}, seeded(s));
    ASSERT_TRUE(out.stats.complete());
    EXPECT_TRUE(verify_ruling_set(g, out.in_set, 2, 3).valid);
  }
}

TEST(FiveRulingSet, SparsifyFactor) {
  EXPECT_DOUBLE_EQ(five_rs_sparsify_factor(1), 2.0);
  EXPECT_DOUBLE_EQ(five_rs_sparsify_factor(std::size_t{1} << 16), 16.0);
}

TEST(FiveRulingSet, CycleAndRandomGraph) {
  const Graph c = gen_cycle(64, 1);
  for (std::uint64_t s = 0; s < 10; ++s) {
    EXPECT_TRUE(verify_ruling_set(c, run_five_ruling_set(c, {}, seeded(s)).in_set, 2, 5).valid);
  }
  const Graph g = gen_gnp(4096, 0.02, 5);
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto out = run_five_ruling_set(g, {}, seeded(s));
    ASSERT_TRUE(out.stats.complete());
    EXPECT_TRUE(verify_ruling_set(g, out.in_set, 2, 5).valid);
  }
}

TEST(FastTwoRulingSet, Star) {
  const Graph star = gen_star(256, 4);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto out = run_fast_two_ruling_set(star, seeded(s));
    EXPECT_TRUE(verify_ruling_set(star, out.in_set, 2, 2).valid);
    // Every leaf has degree 1 < 16 and is active.
    EXPECT_GE(out.info.values.at("active"), 256);
  }
}

TEST(Registry, NamesAndBounds) {
  std::vector<std::string> names;
  for (const auto& a : algorithm_registry()) names.push_back(a.name);
  EXPECT_EQ(names, (std::vector<std::string>{"luby", "greedy-rs", "2rs-time", "sparsify", "3rs", "ghaffari-p1", "5rs",
                                             "2rs-msg", "2rs-fast"}));
  const auto& g = find_algorithm("greedy-rs");
  EXPECT_EQ(g.bounds(resolve_params(g, {{"beta", "3"}})), std::make_pair(2u, 3u));
  EXPECT_EQ(find_algorithm("5rs").bounds({}), std::make_pair(2u, 5u));
  EXPECT_THROW(find_algorithm("nope"), InvalidParameter);
  EXPECT_THROW(resolve_params(g, {{"gamma", "1"}}), InvalidParameter);
  EXPECT_THROW(g.run(gen_cycle(4, 1), resolve_params(g, {{"beta", "x"}}), {}), InvalidParameter);
  EXPECT_THROW(g.run(gen_cycle(4, 1), resolve_params(g, {{"beta", "1.5"}}), {}), InvalidParameter);
  const auto& m = find_algorithm("2rs-msg");
  EXPECT_THROW(m.run(gen_cycle(4, 1), resolve_params(m, {{"broadcast_check", "maybe"}}), {}), InvalidParameter);
}

TEST(Registry, EveryAlgorithmMeetsItsContractOnSmallGraphs) {
  const auto corpus = fixtures::small_corpus(8, 25, 12);
  for (const auto& a : algorithm_registry()) {
    const auto params = resolve_params(a, {});
    const auto [alpha, beta] = a.bounds(params);
    for (const Graph& g : corpus) {
      for (std::uint64_t s = 0; s < 3; ++s) {
        const auto out = a.run(g, params, seeded(s));
        ASSERT_TRUE(out.stats.complete()) << a.name;
        const auto r = verify_ruling_set(g, out.in_set, alpha, beta == kUnbounded ? kUnreachable - 1 : beta);
        if (beta == kUnbounded) {
          EXPECT_TRUE(r.alpha_violations.empty()) << a.name;
        } else {
          EXPECT_TRUE(r.valid) << a.name << " n=" << g.node_count() << " seed=" << s;
        }
      }
    }
  }
}

}  // namespace
}  // namespace congest
