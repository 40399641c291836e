#include <gtest/gtest.h>

#include "congest/algorithms/luby.hpp"
#include "congest/serialize.hpp"

namespace congest {
namespace {

TEST(Serialize, StatsFields) {
  RunOptions o;
  o.seed = 2;
  const auto out = run_luby(gen_bridge_graph(16, 7), o);
  const auto j = stats_to_json(out.stats);
  EXPECT_EQ(j["schema"], kStatsSchemaVersion);
  EXPECT_EQ(j["rounds"], out.stats.rounds);
  EXPECT_EQ(j["messages_total"], out.stats.messages_total);
  EXPECT_EQ(j["per_node"]["sent"].size(), 16u);
  EXPECT_TRUE(j["halted_all"].get<bool>());
  EXPECT_FALSE(stats_to_json(out.stats, false).contains("per_node"));
  if (out.stats.messages_by_tag.count("bridge")) {
    EXPECT_EQ(j["messages_by_tag"]["bridge"], out.stats.messages_by_tag.at("bridge"));
  }
}

TEST(Serialize, ReportUsesNullForUnreachable) {
  RulingSetReport r;
  r.valid = false;
  r.alpha_violations = {{1, 2}};
  r.beta_violations = {4};
  r.achieved_beta = kUnreachable;
  const auto j = report_to_json(r);
  EXPECT_EQ(j.dump(), R"({"valid":false,"alpha_violations":[[1,2]],"beta_violations":[4],"achieved_beta":null})");
}

TEST(Serialize, Instrumentation) {
  Instrumentation info;
  info.values["a"] = 1.5;
  info.series["b"] = {1, 2};
  EXPECT_EQ(instrumentation_to_json(info).dump(), R"({"a":1.5,"b":[1.0,2.0]})");
  EXPECT_EQ(instrumentation_to_json({}).dump(), "{}");
}

TEST(Serialize, BridgeResult) {
  BridgeExperimentConfig c;
  c.n = 32;
  c.trials = 3;
  c.mu = 100;
  const auto r = bridge_experiment(c);
  const auto j = bridge_result_to_json(r, true);
  EXPECT_EQ(j["n"], 32);
  EXPECT_EQ(j["mu"], 100);
  EXPECT_EQ(j["graph"], "bridge");
  EXPECT_EQ(j["per_trial"].size(), 3u);
  std::size_t total = 0;
  for (const char* k : {"hist_LLp", "hist_LRp", "hist_RLp", "hist_RRp", "hist_invalid", "hist_incomplete"}) {
    total += j[k].get<std::size_t>();
  }
  EXPECT_EQ(total, 3u);
  EXPECT_FALSE(bridge_result_to_json(r, false).contains("per_trial"));
}

}  // namespace
}  // namespace congest
