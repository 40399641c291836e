#ifndef CONGEST_SERIALIZE_HPP
#define CONGEST_SERIALIZE_HPP

// JSON forms of the result types. Requires nlohmann/json.

#include <nlohmann/json.hpp>

#include "congest/algorithms/common.hpp"
#include "congest/engine.hpp"
#include "congest/lowerbound.hpp"
#include "congest/verify.hpp"

namespace congest {

inline constexpr int kStatsSchemaVersion = 1;

inline nlohmann::ordered_json stats_to_json(const SimStats& s, bool per_node = true) {
  nlohmann::ordered_json j;
  j["schema"] = kStatsSchemaVersion;
  j["rounds"] = s.rounds;
  j["messages_total"] = s.messages_total;
  j["messages_by_tag"] = nlohmann::ordered_json::object();
  for (const auto& [tag, count] : s.messages_by_tag) j["messages_by_tag"][tag] = count;
  j["messages_before_first_tag"] = nlohmann::ordered_json::object();
  for (const auto& [tag, count] : s.messages_before_first_tag) j["messages_before_first_tag"][tag] = count;
  if (per_node) {
    j["per_node"] = {{"sent", s.sent_per_node}, {"received", s.received_per_node}};
  }
  j["budget_violations"] = s.budget_violations;
  j["halted_all"] = s.halted_all;
  j["timed_out"] = s.timed_out;
  j["truncated"] = s.truncated;
  return j;
}

inline nlohmann::ordered_json report_to_json(const RulingSetReport& r) {
  nlohmann::ordered_json j;
  j["valid"] = r.valid;
  j["alpha_violations"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : r.alpha_violations) j["alpha_violations"].push_back({a, b});
  j["beta_violations"] = r.beta_violations;
  if (r.achieved_beta == kUnreachable) {
    j["achieved_beta"] = nullptr;
  } else {
    j["achieved_beta"] = r.achieved_beta;
  }
  return j;
}

inline nlohmann::ordered_json instrumentation_to_json(const Instrumentation& info) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : info.values) j[k] = v;
  for (const auto& [k, v] : info.series) j[k] = v;
  return j;
}

inline nlohmann::ordered_json bridge_result_to_json(const BridgeExperimentResult& r, bool with_trials) {
  nlohmann::ordered_json j;
  j["n"] = r.config.n;
  j["algo"] = r.config.algorithm;
  if (r.config.mu) {
    j["mu"] = *r.config.mu;
  } else {
    j["mu"] = nullptr;
  }
  j["trials"] = r.config.trials;
  j["seed"] = r.config.seed;
  j["graph"] = r.config.kind == FixtureKind::kBridge ? "bridge" : "disconnected_d";
  j["exchangeable_seeding"] = r.config.exchangeable_seeding;
  j["crossing_rate"] = r.crossing_rate;
  j["predicted_rate"] = r.predicted_rate;
  const char* keys[] = {"hist_LLp", "hist_LRp", "hist_RLp", "hist_RRp", "hist_invalid", "hist_incomplete"};
  for (std::size_t i = 0; i < kOutcomeCount; ++i) j[keys[i]] = r.histogram[i];
  if (with_trials) {
    auto& arr = j["per_trial"] = nlohmann::ordered_json::array();
    for (const auto& t : r.trials) {
      nlohmann::ordered_json row;
      row["graph_seed"] = t.graph_seed;
      row["run_seed"] = t.run_seed;
      row["crossed"] = t.crossed;
      if (t.messages_before_first_crossing) {
        row["messages_before_first_crossing"] = *t.messages_before_first_crossing;
      } else {
        row["messages_before_first_crossing"] = nullptr;
      }
      row["outcome"] = outcome_name(t.outcome);
      row["messages_total"] = t.messages_total;
      row["rounds"] = t.rounds;
      arr.push_back(std::move(row));
    }
  }
  return j;
}

}  // namespace congest

#endif  // CONGEST_SERIALIZE_HPP
