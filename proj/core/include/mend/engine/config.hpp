#pragma once

#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "mend/baseline/baseline.hpp"
#include "mend/validate/validate.hpp"

namespace mend::engine {

struct EngineConfig {
  std::int64_t run_budget = 500000;
  baseline::BaselineOptions baseline;
  validate::BatchCaps caps;
  validate::BatchCaps likely_caps{100, 500000};
  double likely_threshold = 0.7;
  double syntactic_weight = 0.25;
  double semantic_weight = 0.75;
  double validity_threshold = 0.25;
  unsigned threads = 0;
  std::set<std::string> exclusions;

  validate::BatchOptions batch_options() const;
};

// Unknown keys are rejected with std::invalid_argument. Example:
//   {"run_budget": 500000, "promotion_ratio": 4, "max_budget": 500000,
//    "min_budget": 20000, "budget_factor": 20, "max_repairs": 200,
//    "max_steps": 2000000, "likely_max_repairs": 100,
//    "likely_max_steps": 500000, "likely_threshold": 0.7,
//    "syntactic_weight": 0.25, "semantic_weight": 0.75,
//    "validity_threshold": 0.25, "threads": 0, "exclusions": ["test"]}
EngineConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EngineConfig& config);
EngineConfig load_config(const std::string& path);

}  // namespace mend::engine
