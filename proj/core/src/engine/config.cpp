#include "mend/engine/config.hpp"

#include <fstream>
#include <stdexcept>

namespace mend::engine {

validate::BatchOptions EngineConfig::batch_options() const {
  validate::BatchOptions o;
  o.caps = caps;
  o.likely_caps = likely_caps;
  o.likely_threshold = likely_threshold;
  o.threads = threads;
  return o;
}

EngineConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  EngineConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "run_budget") c.run_budget = v.get<std::int64_t>();
    else if (key == "promotion_ratio") c.baseline.promotion_ratio = v.get<double>();
    else if (key == "max_budget") c.baseline.max_budget = v.get<std::int64_t>();
    else if (key == "min_budget") c.baseline.min_budget = v.get<std::int64_t>();
    else if (key == "budget_factor") c.baseline.budget_factor = v.get<std::int64_t>();
    else if (key == "max_repairs") c.caps.max_repairs = v.get<std::size_t>();
    else if (key == "max_steps") c.caps.max_steps = v.get<std::int64_t>();
    else if (key == "likely_max_repairs") c.likely_caps.max_repairs = v.get<std::size_t>();
    else if (key == "likely_max_steps") c.likely_caps.max_steps = v.get<std::int64_t>();
    else if (key == "likely_threshold") c.likely_threshold = v.get<double>();
    else if (key == "syntactic_weight") c.syntactic_weight = v.get<double>();
    else if (key == "semantic_weight") c.semantic_weight = v.get<double>();
    else if (key == "validity_threshold") c.validity_threshold = v.get<double>();
    else if (key == "threads") c.threads = v.get<unsigned>();
    else if (key == "exclusions") c.exclusions = v.get<std::set<std::string>>();
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
  if (c.run_budget < 1 || c.baseline.max_budget < 1) throw std::invalid_argument("budgets must be positive");
  return c;
}

nlohmann::json to_json(const EngineConfig& c) {
  return {
      {"run_budget", c.run_budget},
      {"promotion_ratio", c.baseline.promotion_ratio},
      {"max_budget", c.baseline.max_budget},
      {"min_budget", c.baseline.min_budget},
      {"budget_factor", c.baseline.budget_factor},
      {"max_repairs", c.caps.max_repairs},
      {"max_steps", c.caps.max_steps},
      {"likely_max_repairs", c.likely_caps.max_repairs},
      {"likely_max_steps", c.likely_caps.max_steps},
      {"likely_threshold", c.likely_threshold},
      {"syntactic_weight", c.syntactic_weight},
      {"semantic_weight", c.semantic_weight},
      {"validity_threshold", c.validity_threshold},
      {"threads", c.threads},
      {"exclusions", c.exclusions},
  };
}

EngineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  return config_from_json(nlohmann::json::parse(in));
}

}  // namespace mend::engine
