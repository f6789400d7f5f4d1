#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mend/corpus/corpus.hpp"
#include "mend/engine/config.hpp"

namespace mend::engine {

struct BenchRow {
  std::string name;
  bool repaired = false;
  // 0 when no correct repair was reported.
  int correct_rank = 0;
  // Interpreter steps (or milliseconds with wall timings) for the whole
  // session and until the correct repair was reported.
  double total_time = 0;
  double fix_time = 0;
  std::size_t repairs_validated = 0;
  std::int64_t steps_executed = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  bool wall_timings = false;
};

// Step counts are deterministic; wall timings are not.
BenchReport bench(const std::vector<corpus::BugCase>& cases, const EngineConfig& config, bool wall_timings = false);
nlohmann::json to_json(const BenchReport& report);

}  // namespace mend::engine
