#include "mend/engine/bench.hpp"

#include <algorithm>
#include <chrono>

#include "mend/engine/session.hpp"

namespace mend::engine {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

BenchRow bench_case(const corpus::BugCase& c, const EngineConfig& config, bool wall) {
  BenchRow row;
  row.name = c.name;
  const auto start = Clock::now();
  const auto accepted = corpus::accepted_texts(c);
  RunRequest req;
  req.source = c.source;
  req.entry = c.entry;
  req.args = c.args;
  req.breakpoint = c.breakpoint;
  std::int64_t prefix = 0;
  double fix_wall = 0;
  try {
    Session s = Session::start(req, config);
    prefix = static_cast<std::int64_t>(s.trace().size());
    if (!c.problem.is_null()) s.set_problem_json(c.problem);
    try {
      s.suggest([&](const RankedRepair& r) {
        if (fix_wall == 0 && std::find(accepted.begin(), accepted.end(), r.repair.result_text) != accepted.end()) {
          fix_wall = ms_since(start);
        }
      });
    } catch (const NoValidRepairs&) {
    }
    if (s.baseline()) prefix += static_cast<std::int64_t>(s.baseline()->trace.size());
    if (const auto& summary = s.last_summary()) {
      row.repairs_validated = summary->validated;
      row.steps_executed = summary->steps;
    }
    for (const auto& r : s.repairs()) {
      if (std::find(accepted.begin(), accepted.end(), r.repair.result_text) == accepted.end()) continue;
      row.repaired = true;
      row.correct_rank = r.rank;
      row.fix_time = wall ? fix_wall : static_cast<double>(prefix + r.steps_through);
      break;
    }
  } catch (const std::exception&) {
  }
  row.total_time = wall ? ms_since(start) : static_cast<double>(prefix + row.steps_executed);
  return row;
}

}  // namespace

BenchReport bench(const std::vector<corpus::BugCase>& cases, const EngineConfig& config, bool wall_timings) {
  BenchReport report;
  report.wall_timings = wall_timings;
  for (const auto& c : cases) report.rows.push_back(bench_case(c, config, wall_timings));
  return report;
}

nlohmann::json to_json(const BenchReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  int repaired = 0;
  int rank1 = 0;
  int top5 = 0;
  for (const auto& r : report.rows) {
    rows.push_back({{"name", r.name},
                    {"repaired", r.repaired},
                    {"correct_rank", r.correct_rank ? nlohmann::json(r.correct_rank) : nlohmann::json(nullptr)},
                    {"total_time", r.total_time},
                    {"fix_time", r.repaired ? nlohmann::json(r.fix_time) : nlohmann::json(nullptr)},
                    {"repairs_validated", r.repairs_validated},
                    {"steps_executed", r.steps_executed}});
    if (r.repaired) {
      ++repaired;
      if (r.correct_rank == 1) ++rank1;
      if (r.correct_rank <= 5) ++top5;
    }
  }
  return {{"time_unit", report.wall_timings ? "ms" : "steps"},
          {"rows", rows},
          {"summary", {{"cases", report.rows.size()}, {"repaired", repaired}, {"rank1", rank1}, {"top5", top5}}}};
}

}  // namespace mend::engine
