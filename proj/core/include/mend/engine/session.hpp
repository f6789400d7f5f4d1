#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mend/baseline/baseline.hpp"
#include "mend/engine/config.hpp"
#include "mend/faultloc/localize.hpp"
#include "mend/interp/interpreter.hpp"
#include "mend/problem/problem.hpp"
#include "mend/suggest/suggest.hpp"
#include "mend/validate/validate.hpp"

namespace mend::engine {

enum class SessionState { Idle, Stopped, Suggesting, Done };
std::string_view to_string(SessionState state);

class NoCandidates : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NoValidRepairs : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class BadRank : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};
class BadState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RunRequest {
  std::string source;
  std::string entry = "main";
  std::vector<interp::DeepValue> args;
  std::optional<interp::Breakpoint> breakpoint;
  std::optional<std::int64_t> budget;
};
RunRequest run_request_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunRequest& r);

struct RankedRepair {
  suggest::Repair repair;
  validate::ValidationResult validation;
  double combined_score = 0;
  // 1-based.
  int rank = 0;
  // Position in syntactic priority order; breaks ties between equal scores.
  std::size_t order = 0;
  // Validation steps spent on this and every earlier repair.
  std::int64_t steps_through = 0;
};

struct SuggestSummary {
  std::size_t candidates = 0;
  std::size_t generated = 0;
  std::size_t validated = 0;
  std::size_t accepted = 0;
  // Interpreter steps spent validating.
  std::int64_t steps = 0;
  // Steps spent re-executing the baseline.
  std::int64_t baseline_steps = 0;
  bool likely = false;
  bool cancelled = false;
  baseline::BaselinePlan plan;
};

struct ApplyResult {
  std::string source;
  std::string diff;
  // Re-run from the baseline snapshot.
  interp::OutcomeKind outcome = interp::OutcomeKind::ReturnedNormally;
  std::string detail;
  std::int64_t steps = 0;
  // State after re-running the whole request on the new source.
  SessionState state = SessionState::Idle;
};

class Session {
 public:
  // Throws lang::ParseError and interp::EntryError.
  static Session start(RunRequest request, EngineConfig config = {});

  SessionState state() const { return state_; }
  const RunRequest& request() const { return request_; }
  const lang::Ast& ast() const { return ast_; }
  const interp::ExecutionTrace& trace() const { return trace_; }
  // Throws BadState when Idle.
  const problem::ProblemSpec& problem() const;
  const EngineConfig& config() const { return config_; }
  void set_problem(problem::ProblemSpec spec);
  void set_problem_json(const nlohmann::json& j);
  // Re-execute from this frame of the original run instead of the selected
  // one.
  void set_start_frame(std::optional<interp::FrameId> frame) { start_override_ = frame; }

  // Localize, generate and validate. `on_repair` sees each accepted repair as
  // it is validated, with its rank at that moment. Throws problem::NoProblem
  // when Idle, NoCandidates, NoValidRepairs. Re-executing the baseline counts
  // against the step caps.
  SuggestSummary suggest(const std::function<void(const RankedRepair&)>& on_repair = {},
                         const std::atomic<bool>* cancel = nullptr);

  const std::vector<RankedRepair>& repairs() const { return repairs_; }
  const std::vector<faultloc::CandidateLocation>& candidates() const { return candidates_; }
  const std::optional<baseline::Baseline>& baseline() const { return baseline_; }
  // Summary of the last suggest call, kept when it threw NoValidRepairs.
  const std::optional<SuggestSummary>& last_summary() const { return last_summary_; }

  // Throws BadRank.
  const RankedRepair& at_rank(int rank) const;
  std::string preview(int rank) const;
  // Replaces the program with the repaired one and re-runs it.
  ApplyResult apply(int rank);

  const suggest::Registry& registry() const { return *registry_; }
  void set_registry(std::shared_ptr<const suggest::Registry> registry) { registry_ = std::move(registry); }

 private:
  Session() = default;
  void execute();

  RunRequest request_;
  EngineConfig config_;
  lang::Ast ast_;
  interp::ExecutionTrace trace_;
  std::optional<problem::ProblemSpec> spec_;
  SessionState state_ = SessionState::Idle;
  std::optional<interp::FrameId> start_override_;
  std::vector<faultloc::CandidateLocation> candidates_;
  std::optional<baseline::Baseline> baseline_;
  std::vector<RankedRepair> repairs_;
  std::optional<SuggestSummary> last_summary_;
  std::shared_ptr<const suggest::Registry> registry_;
};

nlohmann::json to_json(const RankedRepair& r);
nlohmann::json to_json(const SuggestSummary& s);
nlohmann::json to_json(const baseline::BaselinePlan& plan);
nlohmann::json to_json(const ApplyResult& r);
nlohmann::json outcome_json(const interp::ExecutionTrace& trace);

}  // namespace mend::engine
