#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mend/baseline/baseline.hpp"
#include "mend/interp/trace.hpp"
#include "mend/lang/edit.hpp"
#include "mend/problem/problem.hpp"
#include "mend/suggest/suggest.hpp"

namespace mend::validate {

struct MatchResult {
  // First baseline times where control flow / data values differ.
  std::optional<interp::Time> control_div_time;
  std::optional<interp::Time> data_div_time;
  bool problem_call_matched = false;
  bool problem_point_matched = false;
  // Repaired time of the matched problem point.
  std::optional<interp::Time> rep_problem_time;
  // Variable problems: the variable in the aligned frame at the matched point.
  std::optional<interp::DeepValue> repaired_value_at_match;
  interp::OutcomeKind rep_outcome = interp::OutcomeKind::ReturnedNormally;
  std::optional<interp::RuntimeError> rep_error;
  interp::Time rep_error_time = interp::kNoTime;
  // Variable problems: values the variable took in the repaired run, in order.
  std::vector<interp::DeepValue> variable_history;

  bool execution_changed() const { return control_div_time || data_div_time; }
};

// (repaired id, baseline id) pairs for statements that replace a baseline one.
using Aliases = std::vector<std::pair<lang::NodeId, lang::NodeId>>;

// `spec` is expressed in baseline times and frames.
MatchResult compute_match(const interp::ExecutionTrace& base, const interp::ExecutionTrace& rep,
                          const problem::ProblemSpec& spec, const Aliases& aliases = {});

struct ValidationResult {
  double score = 0;
  // Kind-dispatched score before blending and adjustment.
  double kind_score = 0;
  double closeness = 0;
  MatchResult match;
  std::int64_t cost = 0;
  bool applied = true;
};

// `rep` may be null when the edit failed to apply.
ValidationResult validate(const interp::ExecutionTrace& base, const interp::ExecutionTrace* rep,
                          const problem::ProblemSpec& spec, const MatchResult& match);

struct KindScore {
  double score = 0;
  // The repaired run's error was looked at in reaching the score.
  bool examined_error = false;
};
KindScore kind_score(const problem::ProblemSpec& spec, const MatchResult& match);

// Applies the repair, runs it from the baseline snapshot and scores it.
struct RunLimits {
  const std::atomic<bool>* cancel = nullptr;
  std::atomic<std::int64_t>* step_counter = nullptr;
  std::int64_t step_limit = std::numeric_limits<std::int64_t>::max();
};
ValidationResult validate_repair(const lang::Ast& ast, const suggest::Repair& repair,
                                 const baseline::Baseline& base, const RunLimits& limits = {});

struct BatchCaps {
  std::size_t max_repairs = 200;
  std::int64_t max_steps = 2000000;
};

struct BatchOptions {
  BatchCaps caps;
  BatchCaps likely_caps{100, 500000};
  double likely_threshold = 0.7;
  unsigned threads = 0;  // 0: hardware concurrency
  const std::atomic<bool>* cancel = nullptr;
};

struct BatchStats {
  std::size_t validated = 0;
  std::int64_t steps = 0;
  bool likely = false;
  bool cancelled = false;
};

// Validates `repairs` in order, concurrently, stopping at the caps. A repair
// is validated only if the sequential reading (caps checked against the
// results of every earlier repair) would validate it, so the outcome does not
// depend on scheduling. `emit` is called in repair order from one thread at
// a time.
BatchStats validate_batch(const lang::Ast& ast, const std::vector<suggest::Repair>& repairs,
                          const baseline::Baseline& base, const BatchOptions& options,
                          const std::function<void(std::size_t, const ValidationResult&)>& emit);

}  // namespace mend::validate
