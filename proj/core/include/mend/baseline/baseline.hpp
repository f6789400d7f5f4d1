#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mend/faultloc/localize.hpp"
#include "mend/interp/interpreter.hpp"
#include "mend/interp/trace.hpp"
#include "mend/lang/ast.hpp"
#include "mend/problem/problem.hpp"

namespace mend::baseline {

struct BaselineOptions {
  // Promote to the entry frame when its extent is within this factor of the
  // covering frame's extent.
  double promotion_ratio = 4.0;
  std::int64_t max_budget = 500000;
  std::int64_t min_budget = 20000;
  std::int64_t budget_factor = 20;
};

struct BaselinePlan {
  // Frame of the original trace the re-execution starts from.
  interp::FrameId start_frame = 0;
  std::string function;
  // (callee, ordinal) pairs from the entry frame down to the start frame.
  std::vector<std::pair<std::string, int>> call_path;
  interp::Snapshot snapshot;
  // First original step belonging to the start frame's extent.
  interp::Time offset = 0;
  // Steps from the start of the frame to the stop point, inclusive.
  std::int64_t extent = 0;
  // Per-validation step budget.
  std::int64_t budget = 0;
  // Problem point within the baseline trace.
  interp::Time problem_time = 0;
  // Original breakpoint, with its hit count rebased to the start frame.
  std::optional<interp::Breakpoint> breakpoint;
  bool promoted = false;
};

class NoCoveringFrame : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MatchFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// `breakpoint` is the one the original run stopped under, if any.
BaselinePlan select_start(const lang::Ast& ast, const interp::ExecutionTrace& trace,
                          const problem::ProblemSpec& spec,
                          const std::vector<faultloc::CandidateLocation>& candidates,
                          const std::optional<interp::Breakpoint>& breakpoint,
                          const BaselineOptions& options = {});

// Plan for an explicit frame on the stop stack (user override). Throws
// NoCoveringFrame if `frame` is not active at the stop point.
BaselinePlan plan_for_frame(const lang::Ast& ast, const interp::ExecutionTrace& trace,
                            const problem::ProblemSpec& spec, interp::FrameId frame,
                            const std::optional<interp::Breakpoint>& breakpoint,
                            const BaselineOptions& options = {});

struct Baseline {
  BaselinePlan plan;
  interp::ExecutionTrace trace;
  // The problem re-expressed in baseline times and frames.
  problem::ProblemSpec spec;
};

// Re-executes from the plan's snapshot and checks that the result is the
// original's suffix. Throws MatchFailure otherwise.
Baseline rebase(const lang::Ast& ast, const interp::ExecutionTrace& trace,
                const problem::ProblemSpec& spec, const BaselinePlan& plan);

// Arrivals at `line` (as a breakpoint counts them) strictly before `time`,
// including statements still in progress at `time`.
int arrivals_before(const lang::Ast& ast, const interp::ExecutionTrace& trace, int line,
                    interp::Time time);

}  // namespace mend::baseline
