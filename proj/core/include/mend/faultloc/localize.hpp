#pragma once

#include <set>
#include <string>
#include <vector>

#include "mend/faultloc/context.hpp"
#include "mend/interp/trace.hpp"
#include "mend/lang/ast.hpp"

namespace mend::faultloc {

struct CandidateLocation {
  int line = 0;
  std::string function;
  int priority = 0;
  // Statements on this line that were reached, ascending.
  std::vector<lang::NodeId> node_ids;
  // Latest and earliest contributing executions of the line.
  interp::Time latest_time = interp::kNoTime;
  interp::Time earliest_time = interp::kNoTime;
  // stop_time - latest_time.
  interp::Time distance = 0;

  friend bool operator==(const CandidateLocation&, const CandidateLocation&) = default;
};

struct LocalizeOptions {
  // Functions whose lines are never reported (test drivers); flow still
  // passes through them.
  std::set<std::string> exclusions;
  // With decay off every reached reference keeps the priority it started
  // with, which yields the full dynamic slice.
  bool decay = true;
};

std::vector<CandidateLocation> localize(const interp::ExecutionTrace& trace, const Context& ctx0,
                                        interp::Time stop_time, const LocalizeOptions& options = {});

// Executed expression statements whose value is thrown away (`n == n / 2;`,
// `abs(x);`). They write nothing, so no slice reaches them. Each is reported
// one below the best candidate of its function, and only for functions that
// already have a candidate.
std::vector<CandidateLocation> discarded_results(const lang::Program& program, const interp::ExecutionTrace& trace,
                                                 interp::Time stop_time,
                                                 const std::vector<CandidateLocation>& candidates,
                                                 const LocalizeOptions& options = {});

// One entry per (function, line) with the maximum priority; ordered by
// priority descending, then distance ascending, then function and line.
std::vector<CandidateLocation> dedupe_and_rank(std::vector<CandidateLocation> candidates);

}  // namespace mend::faultloc
