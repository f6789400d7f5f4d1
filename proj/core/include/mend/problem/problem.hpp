#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "mend/faultloc/context.hpp"
#include "mend/interp/trace.hpp"

namespace mend::problem {

enum class ProblemKind { Exception, Assertion, Variable, Location };
std::string_view to_string(ProblemKind kind);

enum class TargetKind { Exact, NonNil, GreaterThan, Unknown };

// What a variable should have held instead.
struct TargetSpec {
  TargetKind kind = TargetKind::Unknown;
  interp::DeepValue value;  // Exact
  std::int64_t bound = 0;   // GreaterThan

  static TargetSpec exact(interp::DeepValue v) { return {TargetKind::Exact, std::move(v), 0}; }
  static TargetSpec non_nil() { return {TargetKind::NonNil, {}, 0}; }
  static TargetSpec greater_than(std::int64_t k) { return {TargetKind::GreaterThan, {}, k}; }
  static TargetSpec unknown() { return {}; }

  bool given() const { return kind != TargetKind::Unknown; }
  // Unknown accepts anything that differs from `original`.
  bool accepts(const interp::Value& v, const interp::Heap& heap, const interp::DeepValue& original) const;
  bool accepts(const interp::DeepValue& v, const interp::DeepValue& original) const;
};

struct ProblemSpec {
  ProblemKind kind = ProblemKind::Location;
  interp::Time stop_time = interp::kNoTime;
  int stop_line = 0;
  interp::FrameId stop_frame = interp::kNoFrame;
  std::string stop_function;
  lang::NodeId stop_stmt = lang::kNoNode;

  // Exception and Assertion.
  std::optional<interp::RuntimeError> error;

  // Variable.
  std::string variable;
  interp::DeepValue current;
  TargetSpec target;
};

class NoProblem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidProblem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised(AssertFailed) -> Assertion, other Raised -> Exception, any other
// stop -> Location. Throws NoProblem for a normal return.
ProblemSpec infer_default(const interp::ExecutionTrace& trace);

// The variable must be live in the stopped frame; throws InvalidProblem.
ProblemSpec make_variable_problem(const interp::ExecutionTrace& trace, const std::string& name,
                                  TargetSpec target = {});
ProblemSpec make_location_problem(const interp::ExecutionTrace& trace);

faultloc::Context initial_context(const ProblemSpec& spec, const interp::ExecutionTrace& trace);

// JSON protocol:
//   {"kind": "exception" | "assertion" | "location"}
//   {"kind": "variable", "name": "x",
//    "target": {"kind": "exact", "value": V} | {"kind": "nonnil"}
//            | {"kind": "greater_than", "value": K} | {"kind": "unknown"}}
// Stop information always comes from the trace.
ProblemSpec problem_from_json(const nlohmann::json& j, const interp::ExecutionTrace& trace);
nlohmann::json to_json(const ProblemSpec& spec);
nlohmann::json to_json(const TargetSpec& target);
TargetSpec target_from_json(const nlohmann::json& j);

}  // namespace mend::problem
