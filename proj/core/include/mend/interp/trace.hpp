#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mend/interp/value.hpp"
#include "mend/lang/ast.hpp"

namespace mend::interp {

using Time = std::int64_t;
inline constexpr Time kNoTime = -1;
using FrameId = std::int32_t;
inline constexpr FrameId kNoFrame = -1;

// A storage location whose value can matter to a symptom.
//   Local(frame, name)       a variable in one activation
//   ArrayElem(array, index)  one element; index kAnyIndex means every element
//   Stack(frame, node)       the value of one expression evaluation
//   Cond                     whether control reached the point of interest
enum class RefKind : std::uint8_t { Local, ArrayElem, Stack, Cond };

inline constexpr std::int64_t kAnyIndex = -1;

struct Reference {
  RefKind kind = RefKind::Cond;
  FrameId frame = kNoFrame;
  std::int64_t array = -1;
  std::int64_t index = 0;
  lang::NodeId node = lang::kNoNode;
  std::string name;

  static Reference local(FrameId frame, std::string name) {
    Reference r;
    r.kind = RefKind::Local;
    r.frame = frame;
    r.name = std::move(name);
    return r;
  }
  static Reference element(std::int64_t array, std::int64_t index) {
    Reference r;
    r.kind = RefKind::ArrayElem;
    r.array = array;
    r.index = index;
    return r;
  }
  static Reference stack(FrameId frame, lang::NodeId node) {
    Reference r;
    r.kind = RefKind::Stack;
    r.frame = frame;
    r.node = node;
    return r;
  }
  static Reference cond() { return Reference{}; }

  friend bool operator==(const Reference&, const Reference&) = default;
  friend auto operator<=>(const Reference&, const Reference&) = default;
};

struct ReferenceHash {
  std::size_t operator()(const Reference& r) const noexcept;
};

std::string to_string(const Reference& r);

enum class ErrorKind { DivByZero, IndexOutOfBounds, NilAccess, AssertFailed, TypeError };
std::string_view to_string(ErrorKind kind);
std::optional<ErrorKind> error_kind_from_string(std::string_view s);

struct RuntimeError {
  ErrorKind kind = ErrorKind::TypeError;
  // The exact failing subexpression.
  lang::NodeId node = lang::kNoNode;
  int line = 0;
  std::string message;
  // Operand evaluations whose values decide the failure; they seed fault
  // localization.
  std::vector<lang::NodeId> operands;
  // Offending index and array length for IndexOutOfBounds.
  std::int64_t index = 0;
  std::int64_t length = 0;

  friend bool operator==(const RuntimeError&, const RuntimeError&) = default;
};

enum class StepKind { Stmt, Branch, Call, Return, Raise, Break };
std::string_view to_string(StepKind kind);

struct Write {
  Reference ref;
  Value old_value;
  Value new_value;
  // The local did not exist before this write.
  bool created = false;
};

struct Alloc {
  std::int64_t array = -1;
  std::vector<Value> elements;
};

struct FlowSource {
  Reference ref;
  // Computations between source and destination: 0 for loads, stores and
  // argument passing, 1 for an operator application.
  int cost = 0;
};

// `dst` received a value computed from `sources`. Recorded in evaluation
// order, so a destination always appears after the definitions it reads
// within the same step.
struct FlowDef {
  Reference dst;
  std::vector<FlowSource> sources;
};

struct TraceStep {
  Time time = 0;
  int line = 0;
  FrameId frame = kNoFrame;
  // Statement being executed; for an implicit return at the end of a
  // function this is the function's id.
  lang::NodeId stmt = lang::kNoNode;
  StepKind kind = StepKind::Stmt;
  // Branch: the outcome and the condition expression.
  bool taken = false;
  lang::NodeId cond_node = lang::kNoNode;
  // Call: callee, the new frame, the call expression and argument values.
  std::string callee;
  FrameId callee_frame = kNoFrame;
  lang::NodeId call_node = lang::kNoNode;
  std::vector<Value> args;
  // Return: the returned value.
  Value value;
  std::optional<RuntimeError> error;
  std::vector<Write> writes;
  std::vector<Alloc> allocs;
  // Sources read by this step that were defined before it.
  std::vector<Reference> reads;
  // Present only when the run recorded data flow.
  std::vector<FlowDef> flow;
  // Governing branch or call step, kNoTime at the top of the entry frame.
  Time control_parent = kNoTime;

  // A step that marks one arrival at its statement.
  bool is_arrival() const { return kind != StepKind::Call; }
};

struct FrameInfo {
  FrameId id = kNoFrame;
  std::string function;
  FrameId parent = kNoFrame;
  Time call_time = kNoTime;
  Time return_time = kNoTime;
  // Number of earlier calls from `parent` to the same function.
  int ordinal = 0;
};

struct Snapshot {
  std::string function;
  std::vector<std::string> params;
  std::vector<Value> args;
  Heap heap;
};

enum class OutcomeKind { ReturnedNormally, Raised, BudgetExceeded, StoppedAtBreak, Cancelled };
std::string_view to_string(OutcomeKind kind);

struct Outcome {
  OutcomeKind kind = OutcomeKind::ReturnedNormally;
  Value value;
  std::optional<RuntimeError> error;
  // Time of the final step, kNoTime for an empty trace.
  Time time = kNoTime;
};

struct ExecutionTrace {
  std::vector<TraceStep> steps;
  Outcome outcome;
  Snapshot entry_snapshot;
  std::vector<FrameInfo> frames;
  std::vector<std::string> output;
  // Heap contents when the run stopped.
  Heap final_heap;
  bool has_flow = false;

  std::size_t size() const { return steps.size(); }
  Time last_time() const { return static_cast<Time>(steps.size()) - 1; }
  const TraceStep& at(Time t) const { return steps.at(static_cast<std::size_t>(t)); }
  const FrameInfo& frame(FrameId f) const { return frames.at(static_cast<std::size_t>(f)); }
  std::size_t write_count() const;
  // Frames active at `t` (entered at or before t and not yet returned
  // before t), outermost first.
  std::vector<FrameId> stack_at(Time t) const;
};

// Values of every live local and every element of every allocated array just
// before step `time` executes. `time` may equal size() for the final state.
// Throws std::out_of_range otherwise.
using State = std::map<Reference, Value>;
State state_at(const ExecutionTrace& trace, Time time);

// Heap contents just before step `time`.
Heap heap_at(const ExecutionTrace& trace, Time time);

// Incremental forward replay: the basis of state_at, exposed so consumers can
// sample many instants in one pass.
class Replayer {
 public:
  explicit Replayer(const ExecutionTrace& trace);

  // State just before step `time()`.
  Time time() const { return next_; }
  void advance();  // apply step time()
  void advance_to(Time t);
  const Heap& heap() const { return heap_; }
  const std::map<std::pair<FrameId, std::string>, Value>& locals() const { return locals_; }
  const Value* local(FrameId frame, const std::string& name) const;
  State state() const;

 private:
  const ExecutionTrace& trace_;
  Time next_ = 0;
  Heap heap_;
  std::map<std::pair<FrameId, std::string>, Value> locals_;
};

std::optional<lang::NodeId> failing_subexpression(const ExecutionTrace& trace);

// Line-delimited JSON, one record per step, for debugging.
std::string export_trace(const ExecutionTrace& trace);

}  // namespace mend::interp
