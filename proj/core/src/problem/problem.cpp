#include "mend/problem/problem.hpp"

namespace mend::problem {

using interp::OutcomeKind;
using interp::Reference;

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Exception: return "exception";
    case ProblemKind::Assertion: return "assertion";
    case ProblemKind::Variable: return "variable";
    case ProblemKind::Location: return "location";
  }
  return "?";
}

bool TargetSpec::accepts(const interp::Value& v, const interp::Heap& heap,
                         const interp::DeepValue& original) const {
  switch (kind) {
    case TargetKind::Exact: return interp::deep_equal(v, heap, value);
    case TargetKind::NonNil: return !std::holds_alternative<interp::Nil>(v);
    case TargetKind::GreaterThan: {
      const auto* i = std::get_if<std::int64_t>(&v);
      return i && *i > bound;
    }
    case TargetKind::Unknown: return !interp::deep_equal(v, heap, original);
  }
  return false;
}

bool TargetSpec::accepts(const interp::DeepValue& v, const interp::DeepValue& original) const {
  switch (kind) {
    case TargetKind::Exact: return v == value;
    case TargetKind::NonNil: return !v.is_nil();
    case TargetKind::GreaterThan: return v.is_int() && v.as_int() > bound;
    case TargetKind::Unknown: return !(v == original);
  }
  return false;
}

namespace {

ProblemSpec stopped(const interp::ExecutionTrace& trace) {
  if (trace.steps.empty()) throw NoProblem("the run executed no steps");
  if (trace.outcome.kind == OutcomeKind::ReturnedNormally) throw NoProblem("the run returned normally");
  ProblemSpec spec;
  spec.stop_time = trace.last_time();
  const auto& step = trace.at(spec.stop_time);
  spec.stop_line = step.line;
  spec.stop_frame = step.frame;
  spec.stop_function = trace.frame(step.frame).function;
  spec.stop_stmt = step.stmt;
  return spec;
}

}  // namespace

ProblemSpec infer_default(const interp::ExecutionTrace& trace) {
  ProblemSpec spec = stopped(trace);
  if (trace.outcome.kind == OutcomeKind::Raised && trace.outcome.error) {
    spec.error = trace.outcome.error;
    spec.kind = trace.outcome.error->kind == interp::ErrorKind::AssertFailed ? ProblemKind::Assertion
                                                                             : ProblemKind::Exception;
  } else {
    spec.kind = ProblemKind::Location;
  }
  return spec;
}

ProblemSpec make_location_problem(const interp::ExecutionTrace& trace) {
  ProblemSpec spec = stopped(trace);
  spec.kind = ProblemKind::Location;
  return spec;
}

ProblemSpec make_variable_problem(const interp::ExecutionTrace& trace, const std::string& name,
                                  TargetSpec target) {
  ProblemSpec spec = stopped(trace);
  interp::Replayer replay(trace);
  replay.advance_to(static_cast<interp::Time>(trace.size()));
  const interp::Value* v = replay.local(spec.stop_frame, name);
  if (!v) throw InvalidProblem("variable '" + name + "' is not live in " + spec.stop_function);
  spec.kind = ProblemKind::Variable;
  spec.variable = name;
  spec.current = interp::materialize(*v, replay.heap());
  spec.target = std::move(target);
  return spec;
}

faultloc::Context initial_context(const ProblemSpec& spec, const interp::ExecutionTrace& trace) {
  faultloc::Context ctx;
  ctx.merge(Reference::cond(), faultloc::kMaxPriority);
  // A problem that names a reference seeds it; one that names none (Location)
  // seeds Cond alone. The inverse orientation, adding a reference only when
  // the problem names none, would drop the variable of a Variable problem.
  switch (spec.kind) {
    case ProblemKind::Variable:
      ctx.merge(Reference::local(spec.stop_frame, spec.variable), faultloc::kMaxPriority);
      break;
    case ProblemKind::Exception:
    case ProblemKind::Assertion:
      if (spec.error) {
        for (auto node : spec.error->operands) {
          ctx.merge(Reference::stack(spec.stop_frame, node), faultloc::kMaxPriority);
        }
        // A structural comparison reads every element of the arrays involved.
        if (spec.stop_time >= 0 && spec.stop_time < static_cast<interp::Time>(trace.size())) {
          for (const auto& d : trace.at(spec.stop_time).flow) {
            if (d.dst != Reference::stack(spec.stop_frame, spec.error->node)) continue;
            for (const auto& src : d.sources) {
              if (src.ref.kind == interp::RefKind::ArrayElem && src.ref.index == interp::kAnyIndex) {
                ctx.merge(src.ref, faultloc::kMaxPriority);
              }
            }
          }
        }
      }
      break;
    case ProblemKind::Location: break;
  }
  return ctx;
}

}  // namespace mend::problem
