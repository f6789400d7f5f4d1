#include <algorithm>

#include "mend/validate/validate.hpp"

namespace mend::validate {

using interp::OutcomeKind;
using problem::ProblemKind;

namespace {

bool same_exception(const interp::RuntimeError& a, const interp::RuntimeError& b) {
  return a.kind == b.kind && a.line == b.line;
}

KindScore exception_score(const problem::ProblemSpec& spec, const MatchResult& m) {
  const bool raised = m.rep_outcome == OutcomeKind::Raised;
  if (m.problem_call_matched) {
    if (!raised) return {m.problem_point_matched ? 1.0 : 0.8, true};
    if (m.problem_point_matched && m.rep_error_time > *m.rep_problem_time) return {0.5, true};
    if (!spec.error || !m.rep_error || !same_exception(*spec.error, *m.rep_error)) return {0.1, true};
    return {0.0, true};
  }
  if (m.rep_outcome == OutcomeKind::ReturnedNormally) return {0.75, true};
  return {0.2, true};
}

KindScore variable_score(const problem::ProblemSpec& spec, const MatchResult& m) {
  if (m.rep_outcome == OutcomeKind::Raised) return {0.0, true};
  if (m.problem_point_matched) {
    if (!m.repaired_value_at_match || *m.repaired_value_at_match == spec.current) return {0.0, false};
    if (spec.target.given()) return {spec.target.accepts(*m.repaired_value_at_match, spec.current) ? 1.0 : 0.0, false};
    return {1.0, false};
  }
  bool haveold = false;
  bool haveother = false;
  bool target = false;
  for (const auto& v : m.variable_history) {
    if (v == spec.current) {
      haveold = true;
    } else if (haveold) {
      haveother = true;
    }
    if (spec.target.given() && spec.target.accepts(v, spec.current)) target = true;
  }
  if (spec.target.given()) {
    if (target) return {haveold ? 0.6 : 0.75, false};
  } else if (!haveold) {
    return {0.6, false};
  } else if (haveother) {
    return {0.5, false};
  }
  return {0.0, false};
}

KindScore location_score(const MatchResult& m) {
  if (m.problem_call_matched && !m.problem_point_matched) {
    return {m.rep_outcome == OutcomeKind::Raised ? 0.2 : 0.8, true};
  }
  if (!m.problem_call_matched) return {0.2, false};
  return {0.0, true};
}

}  // namespace

KindScore kind_score(const problem::ProblemSpec& spec, const MatchResult& match) {
  switch (spec.kind) {
    case ProblemKind::Exception:
    case ProblemKind::Assertion: return exception_score(spec, match);
    case ProblemKind::Variable: return variable_score(spec, match);
    case ProblemKind::Location: return location_score(match);
  }
  return {};
}

ValidationResult validate(const interp::ExecutionTrace& base, const interp::ExecutionTrace* rep,
                          const problem::ProblemSpec& spec, const MatchResult& match) {
  (void)base;
  ValidationResult out;
  out.match = match;
  if (!rep) {
    out.applied = false;
    return out;
  }
  out.cost = static_cast<std::int64_t>(rep->size());
  if (rep->outcome.kind == OutcomeKind::Cancelled) return out;
  if (rep->outcome.kind == OutcomeKind::Raised && rep->outcome.error &&
      rep->outcome.error->kind == interp::ErrorKind::TypeError) {
    return out;
  }
  if (!match.execution_changed()) return out;
  const KindScore ks = kind_score(spec, match);
  out.kind_score = ks.score;
  if (ks.score == 0) return out;
  interp::Time diff = std::min(match.control_div_time.value_or(spec.stop_time),
                               match.data_div_time.value_or(spec.stop_time));
  out.closeness = spec.stop_time > 0
                      ? std::clamp(static_cast<double>(diff) / static_cast<double>(spec.stop_time), 0.0, 1.0)
                      : 0.0;
  double score = ks.score * 0.95 + out.closeness * 0.05;
  const bool unstable = rep->outcome.kind == OutcomeKind::BudgetExceeded ||
                        (rep->outcome.kind == OutcomeKind::Raised && !ks.examined_error);
  if (unstable) score *= 0.5;
  out.score = score;
  return out;
}

ValidationResult validate_repair(const lang::Ast& ast, const suggest::Repair& repair, const baseline::Baseline& base,
                                 const RunLimits& limits) {
  lang::AppliedEdit applied;
  try {
    applied = lang::apply_edit_detailed(ast, repair.edit);
  } catch (const lang::ApplyError&) {
    return validate(base.trace, nullptr, base.spec, MatchResult{});
  }
  interp::RunOptions opts;
  opts.budget = base.plan.budget;
  opts.record_flow = false;
  opts.cancel = limits.cancel;
  opts.step_counter = limits.step_counter;
  opts.step_limit = limits.step_limit;
  interp::ExecutionTrace rep;
  try {
    rep = interp::run(applied.ast, base.plan.snapshot.function, base.plan.snapshot.args, base.plan.snapshot.heap,
                      opts);
  } catch (const interp::EntryError&) {
    return validate(base.trace, nullptr, base.spec, MatchResult{});
  }
  MatchResult match = compute_match(base.trace, rep, base.spec, applied.aliases);
  return validate(base.trace, &rep, base.spec, match);
}

}  // namespace mend::validate
