#include "mend/baseline/baseline.hpp"

#include <algorithm>
#include <limits>

namespace mend::baseline {

using interp::ExecutionTrace;
using interp::FrameId;
using interp::OutcomeKind;
using interp::RefKind;
using interp::StepKind;
using interp::Time;
using interp::TraceStep;

namespace {

// For-loop init and step statements run without counting as an arrival.
bool is_header_slot(const lang::NodeIndex& index, lang::NodeId id) {
  const auto* loc = index.find(id);
  if (!loc || !loc->stmt || !loc->parent) return false;
  const lang::Stmt* p = loc->parent;
  return p->kind == lang::StmtKind::For && (p->init.get() == loc->stmt || p->step.get() == loc->stmt);
}

bool counts_arrival(const lang::NodeIndex& index, const TraceStep& step) {
  switch (step.kind) {
    case StepKind::Branch:
    case StepKind::Raise:
    case StepKind::Break: return true;
    case StepKind::Stmt: return !is_header_slot(index, step.stmt);
    case StepKind::Return: return index.stmt(step.stmt) != nullptr;
    case StepKind::Call: return false;
  }
  return false;
}

std::vector<std::pair<std::string, int>> call_path(const ExecutionTrace& trace, FrameId f) {
  std::vector<std::pair<std::string, int>> path;
  while (f > 0) {
    const auto& info = trace.frame(f);
    path.emplace_back(info.function, info.ordinal);
    f = info.parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool on_stack(const ExecutionTrace& trace, Time t, FrameId f) {
  auto s = trace.stack_at(t);
  return std::find(s.begin(), s.end(), f) != s.end();
}

}  // namespace

int arrivals_before(const lang::Ast& ast, const ExecutionTrace& trace, int line, Time time) {
  lang::NodeIndex index(*ast);
  int hits = 0;
  const Time end = std::min<Time>(time, static_cast<Time>(trace.size()));
  for (Time t = 0; t < end; ++t) {
    const auto& s = trace.at(t);
    if (s.line == line && counts_arrival(index, s)) ++hits;
  }
  // Statements whose calls are still running at `time` arrived already.
  if (time < static_cast<Time>(trace.size())) {
    for (FrameId f : trace.stack_at(time)) {
      const auto& info = trace.frame(f);
      if (info.call_time == interp::kNoTime || info.call_time >= time) continue;
      const auto& call = trace.at(info.call_time);
      if (call.line == line && !is_header_slot(index, call.stmt)) ++hits;
    }
  }
  return hits;
}

BaselinePlan plan_for_frame(const lang::Ast& ast, const ExecutionTrace& trace, const problem::ProblemSpec& spec,
                            FrameId frame, const std::optional<interp::Breakpoint>& breakpoint,
                            const BaselineOptions& options) {
  const Time stop = spec.stop_time;
  if (stop < 0 || stop >= static_cast<Time>(trace.size())) throw NoCoveringFrame("stop point outside the trace");
  if (frame < 0 || frame >= static_cast<FrameId>(trace.frames.size()) || !on_stack(trace, stop, frame)) {
    throw NoCoveringFrame("frame " + std::to_string(frame) + " is not active at the stop point");
  }
  BaselinePlan plan;
  plan.start_frame = frame;
  const auto& info = trace.frame(frame);
  plan.function = info.function;
  plan.call_path = call_path(trace, frame);
  if (frame == 0) {
    plan.offset = 0;
    plan.snapshot = trace.entry_snapshot;
  } else {
    plan.offset = info.call_time + 1;
    const auto& call = trace.at(info.call_time);
    const lang::Function* fn = ast->find_function(info.function);
    plan.snapshot.function = info.function;
    if (fn) plan.snapshot.params = fn->params;
    plan.snapshot.args = call.args;
    plan.snapshot.heap = interp::heap_at(trace, plan.offset);
  }
  plan.extent = stop - plan.offset + 1;
  if (plan.extent > options.max_budget) {
    throw NoCoveringFrame("frame " + info.function + " needs " + std::to_string(plan.extent) +
                          " steps to reach the problem, over the budget of " + std::to_string(options.max_budget));
  }
  plan.budget = std::min(options.max_budget, std::max(options.min_budget, options.budget_factor * plan.extent));
  plan.problem_time = stop - plan.offset;
  if (breakpoint) {
    interp::Breakpoint b = *breakpoint;
    b.count -= arrivals_before(ast, trace, b.line, plan.offset);
    if (b.count >= 1) plan.breakpoint = b;
  }
  return plan;
}

BaselinePlan select_start(const lang::Ast& ast, const ExecutionTrace& trace, const problem::ProblemSpec& spec,
                          const std::vector<faultloc::CandidateLocation>& candidates,
                          const std::optional<interp::Breakpoint>& breakpoint, const BaselineOptions& options) {
  const Time stop = spec.stop_time;
  if (stop < 0 || stop >= static_cast<Time>(trace.size())) throw NoCoveringFrame("stop point outside the trace");
  Time earliest = stop;
  for (const auto& c : candidates) {
    if (c.earliest_time != interp::kNoTime) earliest = std::min(earliest, c.earliest_time);
  }
  auto stack = trace.stack_at(stop);
  FrameId chosen = 0;
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    const auto& info = trace.frame(*it);
    if (*it == 0 || info.call_time < earliest) {
      chosen = *it;
      break;
    }
  }
  bool promoted = false;
  if (chosen != 0) {
    const double covering = static_cast<double>(stop - trace.frame(chosen).call_time);
    const double entry = static_cast<double>(stop + 1);
    if (entry <= options.promotion_ratio * covering && entry <= static_cast<double>(options.max_budget)) {
      chosen = 0;
      promoted = true;
    }
  }
  BaselinePlan plan = plan_for_frame(ast, trace, spec, chosen, breakpoint, options);
  plan.promoted = promoted;
  return plan;
}

namespace {

interp::Reference remap(interp::Reference r, FrameId base) {
  if ((r.kind == RefKind::Local || r.kind == RefKind::Stack) && r.frame != interp::kNoFrame) r.frame -= base;
  return r;
}

bool same_step(const TraceStep& orig, const TraceStep& re, FrameId base, Time offset) {
  auto frame = [&](FrameId f) { return f == interp::kNoFrame ? f : f - base; };
  auto time = [&](Time t) { return t == interp::kNoTime || t < offset ? interp::kNoTime : t - offset; };
  if (orig.kind != re.kind || orig.line != re.line || orig.stmt != re.stmt) return false;
  if (frame(orig.frame) != re.frame || orig.taken != re.taken || orig.cond_node != re.cond_node) return false;
  if (orig.callee != re.callee || frame(orig.callee_frame) != re.callee_frame || orig.call_node != re.call_node) {
    return false;
  }
  if (orig.args != re.args || orig.value != re.value || orig.error != re.error) return false;
  if (time(orig.control_parent) != re.control_parent) return false;
  if (orig.writes.size() != re.writes.size() || orig.allocs.size() != re.allocs.size()) return false;
  for (std::size_t i = 0; i < orig.writes.size(); ++i) {
    const auto& a = orig.writes[i];
    const auto& b = re.writes[i];
    if (remap(a.ref, base) != b.ref || a.old_value != b.old_value || a.new_value != b.new_value) return false;
  }
  for (std::size_t i = 0; i < orig.allocs.size(); ++i) {
    if (orig.allocs[i].array != re.allocs[i].array || orig.allocs[i].elements != re.allocs[i].elements) return false;
  }
  return true;
}

}  // namespace

Baseline rebase(const lang::Ast& ast, const ExecutionTrace& trace, const problem::ProblemSpec& spec,
                const BaselinePlan& plan) {
  interp::RunOptions opts;
  opts.record_flow = trace.has_flow;
  opts.breakpoint = plan.breakpoint;
  opts.budget = std::max<std::int64_t>(plan.budget, plan.problem_time + 1);
  if (trace.outcome.kind == OutcomeKind::BudgetExceeded || trace.outcome.kind == OutcomeKind::Cancelled) {
    opts.budget = plan.problem_time + 1;
  }
  Baseline out;
  out.plan = plan;
  out.trace = interp::run(ast, plan.snapshot.function, plan.snapshot.args, plan.snapshot.heap, opts);
  const auto& re = out.trace;
  const Time n = plan.problem_time + 1;
  if (static_cast<Time>(re.size()) < n) {
    throw MatchFailure("baseline run ended after " + std::to_string(re.size()) + " steps, before the problem point");
  }
  for (Time k = 0; k < n; ++k) {
    if (!same_step(trace.at(plan.offset + k), re.at(k), plan.start_frame, plan.offset)) {
      throw MatchFailure("baseline run diverges from the original at step " + std::to_string(plan.offset + k));
    }
  }
  out.spec = spec;
  out.spec.stop_time = plan.problem_time;
  out.spec.stop_frame = spec.stop_frame - plan.start_frame;
  return out;
}

}  // namespace mend::baseline
