#include <algorithm>
#include <map>

#include "mend/faultloc/localize.hpp"

namespace mend::faultloc {

namespace {

bool discards_value(const lang::Stmt& s) {
  if (s.kind != lang::StmtKind::ExprStmt || s.exprs.empty()) return false;
  const auto& e = *s.exprs.front();
  if (e.kind != lang::ExprKind::Call) return true;
  return e.text == "abs" || e.text == "min" || e.text == "max";
}

}  // namespace

std::vector<CandidateLocation> discarded_results(const lang::Program& program, const interp::ExecutionTrace& trace,
                                                 interp::Time stop_time,
                                                 const std::vector<CandidateLocation>& candidates,
                                                 const LocalizeOptions& options) {
  std::map<std::string, int> best;
  for (const auto& c : candidates) best[c.function] = std::max(best[c.function], c.priority);
  const lang::NodeIndex index(program);
  std::map<std::pair<std::string, int>, CandidateLocation> found;
  const auto last = std::min<interp::Time>(stop_time, static_cast<interp::Time>(trace.size()) - 1);
  for (interp::Time t = 0; t <= last; ++t) {
    const auto& step = trace.at(t);
    if (step.kind != interp::StepKind::Stmt) continue;
    const auto& fn = trace.frame(step.frame).function;
    if (options.exclusions.count(fn)) continue;
    const auto it = best.find(fn);
    if (it == best.end()) continue;
    const auto* s = index.stmt(step.stmt);
    if (!s || !discards_value(*s)) continue;
    auto& c = found[{fn, step.line}];
    if (c.node_ids.empty()) {
      c.line = step.line;
      c.function = fn;
      c.priority = std::max(1, it->second - 1);
      c.earliest_time = t;
    }
    if (std::find(c.node_ids.begin(), c.node_ids.end(), s->id) == c.node_ids.end()) {
      c.node_ids.push_back(s->id);
      std::sort(c.node_ids.begin(), c.node_ids.end());
    }
    c.latest_time = t;
    c.distance = stop_time - t;
  }
  std::vector<CandidateLocation> out;
  for (auto& [key, c] : found) out.push_back(std::move(c));
  return out;
}

}  // namespace mend::faultloc
