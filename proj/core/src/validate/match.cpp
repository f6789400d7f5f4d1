#include <map>
#include <tuple>
#include <unordered_map>

#include "mend/validate/validate.hpp"

namespace mend::validate {

using interp::ExecutionTrace;
using interp::FrameId;
using interp::kNoFrame;
using interp::RefKind;
using interp::StepKind;
using interp::Time;
using interp::TraceStep;

namespace {

// Repaired frame -> baseline frame, by parent alignment, callee and ordinal.
std::vector<FrameId> align_frames(const ExecutionTrace& base, const ExecutionTrace& rep) {
  std::map<std::tuple<FrameId, std::string, int>, FrameId> keys;
  for (const auto& f : base.frames) keys.emplace(std::make_tuple(f.parent, f.function, f.ordinal), f.id);
  std::vector<FrameId> align(rep.frames.size(), kNoFrame);
  for (const auto& f : rep.frames) {
    if (f.parent == kNoFrame) {
      if (!base.frames.empty() && base.frames[0].function == f.function) align[f.id] = 0;
      continue;
    }
    FrameId parent = align[f.parent];
    if (parent == kNoFrame) continue;
    auto it = keys.find(std::make_tuple(parent, f.function, f.ordinal));
    if (it != keys.end()) align[f.id] = it->second;
  }
  return align;
}

class Matcher {
 public:
  Matcher(const ExecutionTrace& base, const ExecutionTrace& rep, const Aliases& aliases)
      : base_(base), rep_(rep), align_(align_frames(base, rep)) {
    for (const auto& [n, o] : aliases) alias_.emplace(n, o);
  }

  lang::NodeId stmt(lang::NodeId id) const {
    auto it = alias_.find(id);
    return it == alias_.end() ? id : it->second;
  }
  FrameId frame(FrameId f) const {
    return f < 0 || f >= static_cast<FrameId>(align_.size()) ? kNoFrame : align_[f];
  }
  FrameId rep_frame_for(FrameId b) const {
    for (std::size_t i = 0; i < align_.size(); ++i) {
      if (align_[i] == b) return static_cast<FrameId>(i);
    }
    return kNoFrame;
  }

  bool same_control(const TraceStep& b, const TraceStep& r) const {
    if (stmt(r.stmt) != b.stmt || frame(r.frame) != b.frame) return false;
    if (b.kind == StepKind::Break) return true;
    if (b.kind != r.kind) return false;
    if (b.kind == StepKind::Branch && b.taken != r.taken) return false;
    if (b.kind == StepKind::Call && b.callee != r.callee) return false;
    return true;
  }

  bool same_data(const TraceStep& b, const TraceStep& r) const {
    if (b.kind == StepKind::Break) return true;
    if (b.writes.size() != r.writes.size() || b.allocs.size() != r.allocs.size()) return false;
    for (std::size_t i = 0; i < b.writes.size(); ++i) {
      auto ref = r.writes[i].ref;
      if (ref.kind == RefKind::Local) ref.frame = frame(ref.frame);
      if (ref != b.writes[i].ref || r.writes[i].new_value != b.writes[i].new_value) return false;
    }
    for (std::size_t i = 0; i < b.allocs.size(); ++i) {
      if (b.allocs[i].elements != r.allocs[i].elements) return false;
    }
    if (b.args != r.args || b.value != r.value) return false;
    if (b.error.has_value() != r.error.has_value()) return false;
    if (b.error && (b.error->kind != r.error->kind || b.error->message != r.error->message)) return false;
    return true;
  }

 private:
  const ExecutionTrace& base_;
  const ExecutionTrace& rep_;
  std::vector<FrameId> align_;
  std::unordered_map<lang::NodeId, lang::NodeId> alias_;
};

}  // namespace

MatchResult compute_match(const ExecutionTrace& base, const ExecutionTrace& rep, const problem::ProblemSpec& spec,
                          const Aliases& aliases) {
  Matcher m(base, rep, aliases);
  MatchResult out;
  out.rep_outcome = rep.outcome.kind;
  if (rep.outcome.kind == interp::OutcomeKind::Raised) {
    out.rep_error = rep.outcome.error;
    out.rep_error_time = rep.last_time();
  }

  const Time problem = spec.stop_time;
  const Time n = std::min<Time>(problem + 1, static_cast<Time>(base.size()));
  for (Time k = 0; k < n; ++k) {
    if (k >= static_cast<Time>(rep.size())) {
      out.control_div_time = k;
      break;
    }
    const auto& b = base.at(k);
    const auto& r = rep.at(k);
    if (!m.same_control(b, r)) {
      out.control_div_time = k;
      break;
    }
    if (!out.data_div_time && !m.same_data(b, r)) out.data_div_time = k;
  }

  // The problem point is the k-th arrival at the stop statement in the
  // problem frame.
  const FrameId rep_frame = m.rep_frame_for(spec.stop_frame);
  out.problem_call_matched = rep_frame != kNoFrame;
  int arrivals = 0;
  for (Time t = 0; t < n; ++t) {
    const auto& s = base.at(t);
    if (s.is_arrival() && s.frame == spec.stop_frame && s.stmt == spec.stop_stmt) ++arrivals;
  }
  if (out.problem_call_matched && arrivals > 0) {
    int seen = 0;
    for (Time t = 0; t < static_cast<Time>(rep.size()); ++t) {
      const auto& s = rep.at(t);
      if (s.is_arrival() && s.frame == rep_frame && m.stmt(s.stmt) == spec.stop_stmt && ++seen == arrivals) {
        out.problem_point_matched = true;
        out.rep_problem_time = t;
        break;
      }
    }
  }

  if (spec.kind == problem::ProblemKind::Variable) {
    std::vector<char> watched(rep.frames.size(), 0);
    for (const auto& f : rep.frames) {
      watched[f.id] = out.problem_call_matched ? f.id == rep_frame : f.function == spec.stop_function;
    }
    interp::Replayer replay(rep);
    if (!watched.empty() && watched[0]) {
      if (const auto* v = replay.local(0, spec.variable)) {
        out.variable_history.push_back(interp::materialize(*v, replay.heap()));
      }
    }
    for (Time t = 0; t < static_cast<Time>(rep.size()); ++t) {
      if (out.rep_problem_time && *out.rep_problem_time == t) {
        if (const auto* v = replay.local(rep_frame, spec.variable)) {
          out.repaired_value_at_match = interp::materialize(*v, replay.heap());
        }
      }
      replay.advance();
      for (const auto& w : rep.at(t).writes) {
        if (w.ref.kind == RefKind::Local && w.ref.name == spec.variable && w.ref.frame >= 0 &&
            w.ref.frame < static_cast<FrameId>(watched.size()) && watched[w.ref.frame]) {
          out.variable_history.push_back(interp::materialize(w.new_value, replay.heap()));
        }
      }
    }
  }
  return out;
}

}  // namespace mend::validate
