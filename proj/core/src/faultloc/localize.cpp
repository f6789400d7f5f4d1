#include "mend/faultloc/localize.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace mend::faultloc {

using interp::FlowDef;
using interp::kAnyIndex;
using interp::Reference;
using interp::RefKind;
using interp::StepKind;
using interp::Time;
using interp::TraceStep;

namespace {

class Walk {
 public:
  Walk(const interp::ExecutionTrace& trace, const LocalizeOptions& options) : trace_(trace), opts_(options) {}

  void seed(const Context& ctx0, Time stop_time) {
    for (const auto& [ref, p] : ctx0.entries()) {
      if (ref.kind == RefKind::Cond) {
        control(trace_.at(stop_time).control_parent, p);
      } else {
        add(ref, p);
      }
    }
  }

  void run(Time stop_time) {
    for (Time t = stop_time; t >= 0; --t) {
      if (relevant_.empty() && any_.empty() && pending_.empty()) break;
      step(trace_.at(t));
    }
  }

  std::vector<CandidateLocation> candidates(Time stop_time) const {
    std::vector<CandidateLocation> out;
    for (const auto& [key, c] : found_) {
      CandidateLocation loc = c;
      loc.distance = stop_time - loc.latest_time;
      out.push_back(std::move(loc));
    }
    return out;
  }

 private:
  int lower(int p, int cost) const { return opts_.decay ? p - cost : p; }

  void add(const Reference& ref, int p) {
    if (p < 1) return;
    p = std::min(p, kMaxPriority);
    if (ref.kind == RefKind::ArrayElem && ref.index == kAnyIndex) {
      auto& entry = any_[ref.array];
      entry.priority = std::max(entry.priority, p);
      // A read of every element makes earlier definitions relevant again.
      entry.killed.clear();
      return;
    }
    auto [it, inserted] = relevant_.emplace(ref, p);
    if (!inserted) it->second = std::max(it->second, p);
  }

  void control(Time target, int p) {
    if (target == interp::kNoTime || p < 1) return;
    auto [it, inserted] = pending_.emplace(target, p);
    if (!inserted) it->second = std::max(it->second, p);
  }

  // Priority at which `dst` is relevant, removing what this definition
  // satisfies. Zero when not relevant.
  int consume(const Reference& dst, std::size_t allocated) {
    if (dst.kind != RefKind::ArrayElem) {
      auto it = relevant_.find(dst);
      if (it == relevant_.end()) return 0;
      const int p = it->second;
      relevant_.erase(it);
      return p;
    }
    int p = 0;
    if (dst.index != kAnyIndex) {
      auto it = relevant_.find(dst);
      if (it != relevant_.end()) {
        p = it->second;
        relevant_.erase(it);
      }
      auto a = any_.find(dst.array);
      if (a != any_.end() && a->second.killed.insert(dst.index).second) p = std::max(p, a->second.priority);
      return p;
    }
    // Definition of every element at once.
    auto lo = relevant_.lower_bound(Reference::element(dst.array, std::numeric_limits<std::int64_t>::min()));
    while (lo != relevant_.end() && lo->first.kind == RefKind::ArrayElem && lo->first.array == dst.array) {
      p = std::max(p, lo->second);
      lo = relevant_.erase(lo);
    }
    auto a = any_.find(dst.array);
    if (a != any_.end()) {
      if (a->second.killed.size() < allocated) p = std::max(p, a->second.priority);
      any_.erase(a);
    }
    return p;
  }

  std::size_t allocated_size(const TraceStep& step, std::int64_t array) const {
    for (const auto& a : step.allocs) {
      if (a.array == array) return a.elements.size();
    }
    return std::numeric_limits<std::size_t>::max();
  }

  void note(const TraceStep& step, int p) {
    if (p < 1) return;
    const std::string& fn = trace_.frame(step.frame).function;
    if (opts_.exclusions.count(fn)) return;
    auto& c = found_[{fn, step.line}];
    if (c.line == 0) {
      c.line = step.line;
      c.function = fn;
      c.latest_time = step.time;
      c.earliest_time = step.time;
    }
    c.priority = std::max(c.priority, std::min(p, kMaxPriority));
    c.latest_time = std::max(c.latest_time, step.time);
    c.earliest_time = std::min(c.earliest_time, step.time);
    if (std::find(c.node_ids.begin(), c.node_ids.end(), step.stmt) == c.node_ids.end()) {
      c.node_ids.insert(std::upper_bound(c.node_ids.begin(), c.node_ids.end(), step.stmt), step.stmt);
    }
  }

  void step(const TraceStep& s) {
    auto target = pending_.find(s.time);
    if (target != pending_.end()) {
      const int q = target->second;
      pending_.erase(target);
      if (s.kind == StepKind::Branch) {
        note(s, q);
        add(Reference::stack(s.frame, s.cond_node), q);
        control(s.control_parent, q);
      } else if (s.kind == StepKind::Call) {
        note(s, lower(q, 1));
        control(s.control_parent, lower(q, 1));
      }
    }

    int consumed = 0;
    for (auto it = s.flow.rbegin(); it != s.flow.rend(); ++it) {
      const FlowDef& def = *it;
      const int p = consume(def.dst, def.dst.kind == RefKind::ArrayElem ? allocated_size(s, def.dst.array) : 0);
      if (p < 1) continue;
      consumed = std::max(consumed, p);
      for (const auto& src : def.sources) add(src.ref, lower(p, src.cost));
    }
    if (consumed > 0) {
      note(s, consumed);
      control(s.control_parent, lower(consumed, 1));
    }
  }

  struct AnyEntry {
    int priority = 0;
    std::unordered_set<std::int64_t> killed;
  };

  const interp::ExecutionTrace& trace_;
  const LocalizeOptions& opts_;
  std::map<Reference, int> relevant_;
  std::map<std::int64_t, AnyEntry> any_;
  std::map<Time, int> pending_;
  std::map<std::pair<std::string, int>, CandidateLocation> found_;
};

}  // namespace

std::vector<CandidateLocation> localize(const interp::ExecutionTrace& trace, const Context& ctx0, Time stop_time,
                                        const LocalizeOptions& options) {
  if (!trace.has_flow) throw std::invalid_argument("localize needs a trace recorded with data flow");
  if (stop_time < 0 || stop_time >= static_cast<Time>(trace.size())) {
    throw std::out_of_range("localize: stop time out of range");
  }
  Walk walk(trace, options);
  walk.seed(ctx0, stop_time);
  walk.run(stop_time);
  return dedupe_and_rank(walk.candidates(stop_time));
}

std::vector<CandidateLocation> dedupe_and_rank(std::vector<CandidateLocation> candidates) {
  std::map<std::pair<std::string, int>, CandidateLocation> merged;
  for (auto& c : candidates) {
    auto key = std::make_pair(c.function, c.line);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(std::move(key), std::move(c));
      continue;
    }
    auto& m = it->second;
    m.priority = std::max(m.priority, c.priority);
    if (c.latest_time > m.latest_time) {
      m.latest_time = c.latest_time;
      m.distance = c.distance;
    }
    if (m.earliest_time == interp::kNoTime || (c.earliest_time != interp::kNoTime && c.earliest_time < m.earliest_time)) {
      m.earliest_time = c.earliest_time;
    }
    for (auto id : c.node_ids) {
      if (std::find(m.node_ids.begin(), m.node_ids.end(), id) == m.node_ids.end()) m.node_ids.push_back(id);
    }
    std::sort(m.node_ids.begin(), m.node_ids.end());
  }
  std::vector<CandidateLocation> out;
  out.reserve(merged.size());
  for (auto& [key, c] : merged) out.push_back(std::move(c));
  std::stable_sort(out.begin(), out.end(), [](const CandidateLocation& a, const CandidateLocation& b) {
    if (a.priority != b.priority) return a.priority > b.priority;
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.function != b.function) return a.function < b.function;
    return a.line < b.line;
  });
  return out;
}

}  // namespace mend::faultloc
