#include <stdexcept>

#include "mend/interp/trace.hpp"

namespace mend::interp {

Replayer::Replayer(const ExecutionTrace& trace) : trace_(trace), heap_(trace.entry_snapshot.heap) {
  const auto& snap = trace.entry_snapshot;
  for (std::size_t i = 0; i < snap.params.size() && i < snap.args.size(); ++i) {
    locals_[{0, snap.params[i]}] = snap.args[i];
  }
}

void Replayer::advance() {
  const TraceStep& step = trace_.at(next_);
  for (const auto& a : step.allocs) {
    if (a.array != static_cast<std::int64_t>(heap_.arrays.size())) {
      throw std::logic_error("replay allocation out of order");
    }
    heap_.allocate(a.elements);
  }
  for (const auto& w : step.writes) {
    if (w.ref.kind == RefKind::Local) {
      locals_[{w.ref.frame, w.ref.name}] = w.new_value;
    } else if (w.ref.kind == RefKind::ArrayElem) {
      heap_.at(ArrayId{w.ref.array}).at(static_cast<std::size_t>(w.ref.index)) = w.new_value;
    }
  }
  if (step.kind == StepKind::Return) {
    for (auto it = locals_.begin(); it != locals_.end();) {
      it = it->first.first == step.frame ? locals_.erase(it) : std::next(it);
    }
  }
  ++next_;
}

void Replayer::advance_to(Time t) {
  if (t < next_ || t > static_cast<Time>(trace_.size())) throw std::out_of_range("replay time out of range");
  while (next_ < t) advance();
}

const Value* Replayer::local(FrameId frame, const std::string& name) const {
  auto it = locals_.find({frame, name});
  return it == locals_.end() ? nullptr : &it->second;
}

State Replayer::state() const {
  State out;
  for (const auto& [key, v] : locals_) out[Reference::local(key.first, key.second)] = v;
  for (std::size_t a = 0; a < heap_.arrays.size(); ++a) {
    const auto& elems = heap_.arrays[a];
    for (std::size_t i = 0; i < elems.size(); ++i) {
      out[Reference::element(static_cast<std::int64_t>(a), static_cast<std::int64_t>(i))] = elems[i];
    }
  }
  return out;
}

State state_at(const ExecutionTrace& trace, Time time) {
  if (time < 0 || time > static_cast<Time>(trace.size())) throw std::out_of_range("state_at: time out of range");
  Replayer r(trace);
  r.advance_to(time);
  return r.state();
}

Heap heap_at(const ExecutionTrace& trace, Time time) {
  if (time < 0 || time > static_cast<Time>(trace.size())) throw std::out_of_range("heap_at: time out of range");
  Replayer r(trace);
  r.advance_to(time);
  return r.heap();
}

std::optional<lang::NodeId> failing_subexpression(const ExecutionTrace& trace) {
  if (trace.outcome.kind != OutcomeKind::Raised || !trace.outcome.error) return std::nullopt;
  return trace.outcome.error->node;
}

}  // namespace mend::interp
