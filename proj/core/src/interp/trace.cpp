#include "mend/interp/trace.hpp"

#include <algorithm>

namespace mend::interp {

std::size_t ReferenceHash::operator()(const Reference& r) const noexcept {
  std::size_t h = static_cast<std::size_t>(r.kind);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(std::hash<std::int64_t>{}(r.frame));
  mix(std::hash<std::int64_t>{}(r.array));
  mix(std::hash<std::int64_t>{}(r.index));
  mix(std::hash<std::int64_t>{}(r.node));
  mix(std::hash<std::string>{}(r.name));
  return h;
}

std::string to_string(const Reference& r) {
  switch (r.kind) {
    case RefKind::Local: return "local(" + std::to_string(r.frame) + "," + r.name + ")";
    case RefKind::ArrayElem:
      return "elem(" + std::to_string(r.array) + "," + (r.index == kAnyIndex ? "*" : std::to_string(r.index)) + ")";
    case RefKind::Stack: return "stack(" + std::to_string(r.frame) + "," + std::to_string(r.node) + ")";
    case RefKind::Cond: return "COND";
  }
  return "?";
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivByZero: return "DivByZero";
    case ErrorKind::IndexOutOfBounds: return "IndexOutOfBounds";
    case ErrorKind::NilAccess: return "NilAccess";
    case ErrorKind::AssertFailed: return "AssertFailed";
    case ErrorKind::TypeError: return "TypeError";
  }
  return "?";
}

std::optional<ErrorKind> error_kind_from_string(std::string_view s) {
  for (auto k : {ErrorKind::DivByZero, ErrorKind::IndexOutOfBounds, ErrorKind::NilAccess, ErrorKind::AssertFailed,
                 ErrorKind::TypeError}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::Stmt: return "stmt";
    case StepKind::Branch: return "branch";
    case StepKind::Call: return "call";
    case StepKind::Return: return "return";
    case StepKind::Raise: return "raise";
    case StepKind::Break: return "break";
  }
  return "?";
}

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::ReturnedNormally: return "ReturnedNormally";
    case OutcomeKind::Raised: return "Raised";
    case OutcomeKind::BudgetExceeded: return "BudgetExceeded";
    case OutcomeKind::StoppedAtBreak: return "StoppedAtBreak";
    case OutcomeKind::Cancelled: return "Cancelled";
  }
  return "?";
}

std::size_t ExecutionTrace::write_count() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.writes.size();
  return n;
}

std::vector<FrameId> ExecutionTrace::stack_at(Time t) const {
  std::vector<FrameId> out;
  for (const auto& f : frames) {
    if (f.call_time <= t && (f.return_time == kNoTime || f.return_time >= t)) out.push_back(f.id);
  }
  // Frames are numbered in call order, so an active set sorted by id is
  // already outermost first.
  return out;
}

}  // namespace mend::interp
