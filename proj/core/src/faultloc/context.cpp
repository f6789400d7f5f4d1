#include "mend/faultloc/context.hpp"

#include <algorithm>

namespace mend::faultloc {

void Context::merge(const interp::Reference& ref, int priority) {
  if (priority < 1) return;
  priority = std::min(priority, kMaxPriority);
  auto [it, inserted] = entries_.emplace(ref, priority);
  if (!inserted) it->second = std::max(it->second, priority);
}

void Context::merge(const Context& other) {
  for (const auto& [ref, p] : other.entries_) merge(ref, p);
}

int Context::priority(const interp::Reference& ref) const {
  auto it = entries_.find(ref);
  return it == entries_.end() ? 0 : it->second;
}

}  // namespace mend::faultloc
