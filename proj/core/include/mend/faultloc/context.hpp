#pragma once

#include <map>

#include "mend/interp/trace.hpp"

namespace mend::faultloc {

inline constexpr int kMaxPriority = 10;

// Relevant references with their priorities.
class Context {
 public:
  // Keeps the larger priority. Priorities outside 1..10 are clamped to 10
  // above and ignored below 1.
  void merge(const interp::Reference& ref, int priority);
  void merge(const Context& other);

  int priority(const interp::Reference& ref) const;
  bool contains(const interp::Reference& ref) const { return entries_.count(ref) != 0; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::map<interp::Reference, int>& entries() const { return entries_; }

  friend bool operator==(const Context&, const Context&) = default;

 private:
  std::map<interp::Reference, int> entries_;
};

}  // namespace mend::faultloc
