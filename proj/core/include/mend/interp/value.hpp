#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mend::interp {

struct Nil {
  friend bool operator==(Nil, Nil) { return true; }
  friend auto operator<=>(Nil, Nil) = default;
};

// Arrays are heap objects; a Value holds the identity, the Heap holds the
// elements. Identities are creation ordinals within one run.
struct ArrayId {
  std::int64_t id = -1;
  friend bool operator==(ArrayId, ArrayId) = default;
  friend auto operator<=>(ArrayId, ArrayId) = default;
};

// Shallow value: equality here compares array identities, not contents. Use
// deep_equal for MiniLang `==`.
using Value = std::variant<Nil, std::int64_t, bool, std::string, ArrayId>;

enum class ValueKind { Nil, Int, Bool, Str, Array };

inline ValueKind kind_of(const Value& v) { return static_cast<ValueKind>(v.index()); }
std::string_view kind_name(ValueKind kind);

struct Heap {
  std::vector<std::vector<Value>> arrays;

  ArrayId allocate(std::vector<Value> elements) {
    arrays.push_back(std::move(elements));
    return ArrayId{static_cast<std::int64_t>(arrays.size()) - 1};
  }
  bool contains(ArrayId a) const {
    return a.id >= 0 && a.id < static_cast<std::int64_t>(arrays.size());
  }
  const std::vector<Value>& at(ArrayId a) const { return arrays.at(static_cast<std::size_t>(a.id)); }
  std::vector<Value>& at(ArrayId a) { return arrays.at(static_cast<std::size_t>(a.id)); }
};

// Structural equality; arrays compare element-wise, cycles compare equal
// when they have the same shape.
bool deep_equal(const Value& a, const Heap& heap_a, const Value& b, const Heap& heap_b);

// Self-contained value tree, used where a value must outlive its heap
// (problem descriptions, JSON, comparing runs).
struct DeepValue {
  std::variant<Nil, std::int64_t, bool, std::string, std::vector<DeepValue>> data;

  DeepValue() = default;
  DeepValue(Nil n) : data(n) {}
  DeepValue(std::int64_t i) : data(i) {}
  DeepValue(int i) : data(std::int64_t{i}) {}
  DeepValue(bool b) : data(b) {}
  DeepValue(std::string s) : data(std::move(s)) {}
  DeepValue(const char* s) : data(std::string(s)) {}
  DeepValue(std::vector<DeepValue> items) : data(std::move(items)) {}

  bool is_nil() const { return std::holds_alternative<Nil>(data); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(data); }
  std::int64_t as_int() const { return std::get<std::int64_t>(data); }

  friend bool operator==(const DeepValue& a, const DeepValue& b) { return a.data == b.data; }
};

// Cycles are cut: a back-reference materializes as an empty array.
DeepValue materialize(const Value& v, const Heap& heap);
bool deep_equal(const Value& v, const Heap& heap, const DeepValue& d);
// Allocates any arrays in `d` on `heap`.
Value inject(const DeepValue& d, Heap& heap);

std::string to_string(const Value& v, const Heap& heap);
std::string to_string(const Value& v);
std::string to_string(const DeepValue& v);

}  // namespace mend::interp
