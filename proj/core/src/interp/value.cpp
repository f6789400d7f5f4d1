#include "mend/interp/value.hpp"

#include <set>
#include <sstream>
#include <utility>

namespace mend::interp {

std::string_view kind_name(ValueKind kind) {
  switch (kind) {
    case ValueKind::Nil: return "nil";
    case ValueKind::Int: return "int";
    case ValueKind::Bool: return "bool";
    case ValueKind::Str: return "string";
    case ValueKind::Array: return "array";
  }
  return "?";
}

namespace {

using PairSet = std::set<std::pair<std::int64_t, std::int64_t>>;

bool equal_rec(const Value& a, const Heap& ha, const Value& b, const Heap& hb, PairSet& seen) {
  if (a.index() != b.index()) return false;
  if (!std::holds_alternative<ArrayId>(a)) return a == b;
  ArrayId x = std::get<ArrayId>(a);
  ArrayId y = std::get<ArrayId>(b);
  if (!seen.insert({x.id, y.id}).second) return true;
  const auto& xs = ha.at(x);
  const auto& ys = hb.at(y);
  if (xs.size() != ys.size()) return false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!equal_rec(xs[i], ha, ys[i], hb, seen)) return false;
  }
  return true;
}

DeepValue materialize_rec(const Value& v, const Heap& heap, std::vector<std::int64_t>& path) {
  return std::visit(
      [&](const auto& x) -> DeepValue {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ArrayId>) {
          for (auto p : path) {
            if (p == x.id) return DeepValue(std::vector<DeepValue>{});
          }
          path.push_back(x.id);
          std::vector<DeepValue> items;
          for (const auto& e : heap.at(x)) items.push_back(materialize_rec(e, heap, path));
          path.pop_back();
          return DeepValue(std::move(items));
        } else {
          return DeepValue(x);
        }
      },
      v);
}

bool equal_deep_rec(const Value& v, const Heap& heap, const DeepValue& d, int depth) {
  if (depth > 256) return false;
  if (const auto* arr = std::get_if<ArrayId>(&v)) {
    const auto* items = std::get_if<std::vector<DeepValue>>(&d.data);
    if (!items) return false;
    const auto& elems = heap.at(*arr);
    if (elems.size() != items->size()) return false;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (!equal_deep_rec(elems[i], heap, (*items)[i], depth + 1)) return false;
    }
    return true;
  }
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ArrayId>) {
          return false;
        } else {
          const auto* y = std::get_if<T>(&d.data);
          return y && *y == x;
        }
      },
      v);
}

void print_rec(std::ostream& os, const Value& v, const Heap* heap, std::vector<std::int64_t>& path) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Nil>) {
          os << "nil";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          os << x;
        } else if constexpr (std::is_same_v<T, bool>) {
          os << (x ? "true" : "false");
        } else if constexpr (std::is_same_v<T, std::string>) {
          os << '"' << x << '"';
        } else {
          bool cyclic = false;
          for (auto p : path) cyclic = cyclic || p == x.id;
          if (!heap || !heap->contains(x) || cyclic) {
            os << "<array#" << x.id << '>';
            return;
          }
          path.push_back(x.id);
          os << '[';
          const auto& elems = heap->at(x);
          for (std::size_t i = 0; i < elems.size(); ++i) {
            if (i) os << ", ";
            print_rec(os, elems[i], heap, path);
          }
          os << ']';
          path.pop_back();
        }
      },
      v);
}

void print_deep(std::ostream& os, const DeepValue& v) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Nil>) {
          os << "nil";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          os << x;
        } else if constexpr (std::is_same_v<T, bool>) {
          os << (x ? "true" : "false");
        } else if constexpr (std::is_same_v<T, std::string>) {
          os << '"' << x << '"';
        } else {
          os << '[';
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) os << ", ";
            print_deep(os, x[i]);
          }
          os << ']';
        }
      },
      v.data);
}

}  // namespace

bool deep_equal(const Value& a, const Heap& heap_a, const Value& b, const Heap& heap_b) {
  PairSet seen;
  return equal_rec(a, heap_a, b, heap_b, seen);
}

DeepValue materialize(const Value& v, const Heap& heap) {
  std::vector<std::int64_t> path;
  return materialize_rec(v, heap, path);
}

bool deep_equal(const Value& v, const Heap& heap, const DeepValue& d) {
  return equal_deep_rec(v, heap, d, 0);
}

Value inject(const DeepValue& d, Heap& heap) {
  return std::visit(
      [&](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::vector<DeepValue>>) {
          std::vector<Value> elems;
          elems.reserve(x.size());
          for (const auto& e : x) elems.push_back(inject(e, heap));
          return heap.allocate(std::move(elems));
        } else {
          return Value(x);
        }
      },
      d.data);
}

std::string to_string(const Value& v, const Heap& heap) {
  std::ostringstream os;
  std::vector<std::int64_t> path;
  print_rec(os, v, &heap, path);
  return os.str();
}

std::string to_string(const Value& v) {
  std::ostringstream os;
  std::vector<std::int64_t> path;
  print_rec(os, v, nullptr, path);
  return os.str();
}

std::string to_string(const DeepValue& v) {
  std::ostringstream os;
  print_deep(os, v);
  return os.str();
}

}  // namespace mend::interp
