#include "mend/interp/value_json.hpp"

#include <stdexcept>

namespace mend::interp {

DeepValue deep_value_from_json(const nlohmann::json& j) {
  if (j.is_null()) return Nil{};
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::vector<DeepValue> items;
    for (const auto& e : j) items.push_back(deep_value_from_json(e));
    return items;
  }
  throw std::invalid_argument("not a MiniLang value: " + j.dump());
}

nlohmann::json to_json(const DeepValue& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Nil>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, std::vector<DeepValue>>) {
          auto arr = nlohmann::json::array();
          for (const auto& e : x) arr.push_back(to_json(e));
          return arr;
        } else {
          return x;
        }
      },
      v.data);
}

nlohmann::json to_json(const Value& v, const Heap& heap) { return to_json(materialize(v, heap)); }

}  // namespace mend::interp
