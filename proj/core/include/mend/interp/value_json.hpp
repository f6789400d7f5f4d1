#pragma once

#include <nlohmann/json.hpp>

#include "mend/interp/value.hpp"

namespace mend::interp {

// nil <-> null, int <-> integer, bool <-> bool, string <-> string,
// array <-> list. Throws std::invalid_argument for other JSON (floats,
// objects).
DeepValue deep_value_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DeepValue& v);
nlohmann::json to_json(const Value& v, const Heap& heap);

}  // namespace mend::interp
