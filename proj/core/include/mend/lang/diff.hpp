#pragma once

#include <string>
#include <string_view>

#include "mend/lang/ast.hpp"

namespace mend::lang {

// Unified diff (3 lines of context) between the canonical renderings of two
// programs. Empty when they print identically.
std::string diff_render(const Program& before, const Program& after);

// Same, over arbitrary text.
std::string diff_text(std::string_view before, std::string_view after,
                      std::string_view before_label = "before",
                      std::string_view after_label = "after");

}  // namespace mend::lang
