#pragma once

#include "dscore/service/corpus.hpp"

#include <nlohmann/json.hpp>

#include <string_view>

namespace dscore::service {

extern const char* const kSystemPrompt;

/// [{role: system, content: kSystemPrompt}, {role: user, content: source}].
/// Throws std::invalid_argument for empty source.
nlohmann::json emit_prompt(std::string_view original_decompiled);
nlohmann::json emit_prompt(const FunctionRecord& record);

}  // namespace dscore::service
