#include "dscore/service/prompt.hpp"

#include <stdexcept>

namespace dscore::service {

const char* const kSystemPrompt =
    "You are a helpful assistant for improving the decompiled result from the user. The user will input the "
    "decompiled result from Ghidra. Please improve its readability while preserving its semantics. Please do not "
    "add comments. Please just output the improved code.";

nlohmann::json emit_prompt(std::string_view original_decompiled) {
    if (original_decompiled.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        throw std::invalid_argument("emit_prompt: empty source");
    }
    return nlohmann::json::array({
        {{"role", "system"}, {"content", kSystemPrompt}},
        {{"role", "user"}, {"content", std::string(original_decompiled)}},
    });
}

nlohmann::json emit_prompt(const FunctionRecord& record) { return emit_prompt(record.original_decompiled); }

}  // namespace dscore::service
