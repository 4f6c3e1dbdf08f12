#pragma once

#include "dscore/frontend/ast.hpp"

#include <cstdint>
#include <vector>

namespace dscore::symbolic {

/// Fixed addresses shared by the symbolic engine and the concrete interpreter.
/// Pointer parameters each receive a disjoint fresh region; memory-resident
/// locals and string literals live in their own regions.
struct MemoryLayout {
    static constexpr std::uint64_t kParamBase = 0x10000000;
    static constexpr std::uint64_t kParamStride = 0x100000;
    static constexpr std::uint64_t kLocalBase = 0x20000000;
    static constexpr std::uint64_t kStringBase = 0x30000000;

    std::vector<std::uint64_t> pointer_param;  // by parameter index; 0 for non-pointers
    std::vector<std::uint64_t> var_address;    // by var_id; 0 when held in a register
    std::vector<std::uint64_t> string_address;  // by string_id
};

MemoryLayout compute_layout(const frontend::FunctionAst& fn);

}  // namespace dscore::symbolic
