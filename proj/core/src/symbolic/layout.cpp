#include "dscore/symbolic/layout.hpp"

namespace dscore::symbolic {

namespace {

constexpr std::uint64_t align16(std::uint64_t v) { return (v + 15) & ~std::uint64_t{15}; }

}  // namespace

MemoryLayout compute_layout(const frontend::FunctionAst& fn) {
    MemoryLayout out;
    for (std::size_t i = 0; i < fn.params.size(); ++i) {
        out.pointer_param.push_back(fn.params[i].type.is_pointer()
                                        ? MemoryLayout::kParamBase + i * MemoryLayout::kParamStride
                                        : 0);
    }
    std::uint64_t cursor = MemoryLayout::kLocalBase;
    for (const frontend::VarInfo& v : fn.vars) {
        if (!v.memory_resident()) {
            out.var_address.push_back(0);
            continue;
        }
        out.var_address.push_back(cursor);
        cursor = align16(cursor + (v.storage_bytes() == 0 ? 1 : v.storage_bytes()));
    }
    cursor = MemoryLayout::kStringBase;
    for (const std::string& s : fn.strings) {
        out.string_address.push_back(cursor);
        cursor = align16(cursor + s.size() + 1);
    }
    return out;
}

}  // namespace dscore::symbolic
