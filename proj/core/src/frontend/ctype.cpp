#include "dscore/frontend/ctype.hpp"

namespace dscore::frontend {

std::string to_string(const CType& type) {
    std::string base;
    switch (type.kind) {
        case TypeKind::Void: base = "void"; break;
        case TypeKind::CodeAddress: base = "code"; break;
        case TypeKind::SignedInt:
        case TypeKind::UnsignedInt: {
            const char* word = "int";
            switch (type.width_bits) {
                case 8: word = "char"; break;
                case 16: word = "short"; break;
                case 64: word = "long"; break;
                default: break;
            }
            base = type.kind == TypeKind::UnsignedInt ? std::string("unsigned ") + word : std::string(word);
            break;
        }
    }
    if (type.indirection > 0) base += ' ';
    base.append(static_cast<std::size_t>(type.indirection), '*');
    return base;
}

}  // namespace dscore::frontend
