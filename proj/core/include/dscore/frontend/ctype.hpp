#pragma once

#include <cstdint>
#include <string>

namespace dscore::frontend {

enum class TypeKind : std::uint8_t { SignedInt, UnsignedInt, Void, CodeAddress };

/// Scalar type of the decompiled-C subset. Aggregates are never values; arrays
/// live in the declaration and decay to a pointer on use.
struct CType {
    TypeKind kind = TypeKind::SignedInt;
    int width_bits = 32;
    int indirection = 0;

    static constexpr CType signed_int(int bits) { return {TypeKind::SignedInt, bits, 0}; }
    static constexpr CType unsigned_int(int bits) { return {TypeKind::UnsignedInt, bits, 0}; }
    static constexpr CType void_type() { return {TypeKind::Void, 8, 0}; }
    static constexpr CType code_type() { return {TypeKind::CodeAddress, 8, 0}; }

    [[nodiscard]] constexpr bool is_pointer() const { return indirection > 0; }
    [[nodiscard]] constexpr bool is_void() const { return indirection == 0 && kind == TypeKind::Void; }
    [[nodiscard]] constexpr bool is_code() const { return indirection == 0 && kind == TypeKind::CodeAddress; }
    [[nodiscard]] constexpr bool is_integer() const {
        return indirection == 0 && (kind == TypeKind::SignedInt || kind == TypeKind::UnsignedInt);
    }
    [[nodiscard]] constexpr bool is_scalar() const { return is_pointer() || is_integer(); }
    [[nodiscard]] constexpr bool is_signed() const { return indirection == 0 && kind == TypeKind::SignedInt; }

    /// Width of a value of this type as held in a register.
    [[nodiscard]] constexpr int value_width() const { return is_pointer() ? 64 : width_bits; }

    [[nodiscard]] constexpr CType pointee() const { return {kind, width_bits, indirection - 1}; }
    [[nodiscard]] constexpr CType address_of() const { return {kind, width_bits, indirection + 1}; }

    /// Element size used for pointer arithmetic; void and code count as one byte (GNU C).
    [[nodiscard]] constexpr std::uint64_t pointee_size() const {
        const CType p = pointee();
        if (p.is_pointer()) return 8;
        if (p.is_void() || p.is_code()) return 1;
        return static_cast<std::uint64_t>(p.width_bits / 8);
    }

    [[nodiscard]] constexpr std::uint64_t size_bytes() const {
        if (is_pointer()) return 8;
        if (is_void() || is_code()) return 1;
        return static_cast<std::uint64_t>(width_bits / 8);
    }

    friend constexpr bool operator==(const CType&, const CType&) = default;
};

/// Canonical C spelling, e.g. "unsigned long *".
std::string to_string(const CType& type);

inline constexpr CType kInt = CType::signed_int(32);
inline constexpr CType kLong = CType::signed_int(64);
inline constexpr CType kULong = CType::unsigned_int(64);

/// Integer promotion: anything narrower than int becomes int.
constexpr CType promote(const CType& t) {
    if (t.is_pointer()) return t;
    if (t.width_bits < 32) return kInt;
    return t;
}

/// Usual arithmetic conversions for two integer operands.
constexpr CType common_type(const CType& a, const CType& b) {
    const CType pa = promote(a);
    const CType pb = promote(b);
    if (pa.width_bits == pb.width_bits) {
        if (pa.kind == TypeKind::UnsignedInt || pb.kind == TypeKind::UnsignedInt)
            return CType::unsigned_int(pa.width_bits);
        return pa;
    }
    return pa.width_bits > pb.width_bits ? pa : pb;
}

}  // namespace dscore::frontend
