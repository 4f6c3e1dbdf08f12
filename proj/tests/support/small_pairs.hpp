#pragma once

namespace fixtures {

struct SmallPair {
    const char* name;
    const char* reference;
    const char* candidate;
};

// Small functions over at most two narrow parameters, for exhaustive checks.
inline const SmallPair kSmallPairs[] = {
    {"double_by_add", "int f(int x){ return x * 2; }", "int f(int x){ return x + x; }"},
    {"shift_vs_triple", "int f(int x){ return x << 1; }", "int f(int x){ return x * 3; }"},
    {"signed_halving", "int f(char x){ return x / 2; }", "int f(char x){ return x >> 1; }"},
    {"unsigned_halving", "unsigned f(unsigned char x){ return x / 2; }", "unsigned f(unsigned char x){ return x >> 1; }"},
    {"abs_forms", "int f(int x){ if (x < 0) return -x; return x; }", "int f(int x){ return x < 0 ? -x : x; }"},
    {"max_forms", "long f(long a, long b){ return a > b ? a : b; }",
     "long f(long a, long b){ if (a < b) return b; return a; }"},
    {"max_vs_min", "long f(long a, long b){ return a > b ? a : b; }", "long f(long a, long b){ return a > b ? b : a; }"},
    {"guard_boundary_call", "int f(int x){ if (x > 5) puts(\"a\"); return 0; }",
     "int f(int x){ if (x >= 5) puts(\"a\"); return 0; }"},
    {"dropped_call", "int f(int x){ puts(\"a\"); return 1; }", "int f(int x){ return 1; }"},
    {"unrolled_sum", "int f(unsigned char n){ int s = 0; int i; for (i = 0; i < 4; i++) s += n; return s; }",
     "int f(unsigned char n){ return n * 4; }"},
    {"concat_bytes", "int f(int x){ return (x & 0xff) | 0x100; }", "int f(int x){ return CONCAT11(1, (char)x); }"},
    {"subpiece_byte", "char f(int x){ return SUB41(x, 1); }", "char f(int x){ return (char)(x >> 8); }"},
    {"switch_as_chain", "int f(int c){ switch (c) { case 1: return 10; case 2: return 20; default: return 0; } }",
     "int f(int c){ if (c == 1) return 10; if (c == 2) return 20; return 0; }"},
    {"switch_missing_case", "int f(int c){ switch (c) { case 1: return 10; case 2: return 20; default: return 0; } }",
     "int f(int c){ if (c == 1) return 10; return 0; }"},
    {"signed_mod_vs_mask", "int f(int x){ return x % 4; }", "int f(int x){ return x & 3; }"},
    {"unsigned_mod_vs_mask", "unsigned f(unsigned x){ return x % 4; }", "unsigned f(unsigned x){ return x & 3; }"},
    {"guarded_division", "int f(int a, int b){ return a / b; }",
     "int f(int a, int b){ if (b == 0) return -1; return a / b; }"},
    {"pointer_param_memory", "long f(long *p){ p[1] = 5; return p[1] + p[0]; }", "long f(long *p){ return 5; }"},
    {"local_array", "int f(int x){ int a[4]; a[0] = x; a[1] = x + 1; return a[0] + a[1]; }",
     "int f(int x){ return 2 * x + 1; }"},
    {"goto_forward", "int f(int x){ int r = 0; if (x) goto done; r = 7; done: return r; }",
     "int f(int x){ return x ? 0 : 7; }"},
    {"short_circuit_order", "int f(int x){ if (x > 0 && g()) return 1; return 0; }",
     "int f(int x){ if (g() && x > 0) return 1; return 0; }"},
    {"return_width_long_int", "long f(int x){ return x; }", "int f(int x){ return x; }"},
    {"undefined8_vs_int", "undefined8 f(int x){ return 0xffffffea; }", "int f(int x){ return -22; }"},
    {"undefined8_vs_wrong_int", "undefined8 f(int x){ return 0xffffffea; }", "int f(int x){ return -65538; }"},
    {"void_stores", "void f(long *p){ *p = 1; }", "void f(long *p){ *p = 2; }"},
    {"short_overflow", "int f(short a, short b){ return a + b; }", "int f(short a, short b){ return (short)(a + b); }"},
    {"byte_product", "int f(unsigned char a, unsigned char b){ return a * b; }",
     "int f(unsigned char a, unsigned char b){ return (int)a * (int)b; }"},
    {"bit_count_loop", "int f(unsigned char x){ int n = 0; while (x) { x = x >> 1; n++; } return n; }",
     "int f(unsigned char x){ int n = 0; while (x != 0) { n++; x /= 2; } return n; }"},
    {"conditional_call", "int f(int x){ return x ? g() : 5; }", "int f(int x){ if (x) return 0; return 5; }"},
    {"pointer_difference", "long f(long *p){ long *q = p + 3; return q - p; }", "long f(long *p){ return 3; }"},
};

}  // namespace fixtures
