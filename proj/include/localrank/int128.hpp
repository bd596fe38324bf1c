#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace localrank {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? (u128)(-(v + 1)) + 1 : (u128)v;
    std::string s;
    while (u > 0) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

inline i128 parse_i128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') { neg = (s[0] == '-'); i = 1; }
    if (i == s.size()) throw std::invalid_argument("bad integer literal: " + s);
    i128 v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("bad integer literal: " + s);
        v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
}

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
    a = abs128(a); b = abs128(b);
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a;
}

// Checked multiply; throws on overflow past the 128-bit range.
inline i128 mul_checked(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("128-bit overflow in multiply");
    return r;
}

inline i128 add_checked(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("128-bit overflow in add");
    return r;
}

// Floor of sqrt for non-negative v (long-double seed, exact fixup).
inline i128 isqrt128(i128 v) {
    if (v < 0) throw std::domain_error("isqrt of negative value");
    if (v < 2) return v;
    u128 x = (u128)v;
    u128 r = (u128)__builtin_sqrtl((long double)x);
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return (i128)r;
}

namespace detail {
struct Sq64Table {
    bool ok[64] = {};
    constexpr Sq64Table() {
        for (int k = 0; k < 64; ++k) ok[k * k % 64] = true;
    }
};
inline constexpr Sq64Table kSq64{};
}  // namespace detail

inline bool is_square128(i128 v, i128* root = nullptr) {
    if (v < 0) return false;
    // quadratic residues mod 64 knock out most non-squares cheaply
    if (!detail::kSq64.ok[(unsigned)((u128)v & 63)]) return false;
    i128 r = isqrt128(v);
    if (r * r == v) { if (root) *root = r; return true; }
    return false;
}

inline int valuation(i128 v, i64 p) {
    if (v == 0) throw std::domain_error("valuation of zero");
    int k = 0;
    while (v % p == 0) { v /= p; ++k; }
    return k;
}

}  // namespace localrank
