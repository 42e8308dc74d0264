#pragma once

#include <cstdint>
#include <string>

#include "wrc/error.hpp"

namespace wrc {

// 128-bit signed integers are the exact-arithmetic workhorse for all rank
// statistics: wide enough for the n <= 200, p <= 12 contract without ever
// touching floating point before the final division.
using int128 = __int128;

namespace detail {

inline int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer addition overflows 128 bits");
    return r;
}

inline int128 checked_sub(int128 a, int128 b) {
    int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer subtraction overflows 128 bits");
    return r;
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer multiplication overflows 128 bits");
    return r;
}

/// base^exp with overflow checking; exp >= 0.
inline int128 checked_ipow(int128 base, int exp) {
    int128 r = 1;
    int128 b = base;
    int e = exp;
    while (e > 0) {
        if (e & 1) r = checked_mul(r, b);
        e >>= 1;
        if (e > 0) b = checked_mul(b, b);
    }
    return r;
}

inline std::string int128_to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
    std::string s;
    while (u > 0) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

}  // namespace detail
}  // namespace wrc
