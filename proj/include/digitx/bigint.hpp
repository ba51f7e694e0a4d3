#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>

#include "digitx/errors.hpp"

namespace digitx {

// Exact arbitrary-precision integer. All ring arithmetic in this library is
// defined in terms of BigInt; fixed-width fast paths exist only where a bound
// check proves no intermediate can overflow.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow_u(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

// Smallest non-negative representative of v mod m. Requires m > 0.
inline BigInt mod_floor(const BigInt& v, const BigInt& m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r;
}

inline BigInt powmod(BigInt base, BigInt exp, const BigInt& m) {
    base = mod_floor(base, m);
    BigInt acc = mod_floor(1, m);
    while (exp > 0) {
        if ((exp & 1) != 0) acc = acc * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return acc;
}

// Extended Euclid; nullopt when gcd(a, m) != 1.
inline std::optional<BigInt> try_mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt r0 = mod_floor(a, m), r1 = m;
    BigInt x0 = 1, x1 = 0;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        x0 -= q * x1;
        std::swap(x0, x1);
    }
    if (r0 != 1) return std::nullopt;
    return mod_floor(x0, m);
}

inline std::optional<std::uint64_t> to_u64(const BigInt& v) {
    if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    return v.convert_to<std::uint64_t>();
}

} // namespace digitx
