#pragma once

#include <cstdint>
#include <string>

#include "digitx/poly.hpp"

namespace digitx {

// Controls the exhaustive defining-property check every constructor runs on
// its own output. The check covers all of Z/p^e (and all lift arguments) when
// p^e <= self_check_limit; above that it is skipped. Failures throw
// SelfCheckError and always indicate a bug.
struct CheckOptions {
    std::uint64_t self_check_limit = 100'000;
    unsigned jobs = 1;
};

// Degree-p lifting polynomial over Z/p^{e+1}: for every z0 in [p], every
// 1 <= e' <= e and every integer z1,
//     F(z0 + p^{e'} z1) = z0 (mod p^{e'+1}).
// Built as x^p + p*h(x) with h the Newton interpolant of (z0 - z0^p)/p over
// z0 in [p]; the divided-difference denominators u! (u < p) are units.
Poly lift_poly(const BigInt& p, unsigned e, const CheckOptions& opts = {});

// Degree-p^{e-1} lowest-digit extractor over Z/p^e obtained by composing the
// lifting polynomial with itself e-1 times (the identity x for e = 1):
//     G(z0 + p z1) = z0 (mod p^e) for z0 in [p].
Poly lowest_digit_poly_hs15(const BigInt& p, unsigned e, const CheckOptions& opts = {});

// Monic degree-ep null polynomial (x^p - x)^e: vanishes at every point of
// Z/p^e.
Poly zero_poly_fermat(const BigInt& p, unsigned e, const CheckOptions& opts = {});

// Monic null polynomial of the least possible degree, prod_{i<d} (x - i)
// with d = ord_inv(e).
Poly zero_poly_minimal(const BigInt& p, unsigned e, const CheckOptions& opts = {});

enum class Reducer {
    fermat,  // reduce by (x^p - x)^e; resulting degree <= ep - 1
    minimal, // reduce by the minimal null polynomial; degree <= ord_inv(e) - 1
};

std::string to_string(Reducer r);

// Lowest-digit extractor with the same induced function as the composed
// extractor but degree capped by the chosen null polynomial.
Poly lowest_digit_poly(const BigInt& p, unsigned e, Reducer reducer,
                       const CheckOptions& opts = {});

// Degree (e-1)(p-1)+1 of the comparison construction; the polynomial itself
// is not built here.
BigInt ch18_degree(const BigInt& p, unsigned e);

} // namespace digitx
