#pragma once

#include <array>
#include <cstdio>
#include <random>
#include <string>
#include <sys/wait.h>
#include <utility>
#include <vector>

#include "digitx/oracle.hpp"
#include "digitx/poly.hpp"

namespace testsupport {

using digitx::BigInt;
using digitx::PrimePowerModulus;

// The desk-scale grid used across the suites: p in {2,3,5,7}, e in 1..4.
inline std::vector<std::pair<unsigned, unsigned>> grid() {
    std::vector<std::pair<unsigned, unsigned>> points;
    for (unsigned p : {2, 3, 5, 7}) {
        for (unsigned e = 1; e <= 4; ++e) {
            if (digitx::pow_u(p, e) <= 5000) points.emplace_back(p, e);
        }
    }
    return points;
}

// Independent ord oracle: factor n! directly.
inline BigInt factorial_valuation(const BigInt& p, unsigned n) {
    BigInt fact = 1;
    for (unsigned i = 2; i <= n; ++i) fact *= i;
    BigInt count = 0;
    while (fact != 0 && fact % p == 0) {
        fact /= p;
        ++count;
    }
    return count;
}

// Independent digit oracle: native base conversion.
inline std::vector<BigInt> native_digits(const BigInt& p, unsigned e, BigInt x) {
    std::vector<BigInt> digits(e);
    for (unsigned i = 0; i < e; ++i) {
        digits[i] = x % p;
        x /= p;
    }
    return digits;
}

struct CommandResult {
    int exit_code;
    std::string out;
};

// Runs a shell command, capturing stdout; stderr is dropped.
inline CommandResult run_command(const std::string& cmd) {
    std::string full = cmd + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

// Exhaustive search over all integer polynomials of degree <= max_degree for
// one matching the target table everywhere on Z/p^e. Independent of the
// finite-difference oracle: c0 and c1 are pinned by the values at x = 0 and
// x = 1 (the c1 column has unit coefficient, so each choice of the remaining
// coefficients extends uniquely), the rest is a plain odometer.
inline bool brute_force_representable(const digitx::TargetFunction& target,
                                      std::uint64_t max_degree) {
    const std::uint64_t m = digitx::to_u64(target.ctx.modulus()).value();
    const std::uint64_t n = m;
    std::vector<std::uint64_t> t(n);
    for (std::uint64_t i = 0; i < n; ++i) t[i] = target.values[i].convert_to<std::uint64_t>();

    if (max_degree == 0) {
        for (std::uint64_t x = 1; x < n; ++x) {
            if (t[x] != t[0]) return false;
        }
        return true;
    }

    const std::uint64_t c0 = t[0];
    const std::size_t free_coeffs = max_degree >= 2 ? max_degree - 1 : 0;
    std::vector<std::uint64_t> c(free_coeffs, 0); // c[i] is the coefficient of x^{i+2}
    while (true) {
        std::uint64_t tail = 0;
        for (auto v : c) tail = (tail + v) % m;
        const std::uint64_t c1 = (t[1] + 2 * m - c0 - tail) % m;

        bool match = true;
        for (std::uint64_t x = 2; x < n && match; ++x) {
            std::uint64_t acc = 0;
            for (std::size_t i = free_coeffs; i-- > 0;) {
                acc = (acc * x + c[i]) % m;
            }
            acc = (acc * x + c1) % m;
            acc = (acc * x + c0) % m;
            match = acc == t[x];
        }
        if (match) return true;

        std::size_t pos = 0;
        while (pos < free_coeffs && ++c[pos] == m) {
            c[pos] = 0;
            ++pos;
        }
        if (pos == free_coeffs) return false;
    }
}

inline std::mt19937_64 test_rng(std::uint64_t seed = 0x5eed) { return std::mt19937_64(seed); }

inline digitx::Poly random_poly(const PrimePowerModulus& ctx, std::size_t max_degree,
                                std::mt19937_64& rng) {
    const std::uint64_t m = digitx::to_u64(ctx.modulus()).value();
    std::uniform_int_distribution<std::uint64_t> coeff(0, m - 1);
    std::uniform_int_distribution<std::size_t> deg(0, max_degree);
    std::vector<BigInt> coeffs(deg(rng) + 1);
    for (auto& v : coeffs) v = coeff(rng);
    return digitx::Poly::from_coeffs(ctx, std::move(coeffs));
}

} // namespace testsupport
