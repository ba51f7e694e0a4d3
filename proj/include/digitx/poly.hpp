#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "digitx/ring.hpp"

namespace digitx {

// Integer-coefficient polynomial over Z/p^e in the monomial basis.
// Coefficients are canonical residues; trailing zeros are trimmed, so the
// zero polynomial has an empty coefficient vector and no degree.
class Poly {
public:
    static Poly zero(PrimePowerModulus ctx) { return Poly(std::move(ctx), {}); }
    static Poly constant(PrimePowerModulus ctx, const BigInt& c);
    static Poly identity(PrimePowerModulus ctx); // the polynomial x
    static Poly monomial(PrimePowerModulus ctx, std::size_t degree, const BigInt& c = 1);
    static Poly from_coeffs(PrimePowerModulus ctx, std::vector<BigInt> coeffs);

    const PrimePowerModulus& context() const { return ctx_; }
    bool is_zero() const { return c_.empty(); }
    // No degree for the zero polynomial; callers must handle the sentinel
    // rather than arithmetic on -1.
    std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }
    const std::vector<BigInt>& coeffs() const { return c_; }
    // Coefficient of x^i; zero beyond the stored range.
    const BigInt& coeff(std::size_t i) const;
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.ctx_ == b.ctx_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    Poly(PrimePowerModulus ctx, std::vector<BigInt> canonical)
        : ctx_(std::move(ctx)), c_(std::move(canonical)) {}

    PrimePowerModulus ctx_;
    std::vector<BigInt> c_;
};

// Polynomial in the falling-factorial basis: coefficient u multiplies
// x(x-1)...(x-u+1). Same canonical-form conventions as Poly.
class NewtonPoly {
public:
    static NewtonPoly zero(PrimePowerModulus ctx) { return NewtonPoly(std::move(ctx), {}); }
    static NewtonPoly from_coeffs(PrimePowerModulus ctx, std::vector<BigInt> coeffs);

    const PrimePowerModulus& context() const { return ctx_; }
    bool is_zero() const { return c_.empty(); }
    std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }
    const std::vector<BigInt>& coeffs() const { return c_; }

    friend bool operator==(const NewtonPoly& a, const NewtonPoly& b) {
        return a.ctx_ == b.ctx_ && a.c_ == b.c_;
    }
    friend bool operator!=(const NewtonPoly& a, const NewtonPoly& b) { return !(a == b); }

private:
    NewtonPoly(PrimePowerModulus ctx, std::vector<BigInt> canonical)
        : ctx_(std::move(ctx)), c_(std::move(canonical)) {}

    PrimePowerModulus ctx_;
    std::vector<BigInt> c_;
};

Residue poly_eval(const Poly& f, const Residue& x);
Residue poly_eval(const NewtonPoly& f, const Residue& x);

Poly poly_add(const Poly& f, const Poly& g);
Poly poly_sub(const Poly& f, const Poly& g);
Poly poly_mul(const Poly& f, const Poly& g);
Poly poly_scale(const Poly& f, const BigInt& c);

// f(g(x)), reduced mod p^e.
Poly poly_compose(const Poly& f, const Poly& g);

struct PolyDivMod {
    Poly quotient;
    Poly remainder;
};

// Repeated-subtraction division by a monic divisor: f = q*m + r with
// deg r < deg m. No leading-coefficient inversion is ever needed.
PolyDivMod poly_divmod_monic(const Poly& f, const Poly& m);
Poly poly_mod_monic(const Poly& f, const Poly& m);

// Basis changes via synthetic division by (x-0), (x-1), ...; both directions
// preserve the induced function on Z/p^e and round-trip exactly.
NewtonPoly to_newton(const Poly& f);
Poly from_newton(const NewtonPoly& g);

// Forward differences at 0: result[u] = Delta^u(values)(0) mod p^e.
std::vector<Residue> finite_differences(std::span<const Residue> values);
// Working form used by the oracle; `values` are canonical residues mod m.
std::vector<BigInt> finite_differences_table(const PrimePowerModulus& m,
                                             std::vector<BigInt> values);

// Evaluates f at x = 0..n_points-1 and reports the smallest x for which
// `ok(x, f(x))` is false, or nullopt when every point passes. With jobs > 1
// the scan is chunked over threads; the reported x is still the smallest.
std::optional<std::uint64_t> first_violation(
    const Poly& f, std::uint64_t n_points,
    const std::function<bool(std::uint64_t, const BigInt&)>& ok, unsigned jobs = 1);

// Value table f(0), f(1), ..., f(n_points-1).
std::vector<BigInt> eval_table(const Poly& f, std::uint64_t n_points, unsigned jobs = 1);

} // namespace digitx
