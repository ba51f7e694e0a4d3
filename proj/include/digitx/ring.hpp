#pragma once

#include <cstdint>

#include "digitx/bigint.hpp"

namespace digitx {

class Residue;

// Deterministic trial division up to sqrt(n).
bool is_prime(const BigInt& n);

// The residue ring Z/p^e for a prime p and exponent e >= 1. Every value in
// the library carries one of these as its context; operations on values from
// different contexts throw ContextMismatch.
class PrimePowerModulus {
public:
    PrimePowerModulus(BigInt p, unsigned e);

    const BigInt& p() const { return p_; }
    unsigned e() const { return e_; }
    const BigInt& modulus() const { return modulus_; }

    // Canonical representative in [0, p^e).
    BigInt reduce(const BigInt& v) const { return mod_floor(v, modulus_); }
    Residue residue(BigInt v) const;

    friend bool operator==(const PrimePowerModulus& a, const PrimePowerModulus& b) {
        return a.p_ == b.p_ && a.e_ == b.e_;
    }
    friend bool operator!=(const PrimePowerModulus& a, const PrimePowerModulus& b) {
        return !(a == b);
    }

private:
    BigInt p_;
    unsigned e_;
    BigInt modulus_;
};

// An element of Z/p^e, always held as its canonical representative.
class Residue {
public:
    Residue(BigInt value, PrimePowerModulus context)
        : ctx_(std::move(context)), v_(ctx_.reduce(std::move(value))) {}

    const BigInt& value() const { return v_; }
    const PrimePowerModulus& context() const { return ctx_; }

    friend Residue operator+(const Residue& a, const Residue& b) {
        require_same_context(a, b);
        return Residue(a.v_ + b.v_, a.ctx_);
    }
    friend Residue operator-(const Residue& a, const Residue& b) {
        require_same_context(a, b);
        return Residue(a.v_ - b.v_, a.ctx_);
    }
    friend Residue operator*(const Residue& a, const Residue& b) {
        require_same_context(a, b);
        return Residue(a.v_ * b.v_, a.ctx_);
    }
    friend Residue operator-(const Residue& a) { return Residue(-a.v_, a.ctx_); }

    friend bool operator==(const Residue& a, const Residue& b) {
        return a.ctx_ == b.ctx_ && a.v_ == b.v_;
    }
    friend bool operator!=(const Residue& a, const Residue& b) { return !(a == b); }

    static void require_same_context(const Residue& a, const Residue& b);

private:
    PrimePowerModulus ctx_;
    BigInt v_;
};

// Largest v >= 0 with p^v | n! (Legendre's sum over floor(n/p^i)).
BigInt ord_p(const PrimePowerModulus& m, const BigInt& n);

// Smallest n >= 0 with p^target | n!. Scans multiples of p with a running
// Legendre sum; only multiples of p change the valuation.
BigInt ord_inv(const PrimePowerModulus& m, const BigInt& target);

// Inverse of a unit mod p^e. Throws NonUnit when p | a.
Residue invert_unit(const Residue& a);

} // namespace digitx
