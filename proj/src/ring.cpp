#include "digitx/ring.hpp"

#include <sstream>

namespace digitx {

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (BigInt d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimePowerModulus::PrimePowerModulus(BigInt p, unsigned e) : p_(std::move(p)), e_(e) {
    if (e_ < 1) throw InvalidParams("exponent e must be >= 1");
    if (!is_prime(p_)) {
        std::ostringstream msg;
        msg << "p must be prime, got " << p_;
        throw InvalidParams(msg.str());
    }
    modulus_ = pow_u(p_, e_);
}

Residue PrimePowerModulus::residue(BigInt v) const { return Residue(std::move(v), *this); }

void Residue::require_same_context(const Residue& a, const Residue& b) {
    if (a.ctx_ != b.ctx_) {
        std::ostringstream msg;
        msg << "mixed moduli " << a.ctx_.p() << "^" << a.ctx_.e() << " and " << b.ctx_.p()
            << "^" << b.ctx_.e();
        throw ContextMismatch(msg.str());
    }
}

BigInt ord_p(const PrimePowerModulus& m, const BigInt& n) {
    if (n < 0) throw InvalidParams("ord_p requires n >= 0");
    BigInt total = 0;
    BigInt q = n / m.p();
    while (q > 0) {
        total += q;
        q /= m.p();
    }
    return total;
}

BigInt ord_inv(const PrimePowerModulus& m, const BigInt& target) {
    if (target < 0) throw InvalidParams("ord_inv requires e >= 0");
    if (target == 0) return 0;
    // ord_p(n!) only grows at multiples of p, by the valuation of n itself.
    BigInt running = 0;
    BigInt n = 0;
    while (running < target) {
        n += m.p();
        BigInt k = n;
        while (k % m.p() == 0) {
            running += 1;
            k /= m.p();
        }
    }
    return n;
}

Residue invert_unit(const Residue& a) {
    if (a.value() % a.context().p() == 0) {
        std::ostringstream msg;
        msg << a.value() << " is not a unit mod " << a.context().p() << "^"
            << a.context().e();
        throw NonUnit(msg.str());
    }
    auto inv = try_mod_inverse(a.value(), a.context().modulus());
    // A residue coprime to p is always invertible mod p^e.
    if (!inv) throw NonUnit("inversion failed for a residue coprime to p");
    return Residue(*inv, a.context());
}

} // namespace digitx
