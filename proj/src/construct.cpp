#include "digitx/construct.hpp"

#include <sstream>

namespace digitx {

namespace {

constexpr std::uint64_t kSelfCheckPointGuard = 100'000'000ull;

bool self_check_enabled(const PrimePowerModulus& ctx, const CheckOptions& opts) {
    return ctx.modulus() <= opts.self_check_limit;
}

[[noreturn]] void self_check_failed(const char* what, const BigInt& p, unsigned e,
                                    std::uint64_t x) {
    std::ostringstream msg;
    msg << what << " self-check failed for p=" << p << " e=" << e << " at x=" << x;
    throw SelfCheckError(msg.str());
}

// Exhaustively checks f(x) = x mod p (as a congruence mod p^e) over all of
// Z/p^e.
void check_extraction(const char* what, const Poly& f, const CheckOptions& opts) {
    const PrimePowerModulus& ctx = f.context();
    if (!self_check_enabled(ctx, opts)) return;
    const auto points = to_u64(ctx.modulus());
    const auto p64 = to_u64(ctx.p());
    auto bad = first_violation(
        f, *points,
        [&](std::uint64_t x, const BigInt& value) {
            return p64 ? value == x % *p64 : value == BigInt(x) % ctx.p();
        },
        opts.jobs);
    if (bad) self_check_failed(what, ctx.p(), ctx.e(), *bad);
}

void check_vanishing(const char* what, const Poly& f, const CheckOptions& opts) {
    const PrimePowerModulus& ctx = f.context();
    if (!self_check_enabled(ctx, opts)) return;
    const auto points = to_u64(ctx.modulus());
    auto bad = first_violation(
        f, *points, [](std::uint64_t, const BigInt& value) { return value == 0; },
        opts.jobs);
    if (bad) self_check_failed(what, ctx.p(), ctx.e(), *bad);
}

void validate(const BigInt& p, unsigned e) {
    if (e < 1) throw InvalidParams("exponent e must be >= 1");
    if (!is_prime(p)) {
        std::ostringstream msg;
        msg << "p must be prime, got " << p;
        throw InvalidParams(msg.str());
    }
}

} // namespace

Poly lift_poly(const BigInt& p, unsigned e, const CheckOptions& opts) {
    validate(p, e);
    PrimePowerModulus lifted(p, e + 1); // ring the result lives in
    PrimePowerModulus base(p, e);       // ring the interpolant lives in

    const auto p_points = to_u64(p);
    if (!p_points || *p_points > kSelfCheckPointGuard) {
        throw GuardExceeded("lift interpolation over p nodes refused for this p");
    }

    // h must hit (z0 - z0^p)/p mod p^e at every z0 in [p]; z0 - z0^p is
    // divisible by p, so the division below is exact on canonical values.
    std::vector<BigInt> values(*p_points);
    for (std::uint64_t z0 = 0; z0 < *p_points; ++z0) {
        BigInt t = powmod(z0, p, lifted.modulus());
        values[z0] = mod_floor(BigInt(z0) - t, lifted.modulus()) / p;
    }
    values = finite_differences_table(base, std::move(values));

    // Newton coefficients b_u / u!; every u! with u < p is a unit mod p^e.
    std::vector<BigInt> newton(values.size());
    BigInt factorial = 1;
    for (std::uint64_t u = 0; u < *p_points; ++u) {
        if (u > 0) factorial = factorial * u % base.modulus();
        auto inv = try_mod_inverse(factorial, base.modulus());
        if (!inv) throw VerificationFailure("interpolation denominator was not a unit");
        newton[u] = values[u] * *inv % base.modulus();
    }
    Poly h = from_newton(NewtonPoly::from_coeffs(base, std::move(newton)));

    std::vector<BigInt> coeffs(static_cast<std::size_t>(*p_points) + 1, 0);
    for (std::size_t i = 0; i < h.coeffs().size(); ++i) coeffs[i] = h.coeffs()[i] * p;
    coeffs[coeffs.size() - 1] += 1; // x^p + p*h(x)
    Poly f = Poly::from_coeffs(lifted, std::move(coeffs));

    // Defining property, streamed over every argument mod p^{e+1}: whenever
    // y mod p^{e'} lands in [p] it is the digit the lift must preserve.
    if (self_check_enabled(base, opts)) {
        const auto points = to_u64(lifted.modulus());
        if (points && *points <= kSelfCheckPointGuard) {
            std::vector<BigInt> digit_mod(e + 2), value_mod(e + 2);
            for (unsigned k = 0; k <= e + 1; ++k) digit_mod[k] = pow_u(p, k);
            auto bad = first_violation(
                f, *points,
                [&](std::uint64_t y, const BigInt& value) {
                    for (unsigned ep = 1; ep <= e; ++ep) {
                        BigInt z0 = BigInt(y) % digit_mod[ep];
                        if (z0 >= p) continue;
                        if (value % digit_mod[ep + 1] != z0) return false;
                    }
                    return true;
                },
                opts.jobs);
            if (bad) self_check_failed("lift_poly", p, e, *bad);
        }
    }
    return f;
}

Poly lowest_digit_poly_hs15(const BigInt& p, unsigned e, const CheckOptions& opts) {
    validate(p, e);
    PrimePowerModulus ctx(p, e);
    Poly g = Poly::identity(ctx);
    if (e >= 2) {
        Poly lift = lift_poly(p, e, opts);
        // Carry the lift into Z/p^e before composing.
        Poly step = Poly::from_coeffs(ctx, lift.coeffs());
        for (unsigned i = 1; i < e; ++i) g = poly_compose(step, g);
    }
    if (!g.is_monic() || BigInt(*g.degree()) != pow_u(p, e - 1)) {
        throw SelfCheckError("composed extractor must be monic of degree p^(e-1)");
    }
    check_extraction("lowest_digit_poly_hs15", g, opts);
    return g;
}

Poly zero_poly_fermat(const BigInt& p, unsigned e, const CheckOptions& opts) {
    validate(p, e);
    PrimePowerModulus ctx(p, e);
    const auto p_sz = to_u64(p);
    if (!p_sz || *p_sz > kSelfCheckPointGuard) {
        throw GuardExceeded("x^p - x has too many coefficients for this p");
    }
    std::vector<BigInt> base_coeffs(static_cast<std::size_t>(*p_sz) + 1, 0);
    base_coeffs[1] = ctx.reduce(-1);
    base_coeffs[*p_sz] += 1;
    Poly base = Poly::from_coeffs(ctx, std::move(base_coeffs));
    Poly z = Poly::constant(ctx, 1);
    for (unsigned i = 0; i < e; ++i) z = poly_mul(z, base);
    if (!z.is_monic()) throw SelfCheckError("null polynomial must be monic");
    check_vanishing("zero_poly_fermat", z, opts);
    return z;
}

Poly zero_poly_minimal(const BigInt& p, unsigned e, const CheckOptions& opts) {
    validate(p, e);
    PrimePowerModulus ctx(p, e);
    BigInt d = ord_inv(ctx, e);
    const auto d_sz = to_u64(d);
    if (!d_sz || *d_sz > kSelfCheckPointGuard) {
        throw GuardExceeded("minimal null polynomial degree too large to build");
    }
    Poly z = Poly::constant(ctx, 1);
    for (std::uint64_t i = 0; i < *d_sz; ++i) {
        z = poly_mul(z, Poly::from_coeffs(ctx, {ctx.reduce(-BigInt(i)), 1}));
    }
    if (!z.is_monic()) throw SelfCheckError("null polynomial must be monic");
    check_vanishing("zero_poly_minimal", z, opts);
    return z;
}

std::string to_string(Reducer r) {
    return r == Reducer::fermat ? "fermat" : "minimal";
}

Poly lowest_digit_poly(const BigInt& p, unsigned e, Reducer reducer,
                       const CheckOptions& opts) {
    validate(p, e);
    Poly g = lowest_digit_poly_hs15(p, e, opts);
    Poly z = reducer == Reducer::fermat ? zero_poly_fermat(p, e, opts)
                                        : zero_poly_minimal(p, e, opts);
    Poly reduced = poly_mod_monic(g, z);
    check_extraction("lowest_digit_poly", reduced, opts);
    return reduced;
}

BigInt ch18_degree(const BigInt& p, unsigned e) {
    if (e < 1) throw InvalidParams("exponent e must be >= 1");
    return BigInt(e - 1) * (p - 1) + 1;
}

} // namespace digitx
