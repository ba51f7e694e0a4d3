#include "digitx/oracle.hpp"

#include <sstream>

namespace digitx {

namespace {

constexpr std::uint64_t kTableGuard = 100'000'000ull;
constexpr std::uint64_t kBruteForceGuard = 10'000'000ull;

std::uint64_t table_length(const PrimePowerModulus& m) {
    const auto n = to_u64(m.modulus());
    if (!n || *n > kTableGuard) {
        throw GuardExceeded("target table over Z/p^e larger than 10^8 entries refused");
    }
    return *n;
}

} // namespace

std::string to_string(TargetLabel label) {
    switch (label) {
        case TargetLabel::lowest_digit: return "lowest-digit";
        case TargetLabel::remove_low_digits: return "remove-low-digits";
        case TargetLabel::keep_low_digits: return "keep-low-digits";
        case TargetLabel::constant: return "constant";
        case TargetLabel::custom: return "custom";
    }
    return "custom";
}

TargetFunction TargetFunction::lowest_digit(const PrimePowerModulus& m) {
    const std::uint64_t n = table_length(m);
    std::vector<BigInt> values(n);
    for (std::uint64_t x = 0; x < n; ++x) values[x] = BigInt(x) % m.p();
    return {m, std::move(values), TargetLabel::lowest_digit, 0, 0};
}

TargetFunction TargetFunction::remove_low_digits(const PrimePowerModulus& m, unsigned r) {
    if (r < 1) throw InvalidParams("remove-low-digits requires r >= 1");
    const std::uint64_t n = table_length(m);
    BigInt pr = pow_u(m.p(), r);
    std::vector<BigInt> values(n);
    for (std::uint64_t x = 0; x < n; ++x) values[x] = BigInt(x) - BigInt(x) % pr;
    return {m, std::move(values), TargetLabel::remove_low_digits, r, 0};
}

TargetFunction TargetFunction::keep_low_digits(const PrimePowerModulus& m, unsigned r) {
    if (r < 1) throw InvalidParams("keep-low-digits requires r >= 1");
    const std::uint64_t n = table_length(m);
    BigInt pr = pow_u(m.p(), r);
    std::vector<BigInt> values(n);
    for (std::uint64_t x = 0; x < n; ++x) values[x] = BigInt(x) % pr;
    return {m, std::move(values), TargetLabel::keep_low_digits, r, 0};
}

TargetFunction TargetFunction::constant(const PrimePowerModulus& m, const BigInt& c) {
    const std::uint64_t n = table_length(m);
    std::vector<BigInt> values(n, m.reduce(c));
    return {m, std::move(values), TargetLabel::constant, 0, m.reduce(c)};
}

TargetFunction TargetFunction::custom(const PrimePowerModulus& m, std::vector<BigInt> values) {
    const std::uint64_t n = table_length(m);
    if (values.size() != n) {
        throw InvalidParams("custom target table must have exactly p^e entries");
    }
    for (auto& v : values) v = m.reduce(v);
    return {m, std::move(values), TargetLabel::custom, 0, 0};
}

OracleVerdict represent_function(const TargetFunction& target,
                                 std::optional<std::uint64_t> degree_cap,
                                 const CheckOptions& opts) {
    const PrimePowerModulus& ctx = target.ctx;
    const std::uint64_t n = table_length(ctx);
    if (target.values.size() != n) {
        throw InvalidParams("target table must have exactly p^e entries");
    }
    const BigInt& m = ctx.modulus();

    std::vector<BigInt> b = finite_differences_table(ctx, target.values);

    std::uint64_t top = 0; // exact minimal degree if representable
    for (std::uint64_t u = 0; u < n; ++u) {
        if (b[u] != 0) top = u;
    }
    if (degree_cap && top > *degree_cap) {
        std::ostringstream msg;
        msg << "minimal degree " << top << " exceeds cap " << *degree_cap;
        throw CapExceeded(top, msg.str());
    }

    // Solve u! * a_u = b_u (mod p^e) for u = 0..top. Writing u! = p^ord * w
    // with w a unit, solvability is exactly p^{min(e, ord)} | b_u, and the
    // smallest solution is (b_u / p^ord) * w^{-1} mod p^{e-ord}.
    std::vector<BigInt> newton(top + 1, 0);
    BigInt ord = 0;     // ord_p(u!)
    BigInt unit = 1;    // u! / p^ord mod p^e
    const BigInt e_big = ctx.e();
    for (std::uint64_t u = 0; u <= top; ++u) {
        if (u > 0) {
            BigInt k = u;
            while (k % ctx.p() == 0) {
                ord += 1;
                k /= ctx.p();
            }
            unit = unit * (k % m) % m;
        }
        BigInt capped = ord < e_big ? ord : e_big;
        BigInt divisor = pow_u(ctx.p(), capped.convert_to<unsigned>());
        if (b[u] % divisor != 0) {
            return NotRepresentable{u, divisor, b[u]};
        }
        if (b[u] == 0) continue;
        BigInt reduced_mod = m / divisor;
        if (reduced_mod == 1) continue; // every a_u works; keep 0
        auto inv = try_mod_inverse(unit % reduced_mod, reduced_mod);
        if (!inv) throw VerificationFailure("unit part of u! failed to invert");
        newton[u] = (b[u] / divisor) % reduced_mod * *inv % reduced_mod;
    }

    Poly witness = from_newton(NewtonPoly::from_coeffs(ctx, std::move(newton)));
    if (witness.degree() != std::optional<std::size_t>(top) && !(top == 0 && witness.is_zero())) {
        throw VerificationFailure("assembled witness has the wrong degree");
    }

    // The verdict is only emitted after the witness reproduces the target at
    // every point.
    auto bad = first_violation(
        witness, n,
        [&](std::uint64_t x, const BigInt& value) { return value == target.values[x]; },
        opts.jobs);
    if (bad) {
        std::ostringstream msg;
        msg << "witness disagrees with target at x=" << *bad;
        throw VerificationFailure(msg.str());
    }
    return Representable{top, std::move(witness)};
}

std::uint64_t minimal_extraction_degree(const BigInt& p, unsigned e,
                                        const CheckOptions& opts) {
    PrimePowerModulus ctx(p, e);
    auto verdict = represent_function(TargetFunction::lowest_digit(ctx), std::nullopt, opts);
    if (const auto* rep = std::get_if<Representable>(&verdict)) {
        return rep->minimal_degree;
    }
    // The composed extractor always exists, so this is unreachable for a
    // correct oracle.
    throw VerificationFailure("lowest-digit target was reported not representable");
}

ImpossibilityCertificate impossibility_certificate(const BigInt& p, unsigned r, unsigned e) {
    if (!is_prime(p)) {
        std::ostringstream msg;
        msg << "p must be prime, got " << p;
        throw InvalidParams(msg.str());
    }
    if (!(1 < r && r < e)) {
        throw InvalidParams(
            "certificate requires 1 < r < e; for r = 1 an extraction polynomial exists");
    }
    PrimePowerModulus ctx(p, e);
    const BigInt& m = ctx.modulus();
    BigInt pr = pow_u(p, r);
    BigInt pe1 = pow_u(p, e - 1);

    auto target_at = [&](const BigInt& x) { return ctx.reduce(x - x % pr); };

    ImpossibilityCertificate cert;
    cert.p = p;
    cert.r = r;
    cert.e = e;
    cert.constraints = {CongruenceConstraint{0, target_at(0), m},
                        CongruenceConstraint{pe1, target_at(pe1), m},
                        CongruenceConstraint{p, target_at(p), m}};
    cert.pe1_has_no_low_digits = (pe1 % pr == 0); // r <= e-1
    cert.p_keeps_its_digit = (p % pr == p);       // r > 1
    cert.derived = {
        "f(0) = a0, so p^e | a0",
        "f(p^(e-1)) - f(0) = a1 * p^(e-1) = p^(e-1) (mod p^e), so p | a1 - 1",
        "f(p) = a0 + a1*p + a2*p^2 + ... = 0 (mod p^2), so p | a1",
    };
    cert.contradiction = "p | (a1 - 1) and p | a1 force p | 1";
    return cert;
}

bool check_certificate(const ImpossibilityCertificate& cert, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    if (!(1 < cert.r && cert.r < cert.e)) return fail("r outside 1 < r < e");
    if (!is_prime(cert.p)) return fail("p is not prime");
    PrimePowerModulus ctx(cert.p, cert.e);
    const BigInt& m = ctx.modulus();
    BigInt pr = pow_u(cert.p, cert.r);
    BigInt pe1 = pow_u(cert.p, cert.e - 1);
    BigInt p2 = cert.p * cert.p;

    // The three claimed values must be what the remove-low-digits target
    // actually takes at the three points.
    const std::array<BigInt, 3> points = {0, pe1, cert.p};
    for (std::size_t i = 0; i < 3; ++i) {
        if (cert.constraints[i].point != points[i]) return fail("unexpected evaluation point");
        if (cert.constraints[i].modulus != m) return fail("unexpected modulus");
        BigInt expect = ctx.reduce(points[i] - points[i] % pr);
        if (cert.constraints[i].value != expect) return fail("claimed value mismatch");
    }
    // The two facts the proof uses silently.
    if (!(cert.pe1_has_no_low_digits && pe1 % pr == 0)) {
        return fail("p^(e-1) mod p^r != 0");
    }
    if (!(cert.p_keeps_its_digit && cert.p % pr == cert.p)) {
        return fail("p mod p^r != p");
    }
    // Both leading-coefficient constraints depend on a1 only through a1 mod
    // p, so enumerating that class verifies the contradiction exactly.
    const auto p64 = to_u64(cert.p);
    if (!p64 || *p64 > kTableGuard) return fail("p too large to enumerate a1 classes");
    for (std::uint64_t a1 = 0; a1 < *p64; ++a1) {
        bool eq2 = mod_floor(BigInt(a1) * pe1 - pe1, m) == 0; // a1*p^(e-1) = p^(e-1) (mod p^e)
        bool eq3 = mod_floor(BigInt(a1) * cert.p, p2) == 0;   // a1*p = 0 (mod p^2)
        if (eq2 && eq3) return fail("some a1 class satisfies both constraints");
    }
    return true;
}

std::optional<std::uint64_t> brute_force_min_monic_zero(const BigInt& p, unsigned e,
                                                        std::uint64_t degree_cap) {
    PrimePowerModulus ctx(p, e);
    if (degree_cap < 1) throw InvalidParams("degree cap must be >= 1");
    if (degree_cap > 64) {
        throw GuardExceeded("degree cap over 64 always exceeds the enumeration guard");
    }
    BigInt candidates = pow_u(ctx.modulus(), static_cast<unsigned>(degree_cap));
    if (candidates > kBruteForceGuard) {
        std::ostringstream msg;
        msg << "(p^e)^cap = " << candidates << " exceeds the 10^7 enumeration guard";
        throw GuardExceeded(msg.str());
    }
    const std::uint64_t m = to_u64(ctx.modulus()).value();

    for (std::uint64_t degree = 1; degree <= degree_cap; ++degree) {
        std::vector<std::uint64_t> c(degree, 0); // low coefficients; leading is 1
        while (true) {
            bool vanishes = true;
            for (std::uint64_t x = 0; x < m && vanishes; ++x) {
                std::uint64_t acc = 1; // monic leading coefficient
                for (std::size_t i = degree; i-- > 0;) {
                    acc = (acc * x + c[i]) % m;
                }
                vanishes = acc == 0;
            }
            if (vanishes) return degree;
            // odometer over [0, p^e)^degree
            std::size_t pos = 0;
            while (pos < degree && ++c[pos] == m) {
                c[pos] = 0;
                ++pos;
            }
            if (pos == degree) break;
        }
    }
    return std::nullopt;
}

} // namespace digitx
