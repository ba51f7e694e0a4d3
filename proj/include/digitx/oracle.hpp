#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "digitx/construct.hpp"
#include "digitx/poly.hpp"

namespace digitx {

enum class TargetLabel {
    lowest_digit,     // values[x] = x mod p
    remove_low_digits, // values[x] = x - (x mod p^r)
    keep_low_digits,   // values[x] = x mod p^r
    constant,
    custom,
};

std::string to_string(TargetLabel label);

// A function on Z/p^e given by its full value table (length p^e).
struct TargetFunction {
    PrimePowerModulus ctx;
    std::vector<BigInt> values;
    TargetLabel label = TargetLabel::custom;
    unsigned r = 0;  // digit count for the remove/keep targets
    BigInt c = 0;    // value for the constant target

    static TargetFunction lowest_digit(const PrimePowerModulus& m);
    static TargetFunction remove_low_digits(const PrimePowerModulus& m, unsigned r);
    static TargetFunction keep_low_digits(const PrimePowerModulus& m, unsigned r);
    static TargetFunction constant(const PrimePowerModulus& m, const BigInt& c);
    static TargetFunction custom(const PrimePowerModulus& m, std::vector<BigInt> values);
};

struct Representable {
    std::uint64_t minimal_degree;
    Poly witness; // degree == minimal_degree; matches the target everywhere
};

struct NotRepresentable {
    std::uint64_t failing_index;  // u for which u! * a_u = b_u is unsolvable
    BigInt required_divisor;      // p^{min(e, ord_p(u))}
    BigInt actual_difference;     // b_u, canonical residue
};

using OracleVerdict = std::variant<Representable, NotRepresentable>;

// Decides whether any integer polynomial induces the target function on
// Z/p^e, via the forward-difference table b_u = Delta^u(values)(0): the
// congruence u! * a_u = b_u (mod p^e) is solvable iff p^{min(e, ord_p(u))}
// divides b_u. On success the assembled witness has the exact minimal degree
// (the largest u with b_u != 0) and is re-verified exhaustively before the
// verdict is returned. Throws CapExceeded when the minimal degree exceeds
// degree_cap (default p^e - 1, beyond which no new functions exist).
OracleVerdict represent_function(const TargetFunction& target,
                                 std::optional<std::uint64_t> degree_cap = std::nullopt,
                                 const CheckOptions& opts = {});

// Exact minimal degree of a lowest-digit extraction polynomial mod p^e.
std::uint64_t minimal_extraction_degree(const BigInt& p, unsigned e,
                                        const CheckOptions& opts = {});

struct CongruenceConstraint {
    BigInt point;
    BigInt value;   // claimed target value at the point
    BigInt modulus; // p^e
};

// Evidence that no polynomial removes the r lowest digits when 1 < r < e:
// the three evaluation points 0, p^{e-1}, p pin a_0 and force a_1 into two
// disjoint classes mod p.
struct ImpossibilityCertificate {
    BigInt p;
    unsigned r = 0;
    unsigned e = 0;
    std::array<CongruenceConstraint, 3> constraints;
    // Preconditions the three constraints silently rely on.
    bool pe1_has_no_low_digits = false; // p^{e-1} mod p^r == 0 (r <= e-1)
    bool p_keeps_its_digit = false;     // p mod p^r == p (r > 1)
    std::vector<std::string> derived;   // human-readable deduction chain
    std::string contradiction;
};

// Throws InvalidParams unless 1 < r < e (for r = 1 an extractor exists).
ImpossibilityCertificate impossibility_certificate(const BigInt& p, unsigned r, unsigned e);

// Re-derives every claim of the certificate from the target definition:
// the three values, the two preconditions, and (by enumerating a_1 mod p)
// that no residue class satisfies both leading-coefficient constraints.
bool check_certificate(const ImpossibilityCertificate& cert, std::string* why = nullptr);

// Smallest degree 1..degree_cap admitting a monic polynomial that vanishes
// at every point of Z/p^e, by exhaustive enumeration of coefficient vectors;
// nullopt when none exists up to the cap. Guard: (p^e)^degree_cap <= 10^7
// candidates, else GuardExceeded.
std::optional<std::uint64_t> brute_force_min_monic_zero(const BigInt& p, unsigned e,
                                                        std::uint64_t degree_cap);

} // namespace digitx
