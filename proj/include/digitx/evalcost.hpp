#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "digitx/construct.hpp"
#include "digitx/poly.hpp"

namespace digitx {

// Multiplication counts of one instrumented evaluation. Only multiplications
// of two input-dependent values (nonscalar) contribute to depth; constants
// and coefficient multiplications are depth-free, mirroring leveled-HE cost
// accounting.
struct CostReport {
    std::uint64_t nonscalar_mults = 0;
    std::uint64_t scalar_mults = 0;
    std::uint64_t depth = 0;
};

// Horner's scheme under counting semantics: for deg f = d >= 1 the
// accumulator is input-dependent from the first step, so exactly d nonscalar
// multiplications and depth d.
std::pair<Residue, CostReport> eval_horner_counting(const Poly& f, const Residue& x);

// Baby-step/giant-step with block size ceil(sqrt(d+1)): powers x^2..x^k from
// a balanced product tree (x^{2i} = (x^i)^2, x^{2i+1} = x^{2i} * x), then
// Horner over blocks in x^k. Nonscalar count <= 2*ceil(sqrt(d+1)) +
// ceil(log2(d+1)); the value always equals poly_eval(f, x).
std::pair<Residue, CostReport> eval_bsgs_counting(const Poly& f, const Residue& x);

// (x - L(x)) / p for the lowest-digit extractor L mod p^e: maps a residue
// mod p^e to its upper digits as a residue mod p^{e-1}. Requires e >= 2.
Residue remove_lowest_digit(const Residue& x, const CheckOptions& opts = {});

// Base-p digits (d_0, ..., d_{e-1}) of x, computed by e-1 rounds of
// extractor evaluation and exact division, never by native base conversion.
std::vector<BigInt> digit_decompose(const Residue& x, const CheckOptions& opts = {});

struct ComparisonRow {
    BigInt p;
    unsigned e = 0;
    std::string method; // hs15 | ch18-analytic | fermat-reduced | minimal-reduced | oracle-minimal
    std::uint64_t degree = 0;
    std::optional<CostReport> cost; // absent for ch18-analytic (degree formula only)
};

// One row per construction method with degree and instrumented BSGS costs.
std::vector<ComparisonRow> comparison_table(const BigInt& p, unsigned e,
                                            const CheckOptions& opts = {});

} // namespace digitx
