#include "digitx/evalcost.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "digitx/oracle.hpp"

namespace digitx {

namespace {

struct CostTally {
    std::uint64_t nonscalar = 0;
    std::uint64_t scalar = 0;
};

// A value flowing through an instrumented evaluation. Multiplying two
// input-dependent values is the expensive (nonscalar) operation and the only
// one that deepens the circuit; constants ride along for free.
struct CountingValue {
    BigInt value;
    std::uint64_t depth = 0;
    bool depends_on_input = false;
};

CountingValue make_constant(const PrimePowerModulus& ctx, const BigInt& c) {
    return {ctx.reduce(c), 0, false};
}

CountingValue mul(const PrimePowerModulus& ctx, const CountingValue& a,
                  const CountingValue& b, CostTally& tally) {
    CountingValue out;
    out.value = a.value * b.value % ctx.modulus();
    out.depends_on_input = a.depends_on_input || b.depends_on_input;
    if (a.depends_on_input && b.depends_on_input) {
        ++tally.nonscalar;
        out.depth = std::max(a.depth, b.depth) + 1;
    } else if (out.depends_on_input) {
        ++tally.scalar;
        out.depth = a.depends_on_input ? a.depth : b.depth;
    }
    return out;
}

CountingValue add(const PrimePowerModulus& ctx, const CountingValue& a,
                  const CountingValue& b) {
    return {(a.value + b.value) % ctx.modulus(), std::max(a.depth, b.depth),
            a.depends_on_input || b.depends_on_input};
}

std::uint64_t ceil_sqrt(std::uint64_t n) {
    std::uint64_t k = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (k * k < n) ++k;
    while (k > 1 && (k - 1) * (k - 1) >= n) --k;
    return k;
}

// Baby-step powers x^1..x^k, computed on demand so that unused powers cost
// nothing: x^{2i} = (x^i)^2 and x^{2i+1} = x^{2i} * x.
class LazyPowers {
public:
    LazyPowers(const PrimePowerModulus& ctx, const CountingValue& x, std::uint64_t k,
               CostTally& tally)
        : ctx_(ctx), tally_(tally), cache_(k + 1) {
        if (k >= 1) cache_[1] = x;
    }

    const CountingValue& get(std::uint64_t j) {
        if (!cache_[j]) {
            if (j % 2 == 0) {
                const CountingValue& half = get(j / 2);
                cache_[j] = mul(ctx_, half, half, tally_);
            } else {
                cache_[j] = mul(ctx_, get(j - 1), cache_[1].value(), tally_);
            }
        }
        return *cache_[j];
    }

private:
    const PrimePowerModulus& ctx_;
    CostTally& tally_;
    std::vector<std::optional<CountingValue>> cache_;
};

} // namespace

std::pair<Residue, CostReport> eval_horner_counting(const Poly& f, const Residue& x) {
    Residue::require_same_context(f.context().residue(0), x);
    const PrimePowerModulus& ctx = f.context();
    if (f.is_zero() || *f.degree() == 0) {
        return {ctx.residue(f.coeff(0)), CostReport{}};
    }
    CostTally tally;
    CountingValue input{x.value(), 0, true};
    // The accumulator is treated as input-dependent from the first step, as
    // it would be when the coefficients ride inside ciphertexts.
    CountingValue acc{f.coeffs().back(), 0, true};
    for (std::size_t i = f.coeffs().size() - 1; i-- > 0;) {
        acc = add(ctx, mul(ctx, acc, input, tally), make_constant(ctx, f.coeffs()[i]));
    }
    return {ctx.residue(acc.value), CostReport{tally.nonscalar, tally.scalar, acc.depth}};
}

std::pair<Residue, CostReport> eval_bsgs_counting(const Poly& f, const Residue& x) {
    Residue::require_same_context(f.context().residue(0), x);
    const PrimePowerModulus& ctx = f.context();
    if (f.is_zero() || *f.degree() == 0) {
        return {ctx.residue(f.coeff(0)), CostReport{}};
    }
    const std::uint64_t d = *f.degree();
    const std::uint64_t k = ceil_sqrt(d + 1);          // block size
    const std::uint64_t blocks = (d + 1 + k - 1) / k;  // giant steps

    CostTally tally;
    CountingValue input{x.value(), 0, true};
    LazyPowers powers(ctx, input, k, tally);

    auto eval_block = [&](std::uint64_t block) {
        CountingValue acc = make_constant(ctx, f.coeff(block * k));
        for (std::uint64_t i = 1; i < k && block * k + i <= d; ++i) {
            const BigInt& c = f.coeff(block * k + i);
            if (c == 0) continue;
            CountingValue term = powers.get(i);
            if (c != 1) term = mul(ctx, make_constant(ctx, c), term, tally);
            acc = add(ctx, acc, term);
        }
        return acc;
    };

    CountingValue acc = eval_block(blocks - 1);
    if (blocks > 1) {
        const CountingValue& giant = powers.get(k);
        for (std::uint64_t block = blocks - 1; block-- > 0;) {
            acc = add(ctx, mul(ctx, acc, giant, tally), eval_block(block));
        }
    }
    return {ctx.residue(acc.value), CostReport{tally.nonscalar, tally.scalar, acc.depth}};
}

namespace {

// Extractors keyed by (p, e); digit decomposition re-derives the polynomial
// for every shrinking modulus, so small grids revisit the same keys often.
const Poly& cached_extractor(const BigInt& p, unsigned e, const CheckOptions& opts) {
    static std::map<std::pair<BigInt, unsigned>, Poly> cache;
    static std::mutex lock;
    std::scoped_lock guard(lock);
    auto key = std::make_pair(p, e);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, lowest_digit_poly(p, e, Reducer::fermat, opts)).first;
    }
    return it->second;
}

} // namespace

Residue remove_lowest_digit(const Residue& x, const CheckOptions& opts) {
    const PrimePowerModulus& ctx = x.context();
    if (ctx.e() < 2) throw InvalidParams("removing a digit requires e >= 2");
    const Poly& extractor = cached_extractor(ctx.p(), ctx.e(), opts);
    BigInt low = poly_eval(extractor, x).value();
    // x - L(x) is divisible by p because L(x) is the lowest digit of x.
    BigInt shifted = ctx.reduce(x.value() - low) / ctx.p();
    return PrimePowerModulus(ctx.p(), ctx.e() - 1).residue(std::move(shifted));
}

std::vector<BigInt> digit_decompose(const Residue& x, const CheckOptions& opts) {
    const PrimePowerModulus& ctx = x.context();
    std::vector<BigInt> digits;
    digits.reserve(ctx.e());
    Residue current = x;
    for (unsigned round = ctx.e(); round > 1; --round) {
        const Poly& extractor = cached_extractor(current.context().p(), round, opts);
        digits.push_back(poly_eval(extractor, current).value());
        current = remove_lowest_digit(current, opts);
    }
    digits.push_back(current.value());
    return digits;
}

std::vector<ComparisonRow> comparison_table(const BigInt& p, unsigned e,
                                            const CheckOptions& opts) {
    PrimePowerModulus ctx(p, e);
    const Residue probe = ctx.residue(1);
    auto measured = [&](const Poly& f) { return eval_bsgs_counting(f, probe).second; };
    auto degree_of = [](const Poly& f) -> std::uint64_t {
        return f.degree() ? *f.degree() : 0;
    };

    std::vector<ComparisonRow> rows;
    Poly hs15 = lowest_digit_poly_hs15(p, e, opts);
    rows.push_back({p, e, "hs15", degree_of(hs15), measured(hs15)});

    const auto analytic = to_u64(ch18_degree(p, e));
    rows.push_back({p, e, "ch18-analytic", analytic.value(), std::nullopt});

    Poly fermat = lowest_digit_poly(p, e, Reducer::fermat, opts);
    rows.push_back({p, e, "fermat-reduced", degree_of(fermat), measured(fermat)});

    Poly minimal = lowest_digit_poly(p, e, Reducer::minimal, opts);
    rows.push_back({p, e, "minimal-reduced", degree_of(minimal), measured(minimal)});

    auto verdict = represent_function(TargetFunction::lowest_digit(ctx), std::nullopt, opts);
    const auto& rep = std::get<Representable>(verdict);
    rows.push_back({p, e, "oracle-minimal", rep.minimal_degree, measured(rep.witness)});
    return rows;
}

} // namespace digitx
