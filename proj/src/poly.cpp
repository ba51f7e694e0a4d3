#include "digitx/poly.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

namespace digitx {

namespace {

const BigInt kZero = 0;

// Largest modulus for which a*b + c (a, b, c < M) fits in 64 bits.
constexpr std::uint64_t kFastMulModulus = 0xFFFFFFFFull;
// Table scans above this many points are refused outright.
constexpr std::uint64_t kTableGuard = 100'000'000ull;

void trim(std::vector<BigInt>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

std::vector<BigInt> canonicalize(const PrimePowerModulus& ctx, std::vector<BigInt> c) {
    for (auto& v : c) v = ctx.reduce(v);
    trim(c);
    return c;
}

void require_same_context(const PrimePowerModulus& a, const PrimePowerModulus& b) {
    if (a != b) {
        std::ostringstream msg;
        msg << "mixed moduli " << a.p() << "^" << a.e() << " and " << b.p() << "^" << b.e();
        throw ContextMismatch(msg.str());
    }
}

// Runs fn(begin, end) over a partition of [0, n); jobs == 1 stays inline.
void parallel_chunks(std::uint64_t n, unsigned jobs,
                     const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
    if (jobs <= 1 || n < 2 * jobs) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(jobs);
    std::uint64_t chunk = n / jobs;
    for (unsigned t = 0; t < jobs; ++t) {
        std::uint64_t begin = t * chunk;
        std::uint64_t end = (t + 1 == jobs) ? n : begin + chunk;
        workers.emplace_back([&, t, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

} // namespace

Poly Poly::constant(PrimePowerModulus ctx, const BigInt& c) {
    return from_coeffs(std::move(ctx), {c});
}

Poly Poly::identity(PrimePowerModulus ctx) { return monomial(std::move(ctx), 1); }

Poly Poly::monomial(PrimePowerModulus ctx, std::size_t degree, const BigInt& c) {
    std::vector<BigInt> coeffs(degree + 1, 0);
    coeffs[degree] = c;
    return from_coeffs(std::move(ctx), std::move(coeffs));
}

Poly Poly::from_coeffs(PrimePowerModulus ctx, std::vector<BigInt> coeffs) {
    auto canon = canonicalize(ctx, std::move(coeffs));
    return Poly(std::move(ctx), std::move(canon));
}

const BigInt& Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : kZero; }

NewtonPoly NewtonPoly::from_coeffs(PrimePowerModulus ctx, std::vector<BigInt> coeffs) {
    auto canon = canonicalize(ctx, std::move(coeffs));
    return NewtonPoly(std::move(ctx), std::move(canon));
}

Residue poly_eval(const Poly& f, const Residue& x) {
    require_same_context(f.context(), x.context());
    const BigInt& m = f.context().modulus();
    BigInt acc = 0;
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
        acc = (acc * x.value() + *it) % m;
    }
    return f.context().residue(std::move(acc));
}

Residue poly_eval(const NewtonPoly& f, const Residue& x) {
    require_same_context(f.context(), x.context());
    if (f.is_zero()) return f.context().residue(0);
    const BigInt& m = f.context().modulus();
    BigInt acc = 0;
    // a_0 + (x-0)(a_1 + (x-1)(a_2 + ...))
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        acc = (acc * mod_floor(x.value() - i, m) + f.coeffs()[i]) % m;
    }
    return f.context().residue(std::move(acc));
}

Poly poly_add(const Poly& f, const Poly& g) {
    require_same_context(f.context(), g.context());
    std::vector<BigInt> out(std::max(f.coeffs().size(), g.coeffs().size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.coeff(i) + g.coeff(i);
    return Poly::from_coeffs(f.context(), std::move(out));
}

Poly poly_sub(const Poly& f, const Poly& g) {
    require_same_context(f.context(), g.context());
    std::vector<BigInt> out(std::max(f.coeffs().size(), g.coeffs().size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.coeff(i) - g.coeff(i);
    return Poly::from_coeffs(f.context(), std::move(out));
}

Poly poly_scale(const Poly& f, const BigInt& c) {
    std::vector<BigInt> out(f.coeffs());
    for (auto& v : out) v *= c;
    return Poly::from_coeffs(f.context(), std::move(out));
}

Poly poly_mul(const Poly& f, const Poly& g) {
    require_same_context(f.context(), g.context());
    if (f.is_zero() || g.is_zero()) return Poly::zero(f.context());
    const std::size_t na = f.coeffs().size(), nb = g.coeffs().size();
    const auto m64 = to_u64(f.context().modulus());
    if (m64 && *m64 <= kFastMulModulus) {
        // Canonical coefficients fit 32 bits; each a*b + acc step fits 64.
        std::vector<std::uint64_t> a(na), b(nb), out(na + nb - 1, 0);
        for (std::size_t i = 0; i < na; ++i) a[i] = f.coeffs()[i].convert_to<std::uint64_t>();
        for (std::size_t i = 0; i < nb; ++i) b[i] = g.coeffs()[i].convert_to<std::uint64_t>();
        for (std::size_t i = 0; i < na; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < nb; ++j) {
                out[i + j] = (out[i + j] + a[i] * b[j]) % *m64;
            }
        }
        std::vector<BigInt> coeffs(out.begin(), out.end());
        return Poly::from_coeffs(f.context(), std::move(coeffs));
    }
    const BigInt& m = f.context().modulus();
    std::vector<BigInt> out(na + nb - 1, 0);
    for (std::size_t i = 0; i < na; ++i) {
        if (f.coeffs()[i] == 0) continue;
        for (std::size_t j = 0; j < nb; ++j) {
            out[i + j] = (out[i + j] + f.coeffs()[i] * g.coeffs()[j]) % m;
        }
    }
    return Poly::from_coeffs(f.context(), std::move(out));
}

Poly poly_compose(const Poly& f, const Poly& g) {
    require_same_context(f.context(), g.context());
    Poly acc = Poly::zero(f.context());
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
        acc = poly_mul(acc, g);
        if (*it != 0) acc = poly_add(acc, Poly::constant(f.context(), *it));
    }
    return acc;
}

PolyDivMod poly_divmod_monic(const Poly& f, const Poly& m) {
    require_same_context(f.context(), m.context());
    if (!m.is_monic()) throw NotMonic("divisor must be monic with leading coefficient 1");
    const auto dm = *m.degree();
    if (f.is_zero() || *f.degree() < dm) return {Poly::zero(f.context()), f};

    const BigInt& mod = f.context().modulus();
    const auto df = *f.degree();
    std::vector<BigInt> work(f.coeffs());
    std::vector<BigInt> q(df - dm + 1, 0);
    // Repeatedly subtract lead(work) * x^{k-dm} * m; monic m makes the
    // leading term cancel exactly.
    for (std::size_t k = df + 1; k-- > dm;) {
        BigInt c = work[k];
        if (c == 0) continue;
        q[k - dm] = c;
        for (std::size_t j = 0; j <= dm; ++j) {
            work[k - dm + j] = mod_floor(work[k - dm + j] - c * m.coeffs()[j], mod);
        }
    }
    work.resize(dm);
    return {Poly::from_coeffs(f.context(), std::move(q)),
            Poly::from_coeffs(f.context(), std::move(work))};
}

Poly poly_mod_monic(const Poly& f, const Poly& m) {
    return poly_divmod_monic(f, m).remainder;
}

NewtonPoly to_newton(const Poly& f) {
    const BigInt& m = f.context().modulus();
    std::vector<BigInt> work(f.coeffs());
    std::vector<BigInt> newton;
    // Peel remainders by synthetic division with (x-0), (x-1), ...
    for (BigInt node = 0; !work.empty(); ++node) {
        BigInt rem = work[0];
        if (work.size() > 1) {
            std::vector<BigInt> quot(work.size() - 1);
            quot.back() = work.back();
            for (std::size_t i = work.size() - 1; i-- > 1;) {
                quot[i - 1] = (work[i] + node * quot[i]) % m;
            }
            rem = (work[0] + node * quot[0]) % m;
            work = std::move(quot);
        } else {
            work.clear();
        }
        newton.push_back(rem);
    }
    return NewtonPoly::from_coeffs(f.context(), std::move(newton));
}

Poly from_newton(const NewtonPoly& g) {
    Poly acc = Poly::zero(g.context());
    const BigInt& m = g.context().modulus();
    for (std::size_t i = g.coeffs().size(); i-- > 0;) {
        // acc = acc * (x - i) + a_i
        Poly linear = Poly::from_coeffs(g.context(), {mod_floor(-BigInt(i), m), 1});
        acc = poly_mul(acc, linear);
        if (g.coeffs()[i] != 0) {
            acc = poly_add(acc, Poly::constant(g.context(), g.coeffs()[i]));
        }
    }
    return acc;
}

std::vector<BigInt> finite_differences_table(const PrimePowerModulus& m,
                                             std::vector<BigInt> values) {
    const std::size_t n = values.size();
    const auto m64 = to_u64(m.modulus());
    if (m64 && *m64 <= (std::uint64_t(1) << 62)) {
        std::vector<std::uint64_t> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = values[i].convert_to<std::uint64_t>();
        for (std::size_t step = 1; step < n; ++step) {
            for (std::size_t i = n; i-- > step;) {
                v[i] = (v[i] + *m64 - v[i - 1]) % *m64;
            }
        }
        for (std::size_t i = 0; i < n; ++i) values[i] = v[i];
        return values;
    }
    for (std::size_t step = 1; step < n; ++step) {
        for (std::size_t i = n; i-- > step;) {
            values[i] = mod_floor(values[i] - values[i - 1], m.modulus());
        }
    }
    return values;
}

std::vector<Residue> finite_differences(std::span<const Residue> values) {
    if (values.empty()) throw InvalidParams("finite_differences requires a nonempty table");
    const PrimePowerModulus& ctx = values.front().context();
    std::vector<BigInt> table;
    table.reserve(values.size());
    for (const auto& r : values) {
        Residue::require_same_context(values.front(), r);
        table.push_back(r.value());
    }
    table = finite_differences_table(ctx, std::move(table));
    std::vector<Residue> out;
    out.reserve(table.size());
    for (auto& v : table) out.push_back(ctx.residue(std::move(v)));
    return out;
}

std::optional<std::uint64_t> first_violation(
    const Poly& f, std::uint64_t n_points,
    const std::function<bool(std::uint64_t, const BigInt&)>& ok, unsigned jobs) {
    if (n_points > kTableGuard) {
        throw GuardExceeded("table scan larger than 10^8 points refused");
    }
    const auto m64 = to_u64(f.context().modulus());
    const bool fast = m64 && *m64 <= kFastMulModulus;

    std::vector<std::uint64_t> fast_coeffs;
    if (fast) {
        fast_coeffs.reserve(f.coeffs().size());
        for (const auto& c : f.coeffs()) fast_coeffs.push_back(c.convert_to<std::uint64_t>());
    }

    std::vector<std::optional<std::uint64_t>> found(std::max(1u, jobs));
    std::atomic<bool> any{false};
    unsigned used_jobs = std::max(1u, jobs);
    std::uint64_t chunk = used_jobs > 1 ? n_points / used_jobs : n_points;

    parallel_chunks(n_points, used_jobs, [&](std::uint64_t begin, std::uint64_t end) {
        std::size_t slot = (used_jobs > 1 && chunk > 0)
                               ? std::min<std::size_t>(begin / chunk, used_jobs - 1)
                               : 0;
        if (fast) {
            for (std::uint64_t x = begin; x < end; ++x) {
                std::uint64_t acc = 0;
                std::uint64_t xr = x % *m64;
                for (std::size_t i = fast_coeffs.size(); i-- > 0;) {
                    acc = (acc * xr + fast_coeffs[i]) % *m64;
                }
                if (!ok(x, BigInt(acc))) {
                    found[slot] = x;
                    any.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        } else {
            const BigInt& m = f.context().modulus();
            for (std::uint64_t x = begin; x < end; ++x) {
                BigInt acc = 0;
                BigInt xb = BigInt(x) % m;
                for (std::size_t i = f.coeffs().size(); i-- > 0;) {
                    acc = (acc * xb + f.coeffs()[i]) % m;
                }
                if (!ok(x, acc)) {
                    found[slot] = x;
                    any.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        }
    });

    if (!any.load()) return std::nullopt;
    std::optional<std::uint64_t> best;
    for (const auto& slot : found) {
        if (slot && (!best || *slot < *best)) best = slot;
    }
    return best;
}

std::vector<BigInt> eval_table(const Poly& f, std::uint64_t n_points, unsigned jobs) {
    if (n_points > kTableGuard) {
        throw GuardExceeded("value table larger than 10^8 points refused");
    }
    std::vector<BigInt> table(n_points);
    first_violation(
        f, n_points,
        [&](std::uint64_t x, const BigInt& v) {
            table[x] = v;
            return true;
        },
        jobs);
    return table;
}

} // namespace digitx
