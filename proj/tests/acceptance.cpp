// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exits with the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "digitx/evalcost.hpp"
#include "digitx/io.hpp"
#include "digitx/oracle.hpp"
#include "support.hpp"

using namespace digitx;

namespace {

const std::string cli = DIGITX_CLI_PATH;

struct Outcome {
    bool passed = true;
    std::string detail;
};

class Runner {
public:
    void run(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
        Outcome outcome;
        auto started = std::chrono::steady_clock::now();
        try {
            body(outcome);
        } catch (const std::exception& err) {
            outcome.passed = false;
            outcome.detail = std::string("exception: ") + err.what();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                       started)
                             .count();
        std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n",
                    outcome.passed ? "PASS" : "FAIL", id, name.c_str(), seconds,
                    outcome.detail.empty() ? "" : " -- ",
                    outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.passed) ++failures_;
    }

    int failures() const { return failures_; }

private:
    int failures_ = 0;
};

void expect(Outcome& outcome, bool cond, const std::string& what) {
    if (!cond && outcome.passed) {
        outcome.passed = false;
        outcome.detail = what;
    }
}

std::uint64_t ceil_sqrt(std::uint64_t n) {
    auto k = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (k * k < n) ++k;
    while (k > 1 && (k - 1) * (k - 1) >= n) --k;
    return k;
}

std::uint64_t ceil_log2(std::uint64_t n) {
    std::uint64_t bits = 0;
    while ((std::uint64_t(1) << bits) < n) ++bits;
    return bits;
}

std::string grid_tag(unsigned p, unsigned e) {
    return "(p=" + std::to_string(p) + ", e=" + std::to_string(e) + ")";
}

} // namespace

int main() {
    Runner runner;
    const auto grid = testsupport::grid();

    runner.run(1, "extraction correctness of the reduced extractor", [&](Outcome& out) {
        for (auto [p, e] : grid) {
            PrimePowerModulus ctx(p, e);
            Poly l = lowest_digit_poly(p, e, Reducer::fermat);
            const std::uint64_t n = to_u64(ctx.modulus()).value();
            for (std::uint64_t x = 0; x < n; ++x) {
                BigInt got = poly_eval(l, ctx.residue(x)).value();
                expect(out, got == x % p,
                       grid_tag(p, e) + " L(" + std::to_string(x) + ") != x mod p");
                if (!out.passed) return;
            }
        }
    });

    runner.run(2, "degree bounds of all three extractors", [&](Outcome& out) {
        for (auto [p, e] : grid) {
            PrimePowerModulus ctx(p, e);
            Poly g = lowest_digit_poly_hs15(p, e);
            Poly fermat = lowest_digit_poly(p, e, Reducer::fermat);
            Poly minimal = lowest_digit_poly(p, e, Reducer::minimal);
            expect(out, BigInt(*g.degree()) == pow_u(p, e - 1),
                   grid_tag(p, e) + " composed degree != p^(e-1)");
            expect(out, BigInt(*fermat.degree()) <= BigInt(e) * p - 1,
                   grid_tag(p, e) + " fermat-reduced degree > ep-1");
            expect(out, BigInt(*minimal.degree()) <= ord_inv(ctx, e) - 1,
                   grid_tag(p, e) + " minimal-reduced degree > ord_inv(e)-1");
        }
    });

    runner.run(3, "null polynomials vanish everywhere and are monic", [&](Outcome& out) {
        for (auto [p, e] : grid) {
            PrimePowerModulus ctx(p, e);
            const std::uint64_t n = to_u64(ctx.modulus()).value();
            for (Poly z : {zero_poly_fermat(p, e), zero_poly_minimal(p, e)}) {
                expect(out, z.is_monic(), grid_tag(p, e) + " null polynomial not monic");
                for (std::uint64_t x = 0; x < n; ++x) {
                    expect(out, poly_eval(z, ctx.residue(x)).value() == 0,
                           grid_tag(p, e) + " null polynomial nonzero at " +
                               std::to_string(x));
                    if (!out.passed) return;
                }
            }
        }
    });

    runner.run(4, "brute force attains the minimal null degree", [&](Outcome& out) {
        const std::vector<std::tuple<unsigned, unsigned, std::uint64_t>> cases = {
            {2, 1, 3}, {2, 2, 4}, {3, 1, 3}};
        for (auto [p, e, cap] : cases) {
            PrimePowerModulus ctx(p, e);
            auto found = brute_force_min_monic_zero(p, e, cap);
            expect(out, found.has_value() && BigInt(*found) == ord_inv(ctx, e),
                   grid_tag(p, e) + " enumerated minimum != ord_inv(e)");
        }
    });

    runner.run(5, "oracle degree is exact and within the analytic bound",
               [&](Outcome& out) {
        for (auto [p, e] : grid) {
            expect(out, BigInt(minimal_extraction_degree(p, e)) <= ch18_degree(p, e),
                   grid_tag(p, e) + " oracle degree above (e-1)(p-1)+1");
        }
        expect(out, minimal_extraction_degree(2, 2) == 2, "(2,2) oracle degree != 2");
        expect(out, minimal_extraction_degree(2, 3) == 3, "(2,3) oracle degree != 3");
        // the emitted witnesses really induce the target tables
        for (auto [p, e] : {std::pair<unsigned, unsigned>{2, 2}, {2, 3}}) {
            PrimePowerModulus ctx(p, e);
            TargetFunction target = TargetFunction::lowest_digit(ctx);
            auto verdict = represent_function(target);
            const auto& rep = std::get<Representable>(verdict);
            const std::uint64_t n = to_u64(ctx.modulus()).value();
            for (std::uint64_t x = 0; x < n; ++x) {
                expect(out,
                       poly_eval(rep.witness, ctx.residue(x)).value() == target.values[x],
                       grid_tag(p, e) + " witness mismatch");
            }
        }
    });

    runner.run(6, "no polynomial touches more than one low digit", [&](Outcome& out) {
        for (unsigned p : {2, 3, 5}) {
            for (unsigned e = 3; e <= 4; ++e) {
                if (pow_u(p, e) > 5000) continue;
                for (unsigned r = 2; r < e; ++r) {
                    PrimePowerModulus ctx(p, e);
                    TargetFunction remove = TargetFunction::remove_low_digits(ctx, r);
                    TargetFunction keep = TargetFunction::keep_low_digits(ctx, r);
                    expect(out,
                           std::holds_alternative<NotRepresentable>(
                               represent_function(remove)),
                           grid_tag(p, e) + " remove target unexpectedly representable");
                    expect(out,
                           std::holds_alternative<NotRepresentable>(
                               represent_function(keep)),
                           grid_tag(p, e) + " keep target unexpectedly representable");
                    expect(out, check_certificate(impossibility_certificate(p, r, e)),
                           grid_tag(p, e) + " certificate failed its machine check");
                    if (pow_u(p, e) <= 64) {
                        expect(out,
                               !testsupport::brute_force_representable(remove, 6),
                               grid_tag(p, e) + " enumeration found a remove polynomial");
                        expect(out, !testsupport::brute_force_representable(keep, 6),
                               grid_tag(p, e) + " enumeration found a keep polynomial");
                    }
                }
            }
        }
    });

    runner.run(7, "evaluation strategies agree and meet their cost bounds",
               [&](Outcome& out) {
        for (auto [p, e] : grid) {
            PrimePowerModulus ctx(p, e);
            const std::uint64_t n = to_u64(ctx.modulus()).value();
            const std::vector<Poly> polys = {
                lowest_digit_poly_hs15(p, e),
                lowest_digit_poly(p, e, Reducer::fermat),
                lowest_digit_poly(p, e, Reducer::minimal),
                zero_poly_fermat(p, e),
                zero_poly_minimal(p, e),
            };
            for (const Poly& f : polys) {
                const std::uint64_t d = f.degree() ? *f.degree() : 0;
                for (std::uint64_t x = 0; x < n; ++x) {
                    Residue at = ctx.residue(x);
                    auto [hv, hc] = eval_horner_counting(f, at);
                    auto [bv, bc] = eval_bsgs_counting(f, at);
                    expect(out, hv == bv && hv == poly_eval(f, at),
                           grid_tag(p, e) + " strategy values disagree");
                    expect(out, hc.nonscalar_mults == d,
                           grid_tag(p, e) + " horner count != degree");
                    expect(out,
                           bc.nonscalar_mults <= 2 * ceil_sqrt(d + 1) + ceil_log2(d + 1),
                           grid_tag(p, e) + " bsgs count above its bound");
                    if (!out.passed) return;
                }
            }
        }
    });

    runner.run(8, "digit decomposition matches native conversion", [&](Outcome& out) {
        for (auto [p, e] : grid) {
            PrimePowerModulus ctx(p, e);
            const std::uint64_t n = to_u64(ctx.modulus()).value();
            for (std::uint64_t x = 0; x < n; ++x) {
                expect(out,
                       digit_decompose(ctx.residue(x)) ==
                           testsupport::native_digits(p, e, x),
                       grid_tag(p, e) + " digits of " + std::to_string(x) + " differ");
                if (!out.passed) return;
            }
        }
    });

    runner.run(9, "factorial valuation bounds", [&](Outcome& out) {
        for (unsigned p : {2, 3, 5, 7}) {
            PrimePowerModulus m(p, 1);
            for (unsigned e = 1; e <= 50; ++e) {
                expect(out, ord_inv(m, e) >= BigInt(e) * (p - 1),
                       "ord_inv below e(p-1) at p=" + std::to_string(p));
            }
            for (unsigned n = 0; n <= 200; ++n) {
                expect(out, ord_inv(m, ord_p(m, n)) <= n,
                       "Galois connection violated at p=" + std::to_string(p));
                expect(out, ord_p(m, ord_inv(m, n)) >= n,
                       "Galois connection violated at p=" + std::to_string(p));
            }
        }
    });

    runner.run(10, "cli round trip is verified and deterministic", [&](Outcome& out) {
        for (auto [p, e] : grid) {
            std::string base = cli + " construct --p " + std::to_string(p) + " --e " +
                               std::to_string(e) + " --method fermat-reduced --format json";
            auto first = testsupport::run_command(base);
            auto second = testsupport::run_command(base);
            expect(out, first.exit_code == 0, grid_tag(p, e) + " construct failed");
            expect(out, first.out == second.out,
                   grid_tag(p, e) + " repeated runs differ");

            std::string path = "/tmp/digitx_accept_" + std::to_string(p) + "_" +
                               std::to_string(e) + ".json";
            std::ofstream(path) << first.out;
            auto verified = testsupport::run_command(cli + " verify " + path);
            std::remove(path.c_str());
            expect(out, verified.exit_code == 0, grid_tag(p, e) + " verify failed");
        }
    });

    if (runner.failures() == 0) {
        std::printf("all criteria passed\n");
    } else {
        std::printf("%d criteria failed\n", runner.failures());
    }
    return runner.failures();
}
