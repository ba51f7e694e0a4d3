#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "digitx/construct.hpp"
#include "digitx/evalcost.hpp"
#include "digitx/io.hpp"
#include "digitx/oracle.hpp"

namespace {

using namespace digitx;

constexpr std::uint64_t kDefaultCap = 100'000; // p^e bound for exhaustive subcommands
constexpr std::uint64_t kSmallPrimeGate = 257;

struct CommonOptions {
    std::string p_text = "2";
    unsigned e = 1;
    std::string format = "human";
    std::string output; // empty = stdout
    bool trust_prime = false;
    std::uint64_t cap = kDefaultCap;
    std::uint64_t self_check_threshold = 100'000;
    unsigned jobs = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_pe = true) {
    if (with_pe) {
        cmd->add_option("--p", opt.p_text, "prime base p")->required();
        cmd->add_option("--e", opt.e, "exponent e >= 1")->required();
    }
    cmd->add_option("--output", opt.output, "write output to this path instead of stdout");
    cmd->add_flag("--trust-prime", opt.trust_prime,
                  "allow p > 257 (primality is still checked; runs may be slow)");
    cmd->add_option("--unsafe-cap", opt.cap,
                    "replace the default p^e <= 100000 guard; acknowledges long runtimes");
    cmd->add_option("--self-check-threshold", opt.self_check_threshold,
                    "skip constructors' exhaustive self-checks above this p^e");
    cmd->add_option("--jobs", opt.jobs, "threads for exhaustive scans (output unchanged)");
}

BigInt parse_bigint(const std::string& text, const char* what) {
    if (text.empty()) throw InvalidParams(std::string(what) + " must be an integer");
    std::size_t start = text[0] == '-' ? 1 : 0;
    if (start == text.size()) throw InvalidParams(std::string(what) + " must be an integer");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw InvalidParams(std::string(what) + " is not an integer: " + text);
        }
    }
    return BigInt(text);
}

PrimePowerModulus gated_modulus(const CommonOptions& opt, bool enforce_cap = true) {
    BigInt p = parse_bigint(opt.p_text, "p");
    if (p > kSmallPrimeGate && !opt.trust_prime) {
        throw InvalidParams("p > 257 requires --trust-prime");
    }
    PrimePowerModulus ctx(p, opt.e); // validates primality and e >= 1
    if (enforce_cap && ctx.modulus() > opt.cap) {
        std::ostringstream msg;
        msg << "p^e = " << ctx.modulus() << " exceeds the cap " << opt.cap
            << " (override with --unsafe-cap)";
        throw GuardExceeded(msg.str());
    }
    return ctx;
}

CheckOptions check_options(const CommonOptions& opt) {
    return CheckOptions{opt.self_check_threshold, opt.jobs};
}

void write_output(const CommonOptions& opt, const std::string& text) {
    if (opt.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw Error("cannot open output path: " + opt.output);
    out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- construct ------------------------------------------------------------

struct ConstructArgs {
    CommonOptions common;
    std::string method = "fermat-reduced";
};

int run_construct(const ConstructArgs& args) {
    PrimePowerModulus ctx = gated_modulus(args.common);
    CheckOptions opts = check_options(args.common);
    const BigInt& p = ctx.p();
    const unsigned e = ctx.e();

    auto started = std::chrono::steady_clock::now();
    Poly result = [&] {
        if (args.method == "hs15") return lowest_digit_poly_hs15(p, e, opts);
        if (args.method == "fermat-reduced") return lowest_digit_poly(p, e, Reducer::fermat, opts);
        if (args.method == "minimal-reduced") return lowest_digit_poly(p, e, Reducer::minimal, opts);
        if (args.method == "lift") return lift_poly(p, e, opts);
        if (args.method == "zero-fermat") return zero_poly_fermat(p, e, opts);
        if (args.method == "zero-minimal") return zero_poly_minimal(p, e, opts);
        throw InvalidParams("unknown method: " + args.method);
    }();
    auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - started);
    std::cerr << "constructed " << args.method << " for p=" << p << " e=" << e << " in "
              << elapsed.count() / 1000.0 << " ms\n";

    // Every constructor gates its exhaustive self-check on p^e (the lift's
    // result ring is p^{e+1}, but its gate is still p^e).
    const bool checked = pow_u(p, e) <= args.common.self_check_threshold;
    const std::string status = checked ? "passed" : "skipped";
    std::uint64_t degree = result.degree() ? *result.degree() : 0;

    if (args.common.format == "json") {
        Json j = record_to_json(PolyRecord::from_poly(result));
        j["method"] = args.method;
        j["degree"] = BigInt(degree).str();
        j["self_check"] = status;
        write_output(args.common, dump(j));
    } else {
        std::ostringstream out;
        out << "method: " << args.method << "\n"
            << "ring: Z/" << result.context().p() << "^" << result.context().e()
            << " (modulus " << result.context().modulus() << ")\n"
            << "degree: " << degree << "\n"
            << "self-check: " << status << "\n"
            << "f(x) = " << poly_to_human(result) << "\n";
        write_output(args.common, out.str());
    }
    return 0;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
    CommonOptions common;
    std::string file;
};

int run_verify(const VerifyArgs& args) {
    std::string text;
    if (args.file == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(args.file, std::ios::binary);
        if (!in) throw InvalidParams("cannot open polynomial file: " + args.file);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    PolyRecord rec = record_from_string(text);
    Poly f = rec.to_poly();
    const PrimePowerModulus& ctx = f.context();

    if (ctx.p() > kSmallPrimeGate && !args.common.trust_prime) {
        throw InvalidParams("p > 257 requires --trust-prime");
    }
    if (ctx.modulus() > args.common.cap) {
        throw GuardExceeded("p^e exceeds the cap (override with --unsafe-cap)");
    }
    const auto points = to_u64(ctx.modulus()).value();
    const auto p64 = to_u64(ctx.p());

    auto bad = first_violation(
        f, points,
        [&](std::uint64_t x, const BigInt& value) {
            return p64 ? value == x % *p64 : value == BigInt(x) % ctx.p();
        },
        args.common.jobs);

    Json j;
    j["p"] = ctx.p().str();
    j["e"] = ctx.e();
    j["property"] = "lowest-digit-extraction";
    j["points_checked"] = BigInt(points).str();
    std::ostringstream human;
    if (!bad) {
        j["result"] = "pass";
        human << "PASS: f(x) = x (mod " << ctx.p() << ") holds as a congruence mod "
              << ctx.modulus() << " at all " << points << " points\n";
    } else {
        BigInt value = poly_eval(f, ctx.residue(*bad)).value();
        BigInt expected = BigInt(*bad) % ctx.p();
        j["result"] = "fail";
        j["counterexample"] = Json{{"x", BigInt(*bad).str()},
                                   {"value", value.str()},
                                   {"expected", expected.str()}};
        human << "FAIL at x=" << *bad << ": f(x)=" << value << ", expected " << expected
              << " (mod " << ctx.modulus() << ")\n";
    }
    write_output(args.common, args.common.format == "json" ? dump(j) : human.str());
    return bad ? 1 : 0;
}

// ---- oracle ---------------------------------------------------------------

struct OracleArgs {
    CommonOptions common;
    std::string target = "lowest-digit";
    unsigned r = 0;
    std::string constant_text = "0";
    std::string values_file;
    std::uint64_t degree_cap = 0; // 0 = default p^e - 1
};

std::vector<BigInt> read_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParams("cannot open values file: " + path);
    std::vector<BigInt> values;
    std::string token;
    while (in >> token) {
        while (!token.empty() && token.back() == ',') token.pop_back();
        if (token.empty()) continue;
        values.push_back(parse_bigint(token, "value"));
    }
    return values;
}

int run_oracle(const OracleArgs& args) {
    PrimePowerModulus ctx = gated_modulus(args.common);
    CheckOptions opts = check_options(args.common);

    TargetFunction target = [&] {
        if (args.target == "lowest-digit") return TargetFunction::lowest_digit(ctx);
        if (args.target == "remove-low-digits" || args.target == "keep-low-digits") {
            if (args.r < 1) throw InvalidParams("--r is required for this target");
            if (args.r >= ctx.e()) {
                std::cerr << "note: r >= e degenerates this target; the impossibility "
                             "regime is 1 < r < e\n";
            }
            return args.target == "remove-low-digits"
                       ? TargetFunction::remove_low_digits(ctx, args.r)
                       : TargetFunction::keep_low_digits(ctx, args.r);
        }
        if (args.target == "constant") {
            return TargetFunction::constant(ctx, parse_bigint(args.constant_text, "c"));
        }
        if (args.target == "custom") {
            if (args.values_file.empty()) {
                throw InvalidParams("--values-file is required for a custom target");
            }
            return TargetFunction::custom(ctx, read_values_file(args.values_file));
        }
        throw InvalidParams("unknown target: " + args.target);
    }();

    std::optional<std::uint64_t> cap;
    if (args.degree_cap > 0) cap = args.degree_cap;
    OracleVerdict verdict = represent_function(target, cap, opts);

    Json j;
    j["p"] = ctx.p().str();
    j["e"] = ctx.e();
    j["target"] = to_string(target.label);
    if (target.label == TargetLabel::remove_low_digits ||
        target.label == TargetLabel::keep_low_digits) {
        j["r"] = target.r;
    }
    Json v = verdict_to_json(verdict);
    for (auto& [key, value] : v.items()) j[key] = value;

    std::ostringstream human;
    if (const auto* rep = std::get_if<Representable>(&verdict)) {
        human << "representable: minimal degree " << rep->minimal_degree << "\n"
              << "witness: " << poly_to_human(rep->witness) << "\n";
    } else {
        const auto& neg = std::get<NotRepresentable>(verdict);
        human << "not representable: at index u=" << neg.failing_index
              << " the congruence u!*a_u = b_u (mod " << ctx.modulus() << ") requires "
              << neg.required_divisor << " | b_u, but b_u = " << neg.actual_difference
              << "\n";
    }
    write_output(args.common, args.common.format == "json" ? dump(j) : human.str());
    return 0;
}

// ---- impossible -----------------------------------------------------------

struct ImpossibleArgs {
    CommonOptions common;
    unsigned r = 0;
};

int run_impossible(const ImpossibleArgs& args) {
    BigInt p = parse_bigint(args.common.p_text, "p");
    if (p > kSmallPrimeGate && !args.common.trust_prime) {
        throw InvalidParams("p > 257 requires --trust-prime");
    }
    ImpossibilityCertificate cert = impossibility_certificate(p, args.r, args.common.e);
    std::string why;
    if (!check_certificate(cert, &why)) {
        throw VerificationFailure("certificate failed its machine check: " + why);
    }
    if (args.common.format == "json") {
        Json j = certificate_to_json(cert);
        j["checked"] = "passed";
        write_output(args.common, dump(j));
    } else {
        std::ostringstream out;
        out << "no polynomial removes the " << args.r << " lowest base-" << p
            << " digits mod " << p << "^" << args.common.e << ":\n";
        for (const auto& c : cert.constraints) {
            out << "  f(" << c.point << ") = " << c.value << " (mod " << c.modulus << ")\n";
        }
        for (const auto& line : cert.derived) out << "  " << line << "\n";
        out << "  " << cert.contradiction << "\n"
            << "machine check: passed\n";
        write_output(args.common, out.str());
    }
    return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
    CommonOptions common;
    std::string method = "all";
};

int run_bench(const BenchArgs& args) {
    PrimePowerModulus ctx = gated_modulus(args.common);
    CheckOptions opts = check_options(args.common);
    const BigInt& p = ctx.p();
    const unsigned e = ctx.e();

    std::vector<std::pair<std::string, Poly>> polys;
    auto want = [&](const char* name) { return args.method == "all" || args.method == name; };
    if (want("hs15")) polys.emplace_back("hs15", lowest_digit_poly_hs15(p, e, opts));
    if (want("fermat-reduced")) {
        polys.emplace_back("fermat-reduced", lowest_digit_poly(p, e, Reducer::fermat, opts));
    }
    if (want("minimal-reduced")) {
        polys.emplace_back("minimal-reduced", lowest_digit_poly(p, e, Reducer::minimal, opts));
    }
    if (polys.empty()) throw InvalidParams("unknown method: " + args.method);

    const Residue probe = ctx.residue(1);
    std::vector<BenchRow> rows;
    for (const auto& [name, poly] : polys) {
        std::uint64_t degree = poly.degree() ? *poly.degree() : 0;
        rows.push_back({p, e, name, "horner", degree, eval_horner_counting(poly, probe).second});
        rows.push_back({p, e, name, "bsgs", degree, eval_bsgs_counting(poly, probe).second});
    }
    write_output(args.common,
                 args.common.format == "json" ? dump(bench_json(rows)) : bench_csv(rows));
    return 0;
}

// ---- table ----------------------------------------------------------------

struct TableArgs {
    CommonOptions common;
    std::uint64_t pmax = 7;
    unsigned emax = 4;
};

int run_table(const TableArgs& args) {
    CheckOptions opts = check_options(args.common);
    std::vector<ComparisonRow> rows;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
        if (p > args.pmax) break;
        for (unsigned e = 1; e <= args.emax; ++e) {
            if (pow_u(BigInt(p), e) > args.common.cap) break;
            auto point = comparison_table(BigInt(p), e, opts);
            rows.insert(rows.end(), point.begin(), point.end());
        }
    }
    write_output(args.common, args.common.format == "json"
                                  ? dump(comparison_table_json(rows))
                                  : comparison_table_csv(rows));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"digitx: exact digit-extraction polynomials modulo prime powers"};
    app.require_subcommand(1);

    ConstructArgs construct_args;
    auto* construct = app.add_subcommand(
        "construct", "build an extraction or null polynomial and self-check it");
    add_common(construct, construct_args.common);
    construct->add_option("--method", construct_args.method, "construction to run")
        ->check(CLI::IsMember({"hs15", "fermat-reduced", "minimal-reduced", "lift",
                               "zero-fermat", "zero-minimal"}));
    construct->add_option("--format", construct_args.common.format, "human or json")
        ->check(CLI::IsMember({"human", "json"}));

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand(
        "verify", "exhaustively check the extraction property of a polynomial file");
    add_common(verify, verify_args.common, /*with_pe=*/false);
    verify->add_option("file", verify_args.file, "polynomial record (json), or - for stdin")
        ->required();
    verify->add_option("--format", verify_args.common.format, "human or json")
        ->check(CLI::IsMember({"human", "json"}));

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand(
        "oracle", "minimal representing degree or impossibility for a target function");
    add_common(oracle, oracle_args.common);
    oracle->add_option("--target", oracle_args.target, "target function")
        ->check(CLI::IsMember({"lowest-digit", "remove-low-digits", "keep-low-digits",
                               "constant", "custom"}));
    oracle->add_option("--r", oracle_args.r, "digit count for remove/keep targets");
    oracle->add_option("--c", oracle_args.constant_text, "value for the constant target");
    oracle->add_option("--values-file", oracle_args.values_file,
                       "whitespace/comma separated table of p^e decimal values");
    oracle->add_option("--degree-cap", oracle_args.degree_cap,
                       "error if the minimal degree exceeds this cap");
    oracle->add_option("--format", oracle_args.common.format, "human or json")
        ->check(CLI::IsMember({"human", "json"}));

    ImpossibleArgs impossible_args;
    auto* impossible = app.add_subcommand(
        "impossible", "certificate that no polynomial removes r > 1 low digits");
    add_common(impossible, impossible_args.common);
    impossible->add_option("--r", impossible_args.r, "number of low digits, 1 < r < e")
        ->required();
    impossible->add_option("--format", impossible_args.common.format, "human or json")
        ->check(CLI::IsMember({"human", "json"}));

    BenchArgs bench_args;
    bench_args.common.format = "csv";
    auto* bench = app.add_subcommand(
        "bench", "instrumented evaluation costs for the extraction polynomials");
    add_common(bench, bench_args.common);
    bench->add_option("--method", bench_args.method, "hs15, fermat-reduced, minimal-reduced or all")
        ->check(CLI::IsMember({"hs15", "fermat-reduced", "minimal-reduced", "all"}));
    bench->add_option("--format", bench_args.common.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    TableArgs table_args;
    table_args.common.format = "csv";
    auto* table = app.add_subcommand(
        "table", "degree/cost comparison across methods over a (p, e) grid");
    add_common(table, table_args.common, /*with_pe=*/false);
    table->add_option("--pmax", table_args.pmax, "largest prime (from 2,3,5,7,11,13)");
    table->add_option("--emax", table_args.emax, "largest exponent");
    table->add_option("--format", table_args.common.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }

    try {
        if (*construct) return run_construct(construct_args);
        if (*verify) return run_verify(verify_args);
        if (*oracle) return run_oracle(oracle_args);
        if (*impossible) return run_impossible(impossible_args);
        if (*bench) return run_bench(bench_args);
        if (*table) return run_table(table_args);
        return 2;
    } catch (const InvalidParams& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const CapExceeded& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 4;
    } catch (const GuardExceeded& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 4;
    } catch (const SelfCheckError& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 3;
    } catch (const VerificationFailure& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 3;
    }
}
