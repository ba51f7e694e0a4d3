#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "digitx/io.hpp"
#include "support.hpp"

using testsupport::run_command;

namespace {

const std::string cli = DIGITX_CLI_PATH;

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/digitx_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("construct emits a verifiable record") {
    auto res = run_command(cli + " construct --p 2 --e 3 --method fermat-reduced --format json");
    CHECK(res.exit_code == 0);
    auto rec = digitx::record_from_string(res.out);
    CHECK(rec.p == 2);
    CHECK(rec.e == 3);
    CHECK(rec.coeffs.size() <= 6);  // degree <= 5

    TempFile file("roundtrip.json");
    std::ofstream(file.path) << res.out;
    CHECK(run_command(cli + " verify " + file.path).exit_code == 0);
}

TEST_CASE("construct rejects composite p with exit 2") {
    CHECK(run_command(cli + " construct --p 4 --e 2").exit_code == 2);
    CHECK(run_command(cli + " construct --p 0 --e 2").exit_code == 2);
    CHECK(run_command(cli + " construct --p 2 --e 0").exit_code == 2);
}

TEST_CASE("construct of the trivial extractor") {
    auto res = run_command(cli + " construct --p 2 --e 1 --method hs15 --format json");
    CHECK(res.exit_code == 0);
    CHECK(digitx::record_from_string(res.out).coeffs == std::vector<digitx::BigInt>{0, 1});
}

TEST_CASE("lift records live one exponent above the request") {
    auto res = run_command(cli + " construct --p 3 --e 1 --method lift --format json");
    CHECK(res.exit_code == 0);
    auto rec = digitx::record_from_string(res.out);
    CHECK(rec.e == 2);
    CHECK(rec.coeffs.size() == 4);  // monic of degree p
}

TEST_CASE("large p requires --trust-prime but is still checked") {
    CHECK(run_command(cli + " construct --p 263 --e 1 --method hs15").exit_code == 2);
    CHECK(run_command(cli + " construct --p 263 --e 1 --method hs15 --trust-prime").exit_code == 0);
    // composite numbers never pass, flag or not
    CHECK(run_command(cli + " construct --p 339 --e 1 --trust-prime").exit_code == 2);
}

TEST_CASE("verify fails with the first counterexample") {
    TempFile file("not_extractor.json");
    std::ofstream(file.path)
        << R"({"p":"2","e":2,"basis":"monomial","coeffs":["0","1"]})";
    auto res = run_command(cli + " verify " + file.path + " --format json");
    CHECK(res.exit_code == 1);
    auto j = digitx::Json::parse(res.out);
    CHECK(j["result"] == "fail");
    CHECK(j["counterexample"]["x"] == "2");
    CHECK(j["counterexample"]["value"] == "2");
    CHECK(j["counterexample"]["expected"] == "0");
}

TEST_CASE("verify accepts the identity at e = 1") {
    TempFile file("identity.json");
    std::ofstream(file.path)
        << R"({"p":"5","e":1,"basis":"monomial","coeffs":["0","1"]})";
    CHECK(run_command(cli + " verify " + file.path).exit_code == 0);
}

TEST_CASE("verify reads a record from stdin") {
    CHECK(run_command(cli + " construct --p 3 --e 2 --format json | " + cli +
                      " verify -")
              .exit_code == 0);
}

TEST_CASE("verify reports malformed records as invalid parameters") {
    TempFile file("broken.json");
    std::ofstream(file.path) << "{\"p\": \"2\"}";
    CHECK(run_command(cli + " verify " + file.path).exit_code == 2);
    CHECK(run_command(cli + " verify /tmp/digitx_no_such_file.json").exit_code == 2);
}

TEST_CASE("oracle subcommand mirrors the library verdicts") {
    auto rep = run_command(cli + " oracle --p 2 --e 3 --target lowest-digit --format json");
    CHECK(rep.exit_code == 0);
    auto j = digitx::Json::parse(rep.out);
    CHECK(j["verdict"] == "representable");
    CHECK(j["minimal_degree"] == "3");

    auto neg = run_command(
        cli + " oracle --p 2 --e 3 --target remove-low-digits --r 2 --format json");
    CHECK(neg.exit_code == 0);
    auto nj = digitx::Json::parse(neg.out);
    CHECK(nj["verdict"] == "not-representable");
    CHECK(nj["failing_index"] == "4");

    CHECK(run_command(cli + " oracle --p 2 --e 3 --target remove-low-digits").exit_code == 2);
    CHECK(run_command(cli + " oracle --p 3 --e 1 --target lowest-digit --format json").out
              .find("\"minimal_degree\": \"1\"") != std::string::npos);
}

TEST_CASE("oracle degree cap maps to the guard exit code") {
    CHECK(run_command(cli + " oracle --p 2 --e 3 --target lowest-digit --degree-cap 2")
              .exit_code == 4);
}

TEST_CASE("custom targets come from a values file") {
    TempFile file("values.txt");
    std::ofstream(file.path) << "1, 2, 1, 2";
    auto res = run_command(cli + " oracle --p 2 --e 2 --target custom --values-file " +
                           file.path + " --format json");
    CHECK(res.exit_code == 0);
    CHECK(digitx::Json::parse(res.out)["verdict"] == "representable");
}

TEST_CASE("impossible subcommand honors the regime") {
    CHECK(run_command(cli + " impossible --p 2 --r 2 --e 3").exit_code == 0);
    CHECK(run_command(cli + " impossible --p 2 --r 1 --e 3").exit_code == 2);
    CHECK(run_command(cli + " impossible --p 2 --r 3 --e 3").exit_code == 2);
}

TEST_CASE("guards map to exit 4") {
    CHECK(run_command(cli + " construct --p 2 --e 18 --method zero-fermat").exit_code == 4);
    CHECK(run_command(cli + " construct --p 2 --e 18 --method zero-fermat --unsafe-cap 300000")
              .exit_code == 0);
}

TEST_CASE("bench and table emit csv with pinned headers") {
    auto bench = run_command(cli + " bench --p 2 --e 3");
    CHECK(bench.exit_code == 0);
    CHECK(bench.out.rfind("p,e,method,strategy,degree,nonscalar_mults,scalar_mults,depth\n",
                          0) == 0);
    // three methods, two strategies each
    CHECK(std::count(bench.out.begin(), bench.out.end(), '\n') == 7);

    auto table = run_command(cli + " table --pmax 3 --emax 2");
    CHECK(table.exit_code == 0);
    CHECK(table.out.rfind("p,e,method,degree,nonscalar_mults,depth\n", 0) == 0);
    // four grid points, five methods each
    CHECK(std::count(table.out.begin(), table.out.end(), '\n') == 21);
}

TEST_CASE("machine output is byte-identical across runs and thread counts") {
    const std::string cmds[] = {
        " construct --p 3 --e 3 --method minimal-reduced --format json",
        " oracle --p 3 --e 2 --target keep-low-digits --r 1 --format json",
        " table --pmax 3 --emax 3",
        " impossible --p 3 --r 2 --e 4 --format json",
    };
    for (const auto& cmd : cmds) {
        auto first = run_command(cli + cmd);
        auto second = run_command(cli + cmd);
        CHECK(first.exit_code == second.exit_code);
        CHECK(first.out == second.out);
    }
    auto serial = run_command(cli + " construct --p 2 --e 4 --method hs15 --format json");
    auto threaded = run_command(
        cli + " construct --p 2 --e 4 --method hs15 --format json --jobs 4");
    CHECK(serial.out == threaded.out);
}

TEST_CASE("unknown flags and missing subcommands exit 2") {
    CHECK(run_command(cli + " construct --p 2 --e 2 --frobnicate").exit_code == 2);
    CHECK(run_command(cli).exit_code == 2);
    CHECK(run_command(cli + " --help").exit_code == 0);
}
