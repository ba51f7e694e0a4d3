#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "digitx/evalcost.hpp"
#include "digitx/oracle.hpp"
#include "digitx/poly.hpp"

namespace digitx {

using Json = nlohmann::ordered_json;

// The shared on-disk polynomial record: p and the coefficients are decimal
// strings, e is an integer, basis selects the coefficient meaning. Round
// trips bit-exactly through parse/dump.
struct PolyRecord {
    BigInt p;
    unsigned e = 1;
    bool falling = false; // "monomial" vs "falling" basis
    std::vector<BigInt> coeffs;

    static PolyRecord from_poly(const Poly& f);
    static PolyRecord from_newton(const NewtonPoly& f);
    // Converts to the monomial basis when the record is in falling basis.
    Poly to_poly() const;
};

Json record_to_json(const PolyRecord& rec);
PolyRecord record_from_json(const Json& j); // throws InvalidParams when malformed
PolyRecord record_from_string(const std::string& text);

// Sparse signed rendering with coefficients lifted to the symmetric range,
// e.g. "x^4 - 2x^3 + x^2". Machine formats always use canonical residues.
std::string poly_to_human(const Poly& f);

Json verdict_to_json(const OracleVerdict& verdict);
Json certificate_to_json(const ImpossibilityCertificate& cert);

std::string comparison_table_csv(const std::vector<ComparisonRow>& rows);
Json comparison_table_json(const std::vector<ComparisonRow>& rows);

struct BenchRow {
    BigInt p;
    unsigned e = 0;
    std::string method;
    std::string strategy; // horner | bsgs
    std::uint64_t degree = 0;
    CostReport cost;
};

std::string bench_csv(const std::vector<BenchRow>& rows);
Json bench_json(const std::vector<BenchRow>& rows);

} // namespace digitx
