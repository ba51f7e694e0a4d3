#include "digitx/io.hpp"

#include <sstream>

namespace digitx {

namespace {

BigInt parse_decimal(const std::string& text, const char* what) {
    if (text.empty()) throw InvalidParams(std::string(what) + " must be a decimal string");
    std::size_t start = text[0] == '-' ? 1 : 0;
    if (start == text.size()) throw InvalidParams(std::string(what) + " is not a number");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw InvalidParams(std::string(what) + " is not a decimal string: " + text);
        }
    }
    return BigInt(text);
}

std::string decimal(const BigInt& v) { return v.str(); }

} // namespace

PolyRecord PolyRecord::from_poly(const Poly& f) {
    return {f.context().p(), f.context().e(), false, f.coeffs()};
}

PolyRecord PolyRecord::from_newton(const NewtonPoly& f) {
    return {f.context().p(), f.context().e(), true, f.coeffs()};
}

Poly PolyRecord::to_poly() const {
    PrimePowerModulus ctx(p, e);
    if (falling) return digitx::from_newton(NewtonPoly::from_coeffs(ctx, coeffs));
    return Poly::from_coeffs(ctx, coeffs);
}

Json record_to_json(const PolyRecord& rec) {
    Json j;
    j["p"] = decimal(rec.p);
    j["e"] = rec.e;
    j["basis"] = rec.falling ? "falling" : "monomial";
    Json coeffs = Json::array();
    for (const auto& c : rec.coeffs) coeffs.push_back(decimal(c));
    j["coeffs"] = std::move(coeffs);
    return j;
}

PolyRecord record_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidParams("polynomial record must be a JSON object");
    for (const char* field : {"p", "e", "basis", "coeffs"}) {
        if (!j.contains(field)) {
            throw InvalidParams(std::string("polynomial record missing field '") + field + "'");
        }
    }
    if (!j["p"].is_string()) throw InvalidParams("field 'p' must be a decimal string");
    if (!j["e"].is_number_unsigned()) throw InvalidParams("field 'e' must be an integer >= 1");
    if (!j["basis"].is_string()) throw InvalidParams("field 'basis' must be a string");
    if (!j["coeffs"].is_array()) throw InvalidParams("field 'coeffs' must be an array");

    PolyRecord rec;
    rec.p = parse_decimal(j["p"].get<std::string>(), "p");
    rec.e = j["e"].get<unsigned>();
    const std::string basis = j["basis"].get<std::string>();
    if (basis == "monomial") {
        rec.falling = false;
    } else if (basis == "falling") {
        rec.falling = true;
    } else {
        throw InvalidParams("basis must be 'monomial' or 'falling', got '" + basis + "'");
    }
    for (const auto& c : j["coeffs"]) {
        if (!c.is_string()) throw InvalidParams("coefficients must be decimal strings");
        rec.coeffs.push_back(parse_decimal(c.get<std::string>(), "coefficient"));
    }
    return rec;
}

PolyRecord record_from_string(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InvalidParams("polynomial record is not valid JSON");
    return record_from_json(j);
}

std::string poly_to_human(const Poly& f) {
    if (f.is_zero()) return "0";
    const BigInt& m = f.context().modulus();
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        BigInt c = f.coeffs()[i];
        if (c == 0) continue;
        if (2 * c > m) c -= m; // symmetric lift for readability
        bool negative = c < 0;
        BigInt mag = negative ? BigInt(-c) : c;
        if (first) {
            if (negative) out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        if (mag != 1 || i == 0) out << mag;
        if (i >= 1) {
            out << "x";
            if (i >= 2) out << "^" << i;
        }
    }
    return out.str();
}

Json verdict_to_json(const OracleVerdict& verdict) {
    Json j;
    if (const auto* rep = std::get_if<Representable>(&verdict)) {
        j["verdict"] = "representable";
        j["minimal_degree"] = decimal(BigInt(rep->minimal_degree));
        j["witness"] = record_to_json(PolyRecord::from_poly(rep->witness));
    } else {
        const auto& neg = std::get<NotRepresentable>(verdict);
        j["verdict"] = "not-representable";
        j["failing_index"] = decimal(BigInt(neg.failing_index));
        j["required_divisor"] = decimal(neg.required_divisor);
        j["actual_difference"] = decimal(neg.actual_difference);
    }
    return j;
}

Json certificate_to_json(const ImpossibilityCertificate& cert) {
    Json j;
    j["p"] = decimal(cert.p);
    j["r"] = cert.r;
    j["e"] = cert.e;
    j["target"] = "remove-low-digits";
    Json congruences = Json::array();
    for (const auto& c : cert.constraints) {
        congruences.push_back(Json::array({decimal(c.point), decimal(c.value),
                                           decimal(c.modulus)}));
    }
    j["congruences"] = std::move(congruences);
    j["preconditions"] = Json{{"pe1_has_no_low_digits", cert.pe1_has_no_low_digits},
                              {"p_keeps_its_digit", cert.p_keeps_its_digit}};
    j["derived"] = cert.derived;
    j["contradiction"] = cert.contradiction;
    return j;
}

namespace {

void append_cost_cells(std::ostringstream& out, const std::optional<CostReport>& cost) {
    if (cost) {
        out << "," << cost->nonscalar_mults << "," << cost->depth;
    } else {
        out << ",,";
    }
}

} // namespace

std::string comparison_table_csv(const std::vector<ComparisonRow>& rows) {
    std::ostringstream out;
    out << "p,e,method,degree,nonscalar_mults,depth\n";
    for (const auto& row : rows) {
        out << decimal(row.p) << "," << row.e << "," << row.method << "," << row.degree;
        append_cost_cells(out, row.cost);
        out << "\n";
    }
    return out.str();
}

Json comparison_table_json(const std::vector<ComparisonRow>& rows) {
    Json arr = Json::array();
    for (const auto& row : rows) {
        Json j;
        j["p"] = decimal(row.p);
        j["e"] = row.e;
        j["method"] = row.method;
        j["degree"] = decimal(BigInt(row.degree));
        if (row.cost) {
            j["nonscalar_mults"] = decimal(BigInt(row.cost->nonscalar_mults));
            j["depth"] = decimal(BigInt(row.cost->depth));
        } else {
            j["nonscalar_mults"] = nullptr;
            j["depth"] = nullptr;
        }
        arr.push_back(std::move(j));
    }
    return arr;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "p,e,method,strategy,degree,nonscalar_mults,scalar_mults,depth\n";
    for (const auto& row : rows) {
        out << decimal(row.p) << "," << row.e << "," << row.method << "," << row.strategy
            << "," << row.degree << "," << row.cost.nonscalar_mults << ","
            << row.cost.scalar_mults << "," << row.cost.depth << "\n";
    }
    return out.str();
}

Json bench_json(const std::vector<BenchRow>& rows) {
    Json arr = Json::array();
    for (const auto& row : rows) {
        Json j;
        j["p"] = decimal(row.p);
        j["e"] = row.e;
        j["method"] = row.method;
        j["strategy"] = row.strategy;
        j["degree"] = decimal(BigInt(row.degree));
        j["nonscalar_mults"] = decimal(BigInt(row.cost.nonscalar_mults));
        j["scalar_mults"] = decimal(BigInt(row.cost.scalar_mults));
        j["depth"] = decimal(BigInt(row.cost.depth));
        arr.push_back(std::move(j));
    }
    return arr;
}

} // namespace digitx
