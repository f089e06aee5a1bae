#pragma once

// JSON schemas for inputs and results, plus plain-text table rendering.
//
// Every JSON document carries a "schema" field of the form "k3kit.<kind>/1".
// Rationals are written as "p/q" strings and floats with 12 significant
// digits.

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3kit/arith.hpp"
#include "k3kit/error.hpp"
#include "k3kit/git_cubic.hpp"
#include "k3kit/git_net.hpp"
#include "k3kit/lattice.hpp"
#include "k3kit/nl_rank.hpp"

namespace k3kit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaCubic = "k3kit.cubic-support/1";
inline constexpr const char* kSchemaNet = "k3kit.net/1";
inline constexpr const char* kSchemaNetSupport = "k3kit.net-support/1";
inline constexpr const char* kSchemaConfig = "k3kit.config/1";
inline constexpr const char* kSchemaRank = "k3kit.rank/1";
inline constexpr const char* kSchemaHeegner = "k3kit.heegner/1";
inline constexpr const char* kSchemaReport = "k3kit.report/1";

// ---------------------------------------------------------------- scalars

template <class R>
std::string format_real(const R& x, int digits = 12) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Integer(text));
        }
        const Integer den(text.substr(slash + 1));
        if (den == 0) {
            throw InvalidArgument("zero denominator");
        }
        const Integer num(text.substr(0, slash));
        return den < 0 ? Rational(-num, -den) : Rational(num, den);
    } catch (const std::runtime_error&) {
        throw InvalidArgument("not a rational: '" + text + "'");
    }
}

namespace detail {

inline void require_schema(const Json& doc, const std::string& where, std::initializer_list<const char*> accepted) {
    if (!doc.is_object()) {
        throw SchemaError(where, "expected a JSON object");
    }
    if (!doc.contains("schema") || !doc["schema"].is_string()) {
        throw SchemaError(where + ".schema", "missing schema field");
    }
    const auto s = doc["schema"].get<std::string>();
    for (const char* a : accepted) {
        if (s == a) {
            return;
        }
    }
    throw SchemaError(where + ".schema", "unsupported schema '" + s + "'");
}

inline void reject_unknown_keys(const Json& doc, const std::string& where, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : doc.items()) {
        bool ok = false;
        for (const char* k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            throw SchemaError(where + "." + key, "unknown key");
        }
    }
}

inline std::int64_t get_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) {
        throw SchemaError(where, "expected an integer");
    }
    return j.get<std::int64_t>();
}

} // namespace detail

// ------------------------------------------------------------ cubic support

inline Json to_json(const CubicSupport& s) {
    Json doc;
    doc["schema"] = kSchemaCubic;
    Json arr = Json::array();
    for (const auto& m : s) {
        arr.push_back(m.a);
    }
    doc["support"] = arr;
    return doc;
}

/// Elements of "support" may be exponent vectors [a0,...,a4] or names such
/// as "x1^2x4".
inline CubicSupport cubic_support_from_json(const Json& doc) {
    detail::require_schema(doc, "$", {kSchemaCubic});
    detail::reject_unknown_keys(doc, "$", {"schema", "support"});
    if (!doc.contains("support") || !doc["support"].is_array() || doc["support"].empty()) {
        throw SchemaError("$.support", "expected a non-empty array");
    }
    std::vector<Monomial5> ms;
    for (std::size_t k = 0; k < doc["support"].size(); ++k) {
        const auto& e = doc["support"][k];
        const std::string where = "$.support[" + std::to_string(k) + "]";
        try {
            if (e.is_string()) {
                ms.push_back(parse_monomial5(e.get<std::string>()));
            } else if (e.is_array() && e.size() == 5) {
                std::array<int, 5> a{};
                for (std::size_t i = 0; i < 5; ++i) {
                    a[i] = static_cast<int>(detail::get_int(e[i], where + "[" + std::to_string(i) + "]"));
                }
                ms.emplace_back(a);
            } else {
                throw SchemaError(where, "expected an exponent vector of length 5 or a monomial name");
            }
            if (!ms.back().in_basis()) {
                throw SchemaError(where, ms.back().name() + " has a0 a4 != 0 and is not a basis monomial");
            }
        } catch (const InvalidArgument& e2) {
            throw SchemaError(where, e2.what());
        }
    }
    return make_support(ms);
}

// ----------------------------------------------------------------------- net

inline Json to_json(const QuadricNet& net) {
    Json doc;
    doc["schema"] = kSchemaNet;
    Json quadrics = Json::array();
    const auto& all = quad_monomials();
    for (const auto& row : net.rows()) {
        Json terms = Json::array();
        for (std::size_t k = 0; k < kQuadCount; ++k) {
            if (row[k] != 0) {
                terms.push_back({{"i", all[k].i},
                                 {"j", all[k].j},
                                 {"num", boost::multiprecision::numerator(row[k]).str()},
                                 {"den", boost::multiprecision::denominator(row[k]).str()}});
            }
        }
        quadrics.push_back(terms);
    }
    doc["quadrics"] = quadrics;
    return doc;
}

struct ParsedNet {
    QuadricNet net;
    bool support_only = false;
    std::optional<OnePS5> lambda;
};

namespace detail {

inline Integer get_big(const Json& j, const std::string& where) {
    if (j.is_number_integer()) {
        return Integer(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::runtime_error&) {
        }
    }
    throw SchemaError(where, "expected an integer or a decimal string");
}

inline OnePS5 lambda_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 6) {
        throw SchemaError(where, "expected six integers");
    }
    std::array<std::int64_t, 6> a{};
    for (std::size_t k = 0; k < 6; ++k) {
        a[k] = get_int(j[k], where + "[" + std::to_string(k) + "]");
    }
    try {
        return OnePS5(a);
    } catch (const InvalidArgument& e) {
        throw SchemaError(where, e.what());
    }
}

} // namespace detail

/// Accepts explicit coefficients (k3kit.net/1) or unit-coefficient supports
/// (k3kit.net-support/1).  An optional "lambda" selects a 1-PS.
inline ParsedNet net_from_json(const Json& doc) {
    detail::require_schema(doc, "$", {kSchemaNet, kSchemaNetSupport});
    detail::reject_unknown_keys(doc, "$", {"schema", "quadrics", "lambda"});
    const bool support_only = doc["schema"] == kSchemaNetSupport;
    if (!doc.contains("quadrics") || !doc["quadrics"].is_array() || doc["quadrics"].size() != 3) {
        throw SchemaError("$.quadrics", "expected an array of three quadrics");
    }
    std::optional<OnePS5> lambda;
    if (doc.contains("lambda")) {
        lambda = detail::lambda_from_json(doc["lambda"], "$.lambda");
    }

    std::array<QuadricRow, 3> rows{};
    for (std::size_t q = 0; q < 3; ++q) {
        rows[q].fill(Rational(0));
        const auto& terms = doc["quadrics"][q];
        const std::string wq = "$.quadrics[" + std::to_string(q) + "]";
        if (!terms.is_array()) {
            throw SchemaError(wq, "expected an array of terms");
        }
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const std::string wt = wq + "[" + std::to_string(t) + "]";
            const auto& term = terms[t];
            try {
                if (support_only) {
                    if (!term.is_string()) {
                        throw SchemaError(wt, "expected a monomial name such as \"x0x5\"");
                    }
                    rows[q][parse_quad(term.get<std::string>()).lex_rank()] += 1;
                    continue;
                }
                if (!term.is_object()) {
                    throw SchemaError(wt, "expected {i, j, num, den}");
                }
                detail::reject_unknown_keys(term, wt, {"i", "j", "num", "den"});
                for (const char* key : {"i", "j", "num"}) {
                    if (!term.contains(key)) {
                        throw SchemaError(wt + "." + key, "missing");
                    }
                }
                const auto i = detail::get_int(term["i"], wt + ".i");
                const auto j = detail::get_int(term["j"], wt + ".j");
                const Integer num = detail::get_big(term["num"], wt + ".num");
                const Integer den = term.contains("den") ? detail::get_big(term["den"], wt + ".den") : Integer(1);
                if (den == 0) {
                    throw SchemaError(wt + ".den", "zero denominator");
                }
                const QuadMonomial m(static_cast<int>(i), static_cast<int>(j));
                rows[q][m.lex_rank()] += den < 0 ? Rational(-num, -den) : Rational(num, den);
            } catch (const InvalidArgument& e) {
                throw SchemaError(wt, e.what());
            }
        }
    }
    try {
        return {QuadricNet(rows), support_only, lambda};
    } catch (const InvalidArgument& e) {
        throw SchemaError("$.quadrics", e.what());
    }
}

// ---------------------------------------------------------------- rank rows

/// One l of a rank sweep, with the float route already rendered.
struct RankRow {
    std::int64_t l = 0;
    std::int64_t rank = 0;
    std::string gauss_value;
    Rational jacobi_value{0};
    int alpha = 0;
    int beta = 0;
    Rational frac_sum{0};
    std::int64_t d_eis = 0;
    std::string discrepancy;
    bool agree = false;
    unsigned precision_bits = 0;

    friend bool operator==(const RankRow&, const RankRow&) = default;
};

template <class R>
RankRow rank_row(std::int64_t l) {
    const auto rep = rank_via_jacobi<R>(l);
    RankRow row;
    row.l = l;
    row.rank = rep.rank;
    row.gauss_value = format_real(rep.gauss_value);
    row.jacobi_value = rep.jacobi_value;
    row.alpha = rep.alpha;
    row.beta = rep.beta;
    row.frac_sum = rep.frac_sum;
    row.d_eis = rep.d_eis;
    row.discrepancy = format_real(rep.discrepancy(), 3);
    row.agree = rep.agree();
    row.precision_bits = precision_bits_of<R>();
    return row;
}

inline Json to_json(const RankRow& r) {
    return Json{{"schema", kSchemaRank},
                {"l", r.l},
                {"rank", r.rank},
                {"gauss_value", r.gauss_value},
                {"jacobi_value", to_string(r.jacobi_value)},
                {"alpha", r.alpha},
                {"beta", r.beta},
                {"frac_sum", to_string(r.frac_sum)},
                {"d_eis", r.d_eis},
                {"discrepancy", r.discrepancy},
                {"agree", r.agree},
                {"precision_bits", r.precision_bits}};
}

inline RankRow rank_row_from_json(const Json& doc) {
    detail::require_schema(doc, "$", {kSchemaRank});
    detail::reject_unknown_keys(doc, "$", {"schema", "l", "rank", "gauss_value", "jacobi_value", "alpha", "beta",
                                           "frac_sum", "d_eis", "discrepancy", "agree", "precision_bits"});
    try {
        RankRow r;
        r.l = doc.at("l").get<std::int64_t>();
        r.rank = doc.at("rank").get<std::int64_t>();
        r.gauss_value = doc.at("gauss_value").get<std::string>();
        r.jacobi_value = parse_rational(doc.at("jacobi_value").get<std::string>());
        r.alpha = doc.at("alpha").get<int>();
        r.beta = doc.at("beta").get<int>();
        r.frac_sum = parse_rational(doc.at("frac_sum").get<std::string>());
        r.d_eis = doc.at("d_eis").get<std::int64_t>();
        r.discrepancy = doc.at("discrepancy").get<std::string>();
        r.agree = doc.at("agree").get<bool>();
        r.precision_bits = doc.at("precision_bits").get<unsigned>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("$", e.what());
    }
}

// ------------------------------------------------------------------ heegner

inline Json vector_json(const LatticeVector& v) {
    Json arr = Json::array();
    for (const auto& x : v) {
        arr.push_back(x);
    }
    return arr;
}

inline Json to_json(const HeegnerClass& c) {
    return Json{{"schema", kSchemaHeegner},
                {"d", c.nl.d},
                {"g", c.nl.g},
                {"l", c.nl.l},
                {"delta", discriminant_delta(c.nl).str()},
                {"n", to_string(c.label.n)},
                {"gamma", c.label.gamma},
                {"level", c.level},
                {"norm", c.norm.str()},
                {"vector", vector_json(c.representative)},
                {"vector_text", describe_vector(c.representative)}};
}

inline HeegnerClass heegner_from_json(const Json& doc) {
    detail::require_schema(doc, "$", {kSchemaHeegner});
    detail::reject_unknown_keys(doc, "$",
                                {"schema", "d", "g", "l", "delta", "n", "gamma", "level", "norm", "vector", "vector_text"});
    try {
        HeegnerClass c;
        c.nl = {doc.at("d").get<std::int64_t>(), doc.at("g").get<std::int64_t>(), doc.at("l").get<std::int64_t>()};
        c.label = {parse_rational(doc.at("n").get<std::string>()), doc.at("gamma").get<std::int64_t>()};
        c.level = doc.at("level").get<std::int64_t>();
        c.norm = Integer(doc.at("norm").get<std::string>());
        for (const auto& x : doc.at("vector")) {
            c.representative.push_back(x.get<std::int64_t>());
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("$", e.what());
    }
}

// ------------------------------------------------------------------- tables

/// A rectangular table of already-formatted cells.
struct TextTable {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

inline std::string render_markdown(const TextTable& t) {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        os << "|";
        for (const auto& c : cells) {
            os << " " << c << " |";
        }
        os << "\n";
    };
    line(t.headers);
    os << "|";
    for (std::size_t k = 0; k < t.headers.size(); ++k) {
        os << "---|";
    }
    os << "\n";
    for (const auto& r : t.rows) {
        line(r);
    }
    return os.str();
}

inline std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) {
        return cell;
    }
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

inline std::string render_csv(const TextTable& t) {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            os << (k ? "," : "") << csv_escape(cells[k]);
        }
        os << "\n";
    };
    line(t.headers);
    for (const auto& r : t.rows) {
        line(r);
    }
    return os.str();
}

inline TextTable rank_table(const std::vector<RankRow>& rows) {
    TextTable t{{"l", "rank", "jacobi", "gauss", "alpha", "beta", "frac_sum", "d_eis", "discrepancy", "agree"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({std::to_string(r.l), std::to_string(r.rank), to_string(r.jacobi_value), r.gauss_value,
                          std::to_string(r.alpha), std::to_string(r.beta), to_string(r.frac_sum),
                          std::to_string(r.d_eis), r.discrepancy, r.agree ? "yes" : "no"});
    }
    return t;
}

inline TextTable weight_table(const std::vector<WeightEntry>& entries) {
    TextTable t{{"monomial", "weight"}, {}};
    for (const auto& e : entries) {
        t.rows.push_back({e.monomial.name(), std::to_string(e.weight)});
    }
    return t;
}

} // namespace k3kit
