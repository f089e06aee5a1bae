// k3kit command-line front end.
//
// Exit codes: 0 success or match, 1 mathematical mismatch, 2 usage or schema
// error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "k3kit/git_cubic.hpp"
#include "k3kit/git_net.hpp"
#include "k3kit/lattice.hpp"
#include "k3kit/nl_rank.hpp"
#include "k3kit/parallel.hpp"
#include "k3kit/report.hpp"

using namespace k3kit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Settings {
    std::string format = "markdown";
    unsigned precision_bits = 134;
    std::int64_t search_bound = kTable3DefaultBound;
    unsigned jobs = default_jobs();
    bool no_timestamp = false;
    std::int64_t from = 1;
    std::int64_t to = 1;
};

/// A command result in a format-neutral shape.
struct Report {
    std::string title;
    Json json = Json::object();
    std::vector<std::pair<std::string, TextTable>> sections;
    std::vector<std::string> notes;
    int exit_code = kExitOk;
};

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

void emit(const Report& r, const Settings& s, std::ostream& out) {
    const std::string stamp = s.no_timestamp ? "" : utc_timestamp();
    if (s.format == "json") {
        Json doc;
        doc["schema"] = kSchemaReport;
        if (!stamp.empty()) {
            doc["generated"] = stamp;
        }
        for (const auto& [k, v] : r.json.items()) {
            doc[k] = v;
        }
        if (!r.notes.empty()) {
            doc["notes"] = r.notes;
        }
        out << doc.dump(2) << "\n";
        return;
    }
    if (s.format == "csv") {
        if (!stamp.empty()) {
            out << "# generated " << stamp << "\n";
        }
        bool first = true;
        for (const auto& [name, table] : r.sections) {
            if (!first) {
                out << "\n";
            }
            first = false;
            out << "# " << name << "\n" << render_csv(table);
        }
        for (const auto& n : r.notes) {
            out << "# " << n << "\n";
        }
        return;
    }
    out << "# " << r.title << "\n\n";
    if (!stamp.empty()) {
        out << "generated " << stamp << "\n\n";
    }
    for (const auto& [name, table] : r.sections) {
        out << "## " << name << "\n\n" << render_markdown(table) << "\n";
    }
    for (const auto& n : r.notes) {
        out << "- " << n << "\n";
    }
}

Json read_json_file(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path);
        if (!in) {
            throw UsageError("cannot open " + path);
        }
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(path, std::string("invalid JSON: ") + e.what());
    }
}

// ------------------------------------------------------------------- rank

template <class R>
std::vector<RankRow> sweep(std::int64_t from, std::int64_t to, unsigned jobs, std::vector<std::string>& errors) {
    const auto n = static_cast<std::size_t>(to - from + 1);
    std::vector<std::optional<RankRow>> rows(n);
    std::vector<std::string> errs(n);
    parallel_for(n, jobs, [&](std::size_t i) {
        const std::int64_t l = from + static_cast<std::int64_t>(i);
        try {
            rows[i] = rank_row<R>(l);
        } catch (const IntegralityError& e) {
            errs[i] = e.what();
        }
    });
    std::vector<RankRow> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i]) {
            out.push_back(*rows[i]);
        } else {
            errors.push_back(errs[i]);
        }
    }
    return out;
}

Report cmd_rank(const Settings& s) {
    if (s.from < 1 || s.to < s.from) {
        throw UsageError("rank: need 1 <= --from <= --to");
    }
    std::vector<std::string> errors;
    std::vector<RankRow> rows;
    if (s.precision_bits <= precision_bits_of<Real>()) {
        rows = sweep<Real>(s.from, s.to, s.jobs, errors);
    } else if (s.precision_bits <= precision_bits_of<Real256>()) {
        rows = sweep<Real256>(s.from, s.to, s.jobs, errors);
    } else {
        rows = sweep<Real512>(s.from, s.to, s.jobs, errors);
    }

    Report r;
    r.title = "Heegner divisor rank, l = " + std::to_string(s.from) + ".." + std::to_string(s.to);
    r.json["command"] = "rank";
    Json arr = Json::array();
    for (const auto& row : rows) {
        arr.push_back(to_json(row));
        if (!row.agree) {
            r.exit_code = kExitMismatch;
            errors.push_back("l = " + std::to_string(row.l) + ": routes disagree by " + row.discrepancy);
        }
    }
    if (arr.size() == 1) {
        r.json["result"] = arr.front();
    } else {
        r.json["results"] = arr;
    }
    r.json["errors"] = errors;
    r.sections.push_back({"ranks", rank_table(rows)});
    if (!errors.empty()) {
        r.exit_code = kExitMismatch;
        for (const auto& e : errors) {
            r.notes.push_back("mismatch: " + e);
        }
    }
    return r;
}

// ---------------------------------------------------------------- heegner

Report cmd_heegner(std::int64_t d, std::int64_t g, std::int64_t l) {
    const NLLabel nl{d, g, l};
    const auto c = heegner_class(nl);
    Report r;
    r.title = "Heegner label of D_{" + std::to_string(d) + "," + std::to_string(g) + "} in degree " +
              std::to_string(2 * l);
    r.json["command"] = "heegner";
    r.json["result"] = to_json(c);
    r.sections.push_back({"label",
                          {{"d", "g", "l", "Delta", "n", "gamma", "level k", "norm N", "vector"},
                           {{std::to_string(d), std::to_string(g), std::to_string(l), discriminant_delta(nl).str(),
                             to_string(c.label.n), std::to_string(c.label.gamma), std::to_string(c.level), c.norm.str(),
                             describe_vector(c.representative)}}}});
    return r;
}

// ------------------------------------------------------------ normal-form

LatticeVector parse_vector(const std::string& text) {
    LatticeVector v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoll(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(item);
            }
        } catch (const std::logic_error&) {
            throw UsageError("normal-form: bad vector entry '" + item + "'");
        }
    }
    if (v.size() < kLambdaRank) {
        v.resize(kLambdaRank, 0);
    }
    return v;
}

Report cmd_normal_form(std::int64_t l, const std::optional<std::string>& vector, std::optional<std::string> norm,
                       std::optional<std::int64_t> level, std::optional<std::int64_t> type) {
    const auto lattice = lambda_gram(l);
    PrimitiveVectorClass cls;
    Json input;
    if (vector) {
        const auto v = parse_vector(*vector);
        cls = invariants_of(v, lattice);
        input = vector_json(v);
    } else {
        if (!norm || !level || !type) {
            throw UsageError("normal-form: give --vector, or all of --norm, --level and --type");
        }
        try {
            cls = {Integer(*norm), *level, *type};
        } catch (const std::runtime_error&) {
            throw UsageError("normal-form: bad --norm '" + *norm + "'");
        }
    }
    const auto canon = canonical_primitive(cls.norm, cls.level, cls.type, l);
    const auto check = invariants_of(canon, lattice);
    if (!(check == cls)) {
        throw CrossCheckError("normal-form: canonical vector has different invariants");
    }

    Report r;
    r.title = "Normal form in Lambda_" + std::to_string(2 * l);
    r.json["command"] = "normal-form";
    r.json["l"] = l;
    if (vector) {
        r.json["input"] = input;
    }
    r.json["norm"] = cls.norm.str();
    r.json["level"] = cls.level;
    r.json["type"] = cls.type;
    r.json["canonical"] = vector_json(canon);
    r.json["canonical_text"] = describe_vector(canon);
    r.sections.push_back({"invariants",
                          {{"l", "norm N", "level k", "type d", "canonical vector"},
                           {{std::to_string(l), cls.norm.str(), std::to_string(cls.level), std::to_string(cls.type),
                             describe_vector(canon)}}}});
    return r;
}

// ----------------------------------------------------------------- tables

Report cubic_table(int which) {
    const auto mode = which == 1 ? WeightMode::NonPositive : WeightMode::Negative;
    const auto got = maximal_chamber_sets(mode, kCubicGridBound);
    const auto ref = which == 1 ? table1_rows() : table2_rows();

    Report r;
    r.title = std::string("Maximal subsets M_{") + to_string(mode) + "}(lambda)";
    r.json["command"] = "tables";
    r.json["table"] = which;
    r.json["grid_bound"] = kCubicGridBound;
    TextTable t{{"case", "lambda", "maximal monomials", "set size", "grid points"}, {}};
    Json rows = Json::array();
    std::vector<std::string> diff;
    for (std::size_t i = 0; i < got.size(); ++i) {
        const auto& row = got[i];
        const std::string label = i < ref.size() ? ref[i].label : "extra";
        t.rows.push_back({label, row.representative.str(), describe(row.presentation), std::to_string(row.set.size()),
                          std::to_string(row.members.size())});
        Json jr;
        jr["case"] = label;
        jr["lambda"] = {row.representative.u, row.representative.v};
        jr["maximal"] = to_json(row.presentation)["support"];
        jr["domination_maximal"] = to_json(row.maximal)["support"];
        jr["set_size"] = row.set.size();
        rows.push_back(jr);
    }
    for (std::size_t i = 0; i < std::max(got.size(), ref.size()); ++i) {
        if (i >= got.size()) {
            diff.push_back("missing row " + ref[i].label + " " + ref[i].lambda.str() + ": " + describe(ref[i].listed));
            continue;
        }
        if (i >= ref.size()) {
            diff.push_back("extra row " + got[i].representative.str() + ": " + describe(got[i].presentation));
            continue;
        }
        if (!(got[i].representative == ref[i].lambda)) {
            diff.push_back(ref[i].label + ": representative " + got[i].representative.str() + ", reference " +
                           ref[i].lambda.str());
        }
        if (got[i].presentation != ref[i].listed) {
            diff.push_back(ref[i].label + ": computed {" + describe(got[i].presentation) + "}, reference {" +
                           describe(ref[i].listed) + "}");
        }
    }
    r.json["rows"] = rows;
    r.json["match"] = diff.empty();
    r.json["diff"] = diff;
    r.sections.push_back({"computed", t});
    TextTable reft{{"case", "lambda", "listed monomials"}, {}};
    for (const auto& row : ref) {
        reft.rows.push_back({row.label, row.lambda.str(), describe(row.listed)});
    }
    r.sections.push_back({"reference", reft});
    r.notes.push_back(diff.empty() ? "match" : "MISMATCH");
    for (const auto& d : diff) {
        r.notes.push_back(d);
    }
    r.exit_code = diff.empty() ? kExitOk : kExitMismatch;
    return r;
}

std::string slot_text(const std::vector<QuadMonomial>& slot) {
    std::string s;
    for (const auto& m : slot) {
        s += (s.empty() ? "" : ", ") + m.name();
    }
    return s;
}

Report net_table(const Settings& s, bool search) {
    Report r;
    r.title = "Maximal set M-bar_{<=0}(lambda)";
    r.json["command"] = "tables";
    r.json["table"] = 3;
    const auto rows = table3_rows();
    const auto checks = table3_verify();
    bool ok = true;

    TextTable vt{{"case", "lambda", "q1", "q2", "q3", "slot weights", "triple", "pluecker", "failed conditions", "pass"},
                 {}};
    Json jv = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& c = checks[i];
        std::string weights;
        for (const auto& w : c.slot_weights) {
            weights += (weights.empty() ? "" : ", ") + (w ? std::to_string(*w) : std::string("mixed"));
        }
        std::string failed;
        Json jc = Json::array();
        for (const auto& cond : c.lemma.conditions) {
            jc.push_back({{"condition", cond.name},
                          {"applies", cond.applies},
                          {"holds", cond.holds},
                          {"requirement", cond.requirement}});
            if (!cond.holds) {
                failed += (failed.empty() ? "" : "; ") + cond.name + " (" + cond.requirement + ")";
            }
        }
        vt.rows.push_back({c.label, c.lambda.str(), slot_text(rows[i].slots[0]), slot_text(rows[i].slots[1]),
                           slot_text(rows[i].slots[2]), weights, c.triple.str(), std::to_string(c.plucker),
                           failed.empty() ? "-" : failed, c.pass ? "yes" : "no"});
        jv.push_back({{"case", c.label},
                      {"lambda", c.lambda.a},
                      {"slot_weights_constant", c.slot_weights_constant},
                      {"triple", c.triple.str()},
                      {"pluecker", c.plucker},
                      {"conditions", jc},
                      {"pass", c.pass}});
        if (!c.pass) {
            ok = false;
            r.notes.push_back("MISMATCH: " + c.label + " fails verification" +
                              (failed.empty() ? std::string() : ": " + failed));
        }
    }
    r.json["verification"] = jv;
    r.sections.push_back({"verification", vt});

    if (search) {
        const auto res = table3_search(s.search_bound, s.jobs);
        TextTable st{{"class", "first lambda", "grid points", "admissible triples", "reference rows"}, {}};
        Json jc = Json::array();
        std::vector<int> hits(rows.size(), 0);
        for (std::size_t k = 0; k < res.classes.size(); ++k) {
            const auto& c = res.classes[k];
            std::string labels;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (c.contains(rows[i].lambda)) {
                    labels += (labels.empty() ? "" : ", ") + rows[i].label;
                    ++hits[i];
                }
            }
            st.rows.push_back({std::to_string(k + 1), c.members.front().str(), std::to_string(c.members.size()),
                               std::to_string(c.size()), labels.empty() ? "-" : labels});
            Json members = Json::array();
            for (const auto& m : c.members) {
                members.push_back(m.a);
            }
            jc.push_back({{"members", members}, {"triples", c.size()}, {"reference_rows", labels}});
        }
        const bool search_ok = res.classes.size() == rows.size() &&
                               std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
        r.json["search"] = {{"bound", res.bound},
                            {"lambdas_scanned", res.lambdas_scanned},
                            {"distinct_sets", res.distinct_sets},
                            {"classes", jc},
                            {"match", search_ok}};
        r.sections.push_back({"search (a0 <= " + std::to_string(res.bound) + ", " +
                                  std::to_string(res.lambdas_scanned) + " one-parameter subgroups)",
                              st});
        if (!search_ok) {
            ok = false;
            r.notes.push_back("MISMATCH: search found " + std::to_string(res.classes.size()) +
                              " maximal classes; reference lists " + std::to_string(rows.size()));
        }
        r.notes.push_back("search completeness is only claimed within the stated bound");
    }
    r.json["match"] = ok;
    if (ok) {
        r.notes.insert(r.notes.begin(), "match");
    }
    r.exit_code = ok ? kExitOk : kExitMismatch;
    return r;
}

// -------------------------------------------------------- cubic-stability

Json certificate_json(const std::optional<Destabilizer>& d) {
    if (!d) {
        return nullptr;
    }
    Json w = Json::array();
    for (const auto& e : d->certificate) {
        w.push_back({{"monomial", e.monomial.name()}, {"weight", e.weight}});
    }
    return {{"lambda", {d->lambda.u, d->lambda.v}}, {"weights", w}};
}

Report cmd_cubic_stability(const std::string& path) {
    const auto f = cubic_support_from_json(read_json_file(path));
    const auto strict = torus_destabilizer(f, true);
    const auto weak = torus_destabilizer(f, false);
    const auto tags = match_normal_form(f);

    std::string verdict;
    if (strict) {
        verdict = "unstable w.r.t. torus, certificate " + strict->lambda.str();
    } else if (weak) {
        verdict = "not properly stable w.r.t. torus, certificate " + weak->lambda.str();
    } else {
        verdict = "no torus destabilizer";
    }

    Report r;
    r.title = "Torus stability of a cubic support";
    r.json["command"] = "cubic-stability";
    r.json["support"] = to_json(f)["support"];
    r.json["verdict"] = verdict;
    r.json["unstable"] = certificate_json(strict);
    r.json["not_properly_stable"] = certificate_json(weak);
    r.json["tags"] = tags.tags;
    r.json["scope"] = "diagonal torus in the given coordinates";

    std::string tag_text;
    for (const auto& t : tags.tags) {
        tag_text += (tag_text.empty() ? "" : ", ") + t;
    }
    r.sections.push_back({"verdict",
                          {{"support", "verdict", "pattern tags"},
                           {{describe(f), verdict, tag_text.empty() ? "none" : tag_text}}}});
    if (const auto& d = strict ? strict : weak) {
        r.sections.push_back({"weights under " + d->lambda.str(), weight_table(d->certificate)});
    }
    r.notes.push_back("scope: diagonal torus in the given coordinates; coordinate changes are not searched");
    return r;
}

// ---------------------------------------------------------- net-stability

OnePS5 parse_lambda(const std::string& text) {
    std::array<std::int64_t, 6> a{};
    std::stringstream ss(text);
    std::string item;
    std::size_t k = 0;
    while (std::getline(ss, item, ',')) {
        if (k == 6) {
            throw UsageError("--lambda: expected six integers");
        }
        try {
            a[k++] = std::stoll(item);
        } catch (const std::logic_error&) {
            throw UsageError("--lambda: bad entry '" + item + "'");
        }
    }
    if (k != 6) {
        throw UsageError("--lambda: expected six integers");
    }
    try {
        return OnePS5(a);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
}

Json verdict_json(const NetVerdict& v) {
    return {{"lambda", v.lambda.a},
            {"triple", {v.triple.m1.name(), v.triple.m2.name(), v.triple.m3.name()}},
            {"weights", v.weights},
            {"pluecker", v.plucker},
            {"not_properly_stable", v.not_properly_stable}};
}

Report cmd_net_stability(const std::string& path, const std::optional<std::string>& lambda_text, const Settings& s) {
    const auto parsed = net_from_json(read_json_file(path));
    std::optional<OnePS5> lambda = parsed.lambda;
    if (lambda_text) {
        lambda = parse_lambda(*lambda_text);
    }

    Report r;
    r.title = "Stability of a net of quadrics";
    r.json["command"] = "net-stability";
    r.json["net"] = to_json(parsed.net);
    if (parsed.support_only) {
        r.notes.push_back("support-only input: unit coefficients, accidental cancellation is not modelled");
        std::cerr << "warning: support-only net; unit coefficients used, cancellation not modelled\n";
    }
    if (lambda) {
        const auto v = not_properly_stable_wrt(parsed.net, *lambda);
        const auto lemma = lemma52_check(v.triple, *lambda);
        const std::string verdict = v.not_properly_stable
                                        ? "not properly stable w.r.t. lambda (weight " + std::to_string(v.plucker) + ")"
                                        : "lambda does not destabilize (weight " + std::to_string(v.plucker) + ")";
        r.json["verdict"] = verdict;
        r.json["result"] = verdict_json(v);
        Json jc = Json::array();
        TextTable ct{{"condition", "applies", "requirement", "holds"}, {}};
        for (const auto& c : lemma.conditions) {
            jc.push_back({{"condition", c.name}, {"applies", c.applies}, {"holds", c.holds}, {"requirement", c.requirement}});
            ct.rows.push_back({c.name, c.applies ? "yes" : "no", c.requirement, c.holds ? "yes" : "no"});
        }
        r.json["conditions"] = jc;
        r.json["admissible"] = lemma.admissible;
        r.sections.push_back({"verdict",
                              {{"lambda", "leading triple", "weights", "pluecker", "verdict"},
                               {{lambda->str(), v.triple.str(),
                                 std::to_string(v.weights[0]) + ", " + std::to_string(v.weights[1]) + ", " +
                                     std::to_string(v.weights[2]),
                                 std::to_string(v.plucker), verdict}}}});
        r.sections.push_back({"conditions on the leading triple", ct});
        return r;
    }

    const auto hits = net_grid_scan(parsed.net, s.search_bound, s.jobs);
    r.json["search_bound"] = s.search_bound;
    r.json["lambdas_scanned"] = normalized_lambdas(s.search_bound).size();
    Json arr = Json::array();
    TextTable t{{"lambda", "leading triple", "pluecker"}, {}};
    for (const auto& v : hits) {
        arr.push_back(verdict_json(v));
        t.rows.push_back({v.lambda.str(), v.triple.str(), std::to_string(v.plucker)});
    }
    r.json["destabilizing"] = arr;
    r.json["verdict"] = hits.empty() ? "no destabilizing 1-PS within the bound"
                                     : "not properly stable w.r.t. " + std::to_string(hits.size()) + " grid 1-PS";
    r.sections.push_back({"destabilizing one-parameter subgroups (a0 <= " + std::to_string(s.search_bound) + ")", t});
    r.notes.push_back(r.json["verdict"].get<std::string>());
    return r;
}

// ----------------------------------------------------------------- config

void apply_config(const std::string& path, Settings& s, const CLI::App& app, const CLI::App* rank) {
    const Json doc = read_json_file(path);
    detail::require_schema(doc, path, {kSchemaConfig});
    detail::reject_unknown_keys(doc, path,
                                {"schema", "format", "precision_bits", "search_bound", "jobs", "no_timestamp", "from", "to"});
    auto unset = [&](const CLI::App& a, const char* flag) { return a.count(flag) == 0; };
    auto get_int = [&](const char* key) { return detail::get_int(doc[key], path + "." + key); };

    if (doc.contains("format") && unset(app, "--format")) {
        if (!doc["format"].is_string()) {
            throw SchemaError(path + ".format", "expected a string");
        }
        s.format = doc["format"].get<std::string>();
        if (s.format != "json" && s.format != "csv" && s.format != "markdown") {
            throw SchemaError(path + ".format", "expected json, csv or markdown");
        }
    }
    if (doc.contains("precision_bits") && unset(app, "--precision-bits")) {
        s.precision_bits = static_cast<unsigned>(get_int("precision_bits"));
    }
    if (doc.contains("search_bound") && unset(app, "--search-bound")) {
        s.search_bound = get_int("search_bound");
    }
    if (doc.contains("jobs") && unset(app, "--jobs")) {
        s.jobs = static_cast<unsigned>(get_int("jobs"));
    }
    if (doc.contains("no_timestamp") && unset(app, "--no-timestamp")) {
        if (!doc["no_timestamp"].is_boolean()) {
            throw SchemaError(path + ".no_timestamp", "expected a boolean");
        }
        s.no_timestamp = doc["no_timestamp"].get<bool>();
    }
    if (doc.contains("from") && unset(*rank, "--from")) {
        s.from = get_int("from");
    }
    if (doc.contains("to") && unset(*rank, "--to")) {
        s.to = get_int("to");
    }
}

void validate(const Settings& s) {
    if (s.precision_bits < 1 || s.precision_bits > precision_bits_of<Real512>()) {
        throw UsageError("--precision-bits must lie in 1.." + std::to_string(precision_bits_of<Real512>()));
    }
    if (s.jobs < 1) {
        throw UsageError("--jobs must be >= 1");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k3kit: Heegner divisor ranks, period lattice normal forms and GIT weight analysis for K3 moduli"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    std::string config_path;
    app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "csv", "markdown"}));
    app.add_option("--precision-bits", s.precision_bits, "Float precision for the Gauss-sum route (rounded up to 134, 261 or 516)");
    app.add_option("--search-bound", s.search_bound, "Largest a0 scanned by 1-PS searches");
    app.add_option("--jobs", s.jobs, "Worker threads");
    app.add_flag("--no-timestamp", s.no_timestamp, "Omit the timestamp header");
    app.add_option("--config", config_path, "JSON config file (falls back to $K3KIT_CONFIG)");

    auto* rank = app.add_subcommand("rank", "Rank of the Heegner divisor span for a range of l");
    rank->add_option("--from", s.from, "First l");
    rank->add_option("--to", s.to, "Last l");

    std::int64_t hd = 0, hg = 0, hl = 1;
    auto* heegner = app.add_subcommand("heegner", "Heegner label and representative of D_{d,g} in degree 2l");
    heegner->add_option("d", hd)->required();
    heegner->add_option("g", hg)->required();
    heegner->add_option("l", hl)->required();

    std::int64_t nf_l = 1;
    std::optional<std::string> nf_vector, nf_norm;
    std::optional<std::int64_t> nf_level, nf_type;
    auto* normal = app.add_subcommand("normal-form", "Invariants and canonical representative of a primitive vector");
    normal->add_option("--l", nf_l, "Half degree l")->required();
    normal->add_option("--vector", nf_vector, "Comma-separated coordinates (omega, u1, v1, u2, v2, E8, E8)");
    normal->add_option("--norm", nf_norm, "Norm N");
    normal->add_option("--level", nf_level, "Level k");
    normal->add_option("--type", nf_type, "Type d");

    int which = 1;
    bool no_search = false;
    auto* tables = app.add_subcommand("tables", "Regenerate and compare the stability tables");
    tables->add_option("which", which, "1, 2 or 3")->required()->check(CLI::IsMember({1, 2, 3}));
    tables->add_flag("--no-search", no_search, "tables 3: verify the reference rows only");

    std::string cubic_path;
    auto* cubic = app.add_subcommand("cubic-stability", "Torus destabilizer of a cubic support (JSON file, - for stdin)");
    cubic->add_option("file", cubic_path)->required();

    std::string net_path;
    std::optional<std::string> net_lambda;
    auto* net = app.add_subcommand("net-stability", "Leading triple and Pluecker weight of a net of quadrics");
    net->add_option("file", net_path)->required();
    net->add_option("--lambda", net_lambda, "Comma-separated a0,...,a5; scans the grid when omitted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (config_path.empty()) {
            if (const char* env = std::getenv("K3KIT_CONFIG"); env != nullptr && *env != '\0') {
                config_path = env;
            }
        }
        if (!config_path.empty()) {
            apply_config(config_path, s, app, rank);
        }
        validate(s);

        Report r;
        if (rank->parsed()) {
            r = cmd_rank(s);
        } else if (heegner->parsed()) {
            r = cmd_heegner(hd, hg, hl);
        } else if (normal->parsed()) {
            r = cmd_normal_form(nf_l, nf_vector, nf_norm, nf_level, nf_type);
        } else if (tables->parsed()) {
            r = which == 3 ? net_table(s, !no_search) : cubic_table(which);
        } else if (cubic->parsed()) {
            r = cmd_cubic_stability(cubic_path);
        } else if (net->parsed()) {
            r = cmd_net_stability(net_path, net_lambda, s);
        }
        emit(r, s, std::cout);
        if (r.exit_code == kExitMismatch) {
            for (const auto& n : r.notes) {
                if (n.rfind("MISMATCH", 0) == 0 || n.rfind("mismatch", 0) == 0) {
                    std::cerr << n << "\n";
                }
            }
        }
        return r.exit_code;
    } catch (const SchemaError& e) {
        std::cerr << "schema error at " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IntegralityError& e) {
        std::cerr << "mismatch: " << e.what() << "\n";
        return kExitMismatch;
    } catch (const CrossCheckError& e) {
        std::cerr << "mismatch: " << e.what() << "\n";
        return kExitMismatch;
    }
}
