#pragma once

// Weights of nets of quadrics in P^5 under normalized 1-PS
// diag(t^a0, ..., t^a5) of SL6, the refined monomial order >_lambda, leading
// triples of a net, Pluecker weights, the case analysis that rules out
// triple points and singular curves, and a bounded search over 1-PS.

#include <algorithm>
#include <array>
#include <bitset>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "k3kit/arith.hpp"
#include "k3kit/error.hpp"
#include "k3kit/parallel.hpp"

namespace k3kit {

inline constexpr std::size_t kQuadCount = 21;

/// x_i x_j with i <= j.
struct QuadMonomial {
    int i = 0;
    int j = 0;

    QuadMonomial() = default;
    QuadMonomial(int i_, int j_) : i(std::min(i_, j_)), j(std::max(i_, j_)) {
        if (i < 0 || j > 5) {
            throw InvalidArgument("QuadMonomial: indices must lie in 0..5");
        }
    }

    /// Position in x0^2 > x0x1 > ... > x0x5 > x1^2 > ... > x5^2; 0 is largest.
    std::size_t lex_rank() const {
        return static_cast<std::size_t>(i * 6 - i * (i - 1) / 2 + (j - i));
    }

    std::string name() const {
        if (i == j) {
            return "x" + std::to_string(i) + "^2";
        }
        return "x" + std::to_string(i) + "x" + std::to_string(j);
    }

    friend bool operator==(const QuadMonomial&, const QuadMonomial&) = default;
    friend std::ostream& operator<<(std::ostream& os, const QuadMonomial& m) { return os << m.name(); }
};

inline const std::array<QuadMonomial, kQuadCount>& quad_monomials() {
    static const auto all = [] {
        std::array<QuadMonomial, kQuadCount> out;
        std::size_t k = 0;
        for (int i = 0; i < 6; ++i) {
            for (int j = i; j < 6; ++j) {
                out[k++] = QuadMonomial(i, j);
            }
        }
        return out;
    }();
    return all;
}

/// Parses "x0x5", "x3^2", "x2x2".
inline QuadMonomial parse_quad(const std::string& text) {
    auto digit = [&](std::size_t pos) {
        if (pos >= text.size() || text[pos] < '0' || text[pos] > '5') {
            throw InvalidArgument("parse_quad: cannot parse '" + text + "'");
        }
        return text[pos] - '0';
    };
    if (text.size() == 4 && text[0] == 'x' && text[2] == '^' && text[3] == '2') {
        const int i = digit(1);
        return QuadMonomial(i, i);
    }
    if (text.size() == 4 && text[0] == 'x' && text[2] == 'x') {
        return QuadMonomial(digit(1), digit(3));
    }
    throw InvalidArgument("parse_quad: cannot parse '" + text + "'");
}

struct OnePS5 {
    std::array<std::int64_t, 6> a{};

    OnePS5() : a{1, 0, 0, 0, 0, -1} {}
    explicit OnePS5(std::array<std::int64_t, 6> w) : a(w) {
        std::int64_t s = 0;
        bool nonzero = false;
        for (std::size_t k = 0; k < 6; ++k) {
            s += a[k];
            nonzero = nonzero || a[k] != 0;
            if (k > 0 && a[k] > a[k - 1]) {
                throw InvalidArgument("OnePS5: weights must be non-increasing, got " + str());
            }
        }
        if (s != 0) {
            throw InvalidArgument("OnePS5: weights must sum to 0, got " + str());
        }
        if (!nonzero) {
            throw InvalidArgument("OnePS5: weights must not all vanish");
        }
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t k = 0; k < 6; ++k) {
            s += (k ? "," : "") + std::to_string(a[k]);
        }
        return s + ")";
    }

    friend bool operator==(const OnePS5&, const OnePS5&) = default;
    friend auto operator<=>(const OnePS5&, const OnePS5&) = default;
    friend std::ostream& operator<<(std::ostream& os, const OnePS5& l) { return os << l.str(); }
};

inline std::int64_t weight_quad(const QuadMonomial& m, const OnePS5& lambda) {
    return lambda.a[static_cast<std::size_t>(m.i)] + lambda.a[static_cast<std::size_t>(m.j)];
}

/// m >_lambda m': larger weight, ties broken by the lexicographic order.
inline bool order_gt(const QuadMonomial& m, const QuadMonomial& n, const OnePS5& lambda) {
    const auto wm = weight_quad(m, lambda);
    const auto wn = weight_quad(n, lambda);
    if (wm != wn) {
        return wm > wn;
    }
    return m.lex_rank() < n.lex_rank();
}

inline bool order_ge(const QuadMonomial& m, const QuadMonomial& n, const OnePS5& lambda) {
    return m == n || order_gt(m, n, lambda);
}

/// All 21 monomials, largest first under >_lambda.
inline std::array<QuadMonomial, kQuadCount> sorted_by_order(const OnePS5& lambda) {
    auto out = quad_monomials();
    std::sort(out.begin(), out.end(),
              [&](const QuadMonomial& x, const QuadMonomial& y) { return order_gt(x, y, lambda); });
    return out;
}

using QuadricRow = std::array<Rational, kQuadCount>;  // indexed by lex_rank

namespace detail {

// Row-reduces in place over the given column order; returns pivot columns.
inline std::vector<std::size_t> echelon(std::vector<QuadricRow>& rows, const std::array<std::size_t, kQuadCount>& cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c : cols) {
        if (r == rows.size()) {
            break;
        }
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) {
            ++p;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[p]);
        const Rational lead = rows[r][c];
        for (auto& x : rows[r]) {
            x /= lead;
        }
        for (std::size_t q = 0; q < rows.size(); ++q) {
            if (q != r && rows[q][c] != 0) {
                const Rational f = rows[q][c];
                for (std::size_t k = 0; k < kQuadCount; ++k) {
                    rows[q][k] -= f * rows[r][k];
                }
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::array<std::size_t, kQuadCount> lex_columns() {
    std::array<std::size_t, kQuadCount> cols{};
    for (std::size_t k = 0; k < kQuadCount; ++k) {
        cols[k] = k;
    }
    return cols;
}

} // namespace detail

/// Three linearly independent quadrics with exact coefficients.
class QuadricNet {
public:
    explicit QuadricNet(std::array<QuadricRow, 3> rows) : rows_(std::move(rows)) {
        std::vector<QuadricRow> work(rows_.begin(), rows_.end());
        if (detail::echelon(work, detail::lex_columns()).size() != 3) {
            throw InvalidArgument("QuadricNet: the three quadrics are linearly dependent");
        }
    }

    /// Unit coefficients on each listed monomial.  Cancellations that special
    /// coefficients could produce are not modelled.
    static QuadricNet from_supports(const std::array<std::vector<QuadMonomial>, 3>& supports) {
        std::array<QuadricRow, 3> rows{};
        for (std::size_t q = 0; q < 3; ++q) {
            rows[q].fill(Rational(0));
            for (const auto& m : supports[q]) {
                rows[q][m.lex_rank()] += 1;
            }
        }
        return QuadricNet(rows);
    }

    const std::array<QuadricRow, 3>& rows() const noexcept { return rows_; }

private:
    std::array<QuadricRow, 3> rows_;
};

struct LeadingTriple {
    QuadMonomial m1, m2, m3;

    std::array<QuadMonomial, 3> as_array() const { return {m1, m2, m3}; }
    std::string str() const { return "(" + m1.name() + ", " + m2.name() + ", " + m3.name() + ")"; }
    friend bool operator==(const LeadingTriple&, const LeadingTriple&) = default;
    friend std::ostream& operator<<(std::ostream& os, const LeadingTriple& t) { return os << t.str(); }
};

/// Orders three distinct monomials so that m1 >_lambda m2 >_lambda m3.
inline LeadingTriple make_triple(QuadMonomial a, QuadMonomial b, QuadMonomial c, const OnePS5& lambda) {
    std::array<QuadMonomial, 3> t{a, b, c};
    if (a == b || b == c || a == c) {
        throw InvalidArgument("make_triple: monomials must be distinct");
    }
    std::sort(t.begin(), t.end(), [&](const QuadMonomial& x, const QuadMonomial& y) { return order_gt(x, y, lambda); });
    return {t[0], t[1], t[2]};
}

/// Pivot monomials of the net in echelon form with columns ordered by >_lambda.
inline LeadingTriple leading_terms(const QuadricNet& net, const OnePS5& lambda) {
    const auto order = sorted_by_order(lambda);
    std::array<std::size_t, kQuadCount> cols{};
    for (std::size_t k = 0; k < kQuadCount; ++k) {
        cols[k] = order[k].lex_rank();
    }
    std::vector<QuadricRow> work(net.rows().begin(), net.rows().end());
    const auto pivots = detail::echelon(work, cols);
    const auto& all = quad_monomials();
    return {all[pivots[0]], all[pivots[1]], all[pivots[2]]};
}

inline std::int64_t plucker_weight(const LeadingTriple& t, const OnePS5& lambda) {
    return weight_quad(t.m1, lambda) + weight_quad(t.m2, lambda) + weight_quad(t.m3, lambda);
}

struct NetVerdict {
    OnePS5 lambda;
    LeadingTriple triple;
    std::array<std::int64_t, 3> weights{};
    std::int64_t plucker = 0;
    bool not_properly_stable = false;
};

inline NetVerdict not_properly_stable_wrt(const QuadricNet& net, const OnePS5& lambda) {
    NetVerdict v;
    v.lambda = lambda;
    v.triple = leading_terms(net, lambda);
    v.weights = {weight_quad(v.triple.m1, lambda), weight_quad(v.triple.m2, lambda), weight_quad(v.triple.m3, lambda)};
    v.plucker = v.weights[0] + v.weights[1] + v.weights[2];
    v.not_properly_stable = v.plucker <= 0;
    return v;
}

/// How "m >= m'" is read in the case analysis: by the refined order >_lambda
/// (the default), or by weight alone.
enum class CompareMode { Order, Weight };

struct ConditionResult {
    std::string name;         // "1", "2", "3", "1'", "2'", "3'"
    bool applies = true;
    bool holds = true;
    std::string requirement;  // e.g. "m2 >= x0x5"
};

struct Lemma52Report {
    std::array<ConditionResult, 6> conditions;
    bool admissible = true;

    const ConditionResult& operator[](const std::string& name) const {
        for (const auto& c : conditions) {
            if (c.name == name) {
                return c;
            }
        }
        throw InvalidArgument("Lemma52Report: no condition " + name);
    }
};

namespace detail {

struct Comparator {
    const OnePS5& lambda;
    CompareMode mode;

    bool ge(const QuadMonomial& m, const QuadMonomial& n) const {
        return mode == CompareMode::Order ? order_ge(m, n, lambda) : weight_quad(m, lambda) >= weight_quad(n, lambda);
    }
    bool lt(const QuadMonomial& m, const QuadMonomial& n) const { return !ge(m, n); }
    QuadMonomial max(const QuadMonomial& m, const QuadMonomial& n) const { return order_gt(n, m, lambda) ? n : m; }
};

inline ConditionResult condition(std::string name, const std::string& slot, const QuadMonomial& m,
                                 const QuadMonomial& bound, const Comparator& cmp) {
    return {std::move(name), true, cmp.ge(m, bound), slot + " >= " + bound.name()};
}

inline ConditionResult skipped(std::string name, std::string why) { return {std::move(name), false, true, std::move(why)}; }

} // namespace detail

/// Conditions on the leading triple that exclude a point of multiplicity > 2
/// ((1)-(3)) and a singular curve ((1')-(3')).  Conditions whose hypothesis
/// fails count as holding.
inline Lemma52Report lemma52_check(const LeadingTriple& t, const OnePS5& lambda, CompareMode mode = CompareMode::Order) {
    const detail::Comparator cmp{lambda, mode};
    const QuadMonomial x00(0, 0), x03(0, 3), x04(0, 4), x05(0, 5);
    const QuadMonomial x11(1, 1), x13(1, 3), x14(1, 4), x15(1, 5);
    const QuadMonomial x22(2, 2), x24(2, 4), x25(2, 5);
    const QuadMonomial x33(3, 3), x35(3, 5), x44(4, 4);

    Lemma52Report r;
    r.conditions[0] = detail::condition("1", "m1", t.m1, x04, cmp);
    r.conditions[1] = t.m1 == x00 ? detail::condition("2", "m2", t.m2, x15, cmp)
                                  : detail::condition("2", "m2", t.m2, x05, cmp);
    r.conditions[2] = cmp.lt(t.m1, x03) ? detail::condition("3", "m3", t.m3, x33, cmp)
                                        : detail::skipped("3", "m1 >= x0x3");

    if (cmp.lt(t.m3, x15) || cmp.lt(t.m2, x14)) {
        r.conditions[3] = detail::condition("1'", "m1", t.m1, x11, cmp);
    } else {
        r.conditions[3] = detail::condition("1'", "m1", t.m1, cmp.max(x13, x22), cmp);
    }

    if (cmp.lt(t.m3, x25)) {
        r.conditions[4] = detail::condition("2'", "m2", t.m2, x22, cmp);
    } else if (cmp.lt(t.m1, x11)) {
        r.conditions[4] = detail::condition("2'", "m2", t.m2, cmp.max(x14, x33), cmp);
    } else {
        r.conditions[4] = detail::condition("2'", "m2", t.m2, cmp.max(x24, x33), cmp);
    }

    r.conditions[5] = detail::condition("3'", "m3", t.m3, cmp.max(x35, x44), cmp);

    r.admissible = std::all_of(r.conditions.begin(), r.conditions.end(), [](const ConditionResult& c) { return c.holds; });
    return r;
}

/// A row of the reference table: a 1-PS and three slots of monomials.
struct Table3Row {
    std::string label;
    OnePS5 lambda;
    std::array<std::vector<QuadMonomial>, 3> slots;
};

inline std::vector<Table3Row> table3_rows() {
    auto q = [](std::initializer_list<const char*> names) {
        std::vector<QuadMonomial> out;
        for (const char* n : names) {
            out.push_back(parse_quad(n));
        }
        return out;
    };
    return {
        {"N1'", OnePS5({2, 1, 0, 0, -1, -2}), {q({"x0x2", "x1^2"}), q({"x0x5", "x1x4", "x2^2"}), q({"x2x5", "x4^2"})}},
        {"N2'", OnePS5({3, 1, 1, -1, -1, -3}), {q({"x0x3", "x1^2"}), q({"x0x5", "x1x3"}), q({"x1x5", "x3^2"})}},
        {"N3'", OnePS5({4, 1, 1, -2, -2, -2}), {q({"x0x3", "x1^2"}), q({"x0x3", "x1^2"}), q({"x3^2"})}},
        {"N4'", OnePS5({5, 3, 1, -1, -3, -5}),
         {q({"x0x4", "x1x3", "x2^2"}), q({"x0x5", "x1x4", "x2x3"}), q({"x1x5", "x2x4", "x3^2"})}},
    };
}

/// Greatest monomial of each slot under >_lambda, skipping monomials already
/// taken by an earlier slot so that the triple is made of distinct monomials.
inline LeadingTriple slot_maxima(const Table3Row& row) {
    std::vector<QuadMonomial> picked;
    for (const auto& slot : row.slots) {
        std::optional<QuadMonomial> best;
        for (const auto& m : slot) {
            if (std::find(picked.begin(), picked.end(), m) != picked.end()) {
                continue;
            }
            if (!best || order_gt(m, *best, row.lambda)) {
                best = m;
            }
        }
        if (!best) {
            throw InvalidArgument("slot_maxima: slot exhausted in row " + row.label);
        }
        picked.push_back(*best);
    }
    return {picked[0], picked[1], picked[2]};
}

struct Table3RowCheck {
    std::string label;
    OnePS5 lambda;
    std::array<std::optional<std::int64_t>, 3> slot_weights;  // empty if the slot is not of constant weight
    bool slot_weights_constant = true;
    LeadingTriple triple;
    std::int64_t plucker = 0;
    bool plucker_nonpositive = false;
    Lemma52Report lemma;
    bool pass = false;
};

inline Table3RowCheck verify_row(const Table3Row& row, CompareMode mode = CompareMode::Order) {
    Table3RowCheck c;
    c.label = row.label;
    c.lambda = row.lambda;
    for (std::size_t s = 0; s < 3; ++s) {
        const auto w0 = weight_quad(row.slots[s].front(), row.lambda);
        const bool constant = std::all_of(row.slots[s].begin(), row.slots[s].end(),
                                          [&](const QuadMonomial& m) { return weight_quad(m, row.lambda) == w0; });
        c.slot_weights[s] = constant ? std::optional(w0) : std::nullopt;
        c.slot_weights_constant = c.slot_weights_constant && constant;
    }
    c.triple = slot_maxima(row);
    c.plucker = plucker_weight(c.triple, row.lambda);
    c.plucker_nonpositive = c.plucker <= 0;
    c.lemma = lemma52_check(c.triple, row.lambda, mode);
    c.pass = c.slot_weights_constant && c.plucker_nonpositive && c.lemma.admissible;
    return c;
}

inline std::vector<Table3RowCheck> table3_verify(CompareMode mode = CompareMode::Order) {
    std::vector<Table3RowCheck> out;
    for (const auto& row : table3_rows()) {
        out.push_back(verify_row(row, mode));
    }
    return out;
}

/// Normalized 1-PS with 1 <= a0 <= bound, in lexicographically decreasing order.
inline std::vector<OnePS5> normalized_lambdas(std::int64_t bound) {
    if (bound < 1) {
        throw InvalidArgument("normalized_lambdas: bound must be >= 1");
    }
    std::vector<OnePS5> out;
    std::array<std::int64_t, 6> a{};
    auto rec = [&](auto&& self, std::size_t k, std::int64_t sum) -> void {
        if (k == 6) {
            if (sum == 0) {
                out.emplace_back(a);
            }
            return;
        }
        const auto remaining = static_cast<std::int64_t>(6 - k);
        for (std::int64_t x = a[k - 1]; sum + x * remaining >= 0; --x) {
            a[k] = x;
            self(self, k + 1, sum + x);
        }
    };
    for (std::int64_t a0 = bound; a0 >= 1; --a0) {
        a[0] = a0;
        rec(rec, 1, a0);
    }
    return out;
}

inline constexpr std::size_t kTripleCount = 1330;  // C(21, 3)
using TripleSet = std::bitset<kTripleCount>;

/// Unordered triples of distinct monomials, indexed by lex ranks i < j < k.
inline const std::vector<std::array<std::size_t, 3>>& all_triples() {
    static const auto triples = [] {
        std::vector<std::array<std::size_t, 3>> out;
        for (std::size_t i = 0; i < kQuadCount; ++i) {
            for (std::size_t j = i + 1; j < kQuadCount; ++j) {
                for (std::size_t k = j + 1; k < kQuadCount; ++k) {
                    out.push_back({i, j, k});
                }
            }
        }
        return out;
    }();
    return triples;
}

/// Triples with Pluecker weight <= 0 under lambda that pass the case analysis.
inline TripleSet admissible_triples(const OnePS5& lambda, CompareMode mode = CompareMode::Order) {
    const auto& all = quad_monomials();
    const auto& triples = all_triples();
    TripleSet s;
    for (std::size_t t = 0; t < triples.size(); ++t) {
        const auto& idx = triples[t];
        const auto lt = make_triple(all[idx[0]], all[idx[1]], all[idx[2]], lambda);
        if (plucker_weight(lt, lambda) > 0) {
            continue;
        }
        if (lemma52_check(lt, lambda, mode).admissible) {
            s.set(t);
        }
    }
    return s;
}

struct Table3Class {
    std::vector<OnePS5> members;  // all grid points producing this triple set
    TripleSet triples;
    std::size_t size() const { return triples.count(); }
    bool contains(const OnePS5& l) const { return std::find(members.begin(), members.end(), l) != members.end(); }
};

struct Table3Search {
    std::int64_t bound = 0;
    std::size_t lambdas_scanned = 0;
    std::size_t distinct_sets = 0;
    std::vector<Table3Class> classes;  // inclusion-maximal, non-empty
};

inline constexpr std::int64_t kTable3DefaultBound = 6;

/// Groups the grid by admissible triple set and keeps the inclusion-maximal
/// non-empty sets.  The result does not depend on `jobs`.
inline Table3Search table3_search(std::int64_t bound = kTable3DefaultBound, unsigned jobs = 1,
                                  CompareMode mode = CompareMode::Order) {
    if (bound < 5) {
        throw InvalidArgument("table3_search: bound must be >= 5");
    }
    const auto lambdas = normalized_lambdas(bound);
    const auto sets = parallel_map<TripleSet>(lambdas.size(), jobs,
                                              [&](std::size_t i) { return admissible_triples(lambdas[i], mode); });

    auto less = [](const TripleSet& x, const TripleSet& y) {
        for (std::size_t k = 0; k < kTripleCount; ++k) {
            if (x[k] != y[k]) {
                return y[k];
            }
        }
        return false;
    };
    std::map<TripleSet, std::vector<OnePS5>, decltype(less)> groups(less);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        groups[sets[i]].push_back(lambdas[i]);
    }

    Table3Search out;
    out.bound = bound;
    out.lambdas_scanned = lambdas.size();
    out.distinct_sets = groups.size();
    for (const auto& [s, members] : groups) {
        if (s.none()) {
            continue;
        }
        const bool strictly_contained = std::any_of(groups.begin(), groups.end(), [&](const auto& other) {
            return other.first != s && (s & ~other.first).none();
        });
        if (!strictly_contained) {
            Table3Class c;
            c.members = members;
            std::sort(c.members.begin(), c.members.end());
            c.triples = s;
            out.classes.push_back(std::move(c));
        }
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const Table3Class& x, const Table3Class& y) { return x.members.front() < y.members.front(); });
    return out;
}

inline std::size_t triple_index(const LeadingTriple& t) {
    std::array<std::size_t, 3> r{t.m1.lex_rank(), t.m2.lex_rank(), t.m3.lex_rank()};
    std::sort(r.begin(), r.end());
    const auto& triples = all_triples();
    const auto it = std::lower_bound(triples.begin(), triples.end(), r);
    return static_cast<std::size_t>(it - triples.begin());
}

/// Grid points under which the net is not properly stable.
inline std::vector<NetVerdict> net_grid_scan(const QuadricNet& net, std::int64_t bound, unsigned jobs = 1) {
    const auto lambdas = normalized_lambdas(bound);
    const auto verdicts =
        parallel_map<NetVerdict>(lambdas.size(), jobs, [&](std::size_t i) { return not_properly_stable_wrt(net, lambdas[i]); });
    std::vector<NetVerdict> out;
    std::copy_if(verdicts.begin(), verdicts.end(), std::back_inserter(out),
                 [](const NetVerdict& v) { return v.not_properly_stable; });
    return out;
}

} // namespace k3kit
