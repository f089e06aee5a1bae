#pragma once

// Hilbert-Mumford weights for cubic sections of the quadric threefold
// Q = {x0 x4 + x1 x3 + x2^2 = 0}.  Cubics are taken modulo Q, so the monomials
// with a0 a4 = 0 form a basis B of the 30-dimensional space of sections.  A
// normalized 1-PS of SO(Q) is diag(t^u, t^v, 1, t^-v, t^-u) with u >= v >= 0.
//
// Everything here works on monomial supports in fixed coordinates; no
// coordinate changes are searched.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "k3kit/arith.hpp"
#include "k3kit/error.hpp"

namespace k3kit {

struct Monomial5 {
    std::array<int, 5> a{};

    Monomial5() = default;
    explicit Monomial5(std::array<int, 5> exps) : a(exps) {
        int total = 0;
        for (int e : a) {
            if (e < 0) {
                throw InvalidArgument("Monomial5: negative exponent");
            }
            total += e;
        }
        if (total != 3) {
            throw InvalidArgument("Monomial5: degree must be 3, got " + std::to_string(total));
        }
    }

    bool in_basis() const noexcept { return a[0] * a[4] == 0; }

    /// Sorted variable indices, e.g. x1^2 x4 -> {1, 1, 4}.
    std::array<int, 3> indices() const {
        std::array<int, 3> out{};
        std::size_t k = 0;
        for (int i = 0; i < 5; ++i) {
            for (int e = 0; e < a[i]; ++e) {
                out[k++] = i;
            }
        }
        return out;
    }

    std::string name() const {
        std::string s;
        for (int i = 0; i < 5; ++i) {
            if (a[i] == 0) {
                continue;
            }
            s += "x" + std::to_string(i);
            if (a[i] > 1) {
                s += "^" + std::to_string(a[i]);
            }
        }
        return s;
    }

    // Descending exponent order, so x0^3 comes first.
    friend bool operator<(const Monomial5& x, const Monomial5& y) { return x.a > y.a; }
    friend bool operator==(const Monomial5& x, const Monomial5& y) = default;
    friend std::ostream& operator<<(std::ostream& os, const Monomial5& m) { return os << m.name(); }
};

/// Parses "x1^2x4", "x0x3^2", "x2^3" and the like.
inline Monomial5 parse_monomial5(const std::string& text) {
    std::array<int, 5> a{};
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != 'x' || pos + 1 >= text.size() || text[pos + 1] < '0' || text[pos + 1] > '4') {
            throw InvalidArgument("parse_monomial5: cannot parse '" + text + "'");
        }
        const int var = text[pos + 1] - '0';
        pos += 2;
        int e = 1;
        if (pos < text.size() && text[pos] == '^') {
            if (pos + 1 >= text.size() || text[pos + 1] < '1' || text[pos + 1] > '3') {
                throw InvalidArgument("parse_monomial5: bad exponent in '" + text + "'");
            }
            e = text[pos + 1] - '0';
            pos += 2;
        }
        a[var] += e;
    }
    return Monomial5(a);
}

using CubicSupport = std::set<Monomial5>;

inline const std::vector<Monomial5>& basis_B() {
    static const std::vector<Monomial5> basis = [] {
        std::vector<Monomial5> out;
        for (int a0 = 3; a0 >= 0; --a0) {
            for (int a1 = 3 - a0; a1 >= 0; --a1) {
                for (int a2 = 3 - a0 - a1; a2 >= 0; --a2) {
                    for (int a3 = 3 - a0 - a1 - a2; a3 >= 0; --a3) {
                        const int a4 = 3 - a0 - a1 - a2 - a3;
                        if (a0 * a4 == 0) {
                            out.emplace_back(std::array<int, 5>{a0, a1, a2, a3, a4});
                        }
                    }
                }
            }
        }
        return out;
    }();
    return basis;
}

inline CubicSupport make_support(const std::vector<Monomial5>& monomials) {
    CubicSupport s;
    for (const auto& m : monomials) {
        if (!m.in_basis()) {
            throw InvalidArgument("support: " + m.name() + " is not in the basis (a0 a4 != 0)");
        }
        s.insert(m);
    }
    return s;
}

inline CubicSupport make_support(const std::vector<std::string>& names) {
    std::vector<Monomial5> ms;
    ms.reserve(names.size());
    for (const auto& n : names) {
        ms.push_back(parse_monomial5(n));
    }
    return make_support(ms);
}

inline std::string describe(const CubicSupport& s) {
    std::string out;
    for (const auto& m : s) {
        if (!out.empty()) {
            out += ", ";
        }
        out += m.name();
    }
    return out;
}

struct OnePS2 {
    std::int64_t u = 1;
    std::int64_t v = 0;

    OnePS2() = default;
    OnePS2(std::int64_t u_, std::int64_t v_) : u(u_), v(v_) {
        if (!(u >= v && v >= 0 && u > 0)) {
            throw InvalidArgument("OnePS2: need u >= v >= 0 and (u, v) != (0, 0), got (" + std::to_string(u) +
                                  ", " + std::to_string(v) + ")");
        }
    }

    std::string str() const { return "(" + std::to_string(u) + "," + std::to_string(v) + ")"; }

    friend bool operator==(const OnePS2&, const OnePS2&) = default;
    friend auto operator<=>(const OnePS2&, const OnePS2&) = default;
    friend std::ostream& operator<<(std::ostream& os, const OnePS2& l) { return os << l.str(); }
};

inline std::int64_t weight_cubic(const Monomial5& m, const OnePS2& lambda) {
    return (m.a[0] - m.a[4]) * lambda.u + (m.a[1] - m.a[3]) * lambda.v;
}

namespace detail {
template <class Pred>
CubicSupport filter_basis(Pred pred) {
    CubicSupport out;
    for (const auto& m : basis_B()) {
        if (pred(m)) {
            out.insert(m);
        }
    }
    return out;
}
} // namespace detail

inline CubicSupport nonpositive_set(const OnePS2& lambda) {
    return detail::filter_basis([&](const Monomial5& m) { return weight_cubic(m, lambda) <= 0; });
}

inline CubicSupport negative_set(const OnePS2& lambda) {
    return detail::filter_basis([&](const Monomial5& m) { return weight_cubic(m, lambda) < 0; });
}

inline CubicSupport invariant_monomials(const OnePS2& lambda) {
    return detail::filter_basis([&](const Monomial5& m) { return weight_cubic(m, lambda) == 0; });
}

/// Monomials of B fixed by the torus element with exponents w, which must be
/// of the form (w0, w1, 0, -w1, -w0).
inline CubicSupport fixed_monomials(const std::array<std::int64_t, 5>& w) {
    for (int i = 0; i < 5; ++i) {
        if (w[i] != -w[4 - i]) {
            throw InvalidArgument("fixed_monomials: weight vector must satisfy w_i = -w_{4-i}");
        }
    }
    return detail::filter_basis([&](const Monomial5& m) {
        std::int64_t s = 0;
        for (int i = 0; i < 5; ++i) {
            s += m.a[i] * w[i];
        }
        return s == 0;
    });
}

/// x dominates y when the sorted indices of x are componentwise <= those of
/// y.  Weights are monotone along this order for every normalized 1-PS.
inline bool dominates(const Monomial5& x, const Monomial5& y) {
    const auto ix = x.indices();
    const auto iy = y.indices();
    for (std::size_t k = 0; k < 3; ++k) {
        if (ix[k] > iy[k]) {
            return false;
        }
    }
    return true;
}

inline CubicSupport maximal_elements(const CubicSupport& s) {
    CubicSupport out;
    for (const auto& m : s) {
        const bool dominated = std::any_of(s.begin(), s.end(), [&](const Monomial5& o) {
            return !(o == m) && dominates(o, m);
        });
        if (!dominated) {
            out.insert(m);
        }
    }
    return out;
}

/// Everything in B dominated by some generator.
inline CubicSupport downward_closure(const CubicSupport& generators) {
    return detail::filter_basis([&](const Monomial5& m) {
        return std::any_of(generators.begin(), generators.end(),
                           [&](const Monomial5& g) { return dominates(g, m); });
    });
}

inline bool is_subset(const CubicSupport& a, const CubicSupport& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

enum class WeightMode { NonPositive, Negative };

inline const char* to_string(WeightMode mode) { return mode == WeightMode::NonPositive ? "<=0" : "<0"; }

struct ChamberSet {
    OnePS2 representative;
    std::vector<OnePS2> members;  // grid points producing this set
    CubicSupport set;
    CubicSupport maximal;        // maximal elements under domination
    CubicSupport invariant;      // weight-zero monomials at the representative
    CubicSupport presentation;   // maximal elements together with the weight-zero members
};

/// Critical slopes v/u of the weight walls are -(a0-a4)/(a1-a3) with both
/// differences bounded by 3 in absolute value, so every chamber between two
/// walls contains a mediant with denominator at most 6, and the grid
/// 0 <= v <= u <= 12 meets every chamber and every wall.
inline constexpr std::int64_t kCubicGridBound = 12;

inline std::vector<ChamberSet> maximal_chamber_sets(WeightMode mode, std::int64_t bound = kCubicGridBound) {
    if (bound < 1) {
        throw InvalidArgument("maximal_chamber_sets: bound must be >= 1");
    }
    std::map<CubicSupport, std::vector<OnePS2>> classes;
    for (std::int64_t u = 1; u <= bound; ++u) {
        for (std::int64_t v = 0; v <= u; ++v) {
            const OnePS2 lambda(u, v);
            const auto s = mode == WeightMode::NonPositive ? nonpositive_set(lambda) : negative_set(lambda);
            classes[s].push_back(lambda);
        }
    }

    std::vector<ChamberSet> out;
    for (const auto& [s, members] : classes) {
        const bool strictly_contained = std::any_of(classes.begin(), classes.end(), [&](const auto& other) {
            return other.first.size() > s.size() && is_subset(s, other.first);
        });
        if (strictly_contained) {
            continue;
        }
        ChamberSet row;
        row.members = members;
        row.representative = *std::min_element(members.begin(), members.end(), [](const OnePS2& x, const OnePS2& y) {
            return std::pair(x.u + x.v, x.u) < std::pair(y.u + y.v, y.u);
        });
        row.set = s;
        row.maximal = maximal_elements(s);
        row.invariant = invariant_monomials(row.representative);
        row.presentation = row.maximal;
        for (const auto& m : row.invariant) {
            if (s.count(m)) {
                row.presentation.insert(m);
            }
        }
        out.push_back(std::move(row));
    }
    std::sort(out.begin(), out.end(), [](const ChamberSet& x, const ChamberSet& y) {
        return std::pair(x.representative.u + x.representative.v, x.representative.u) <
               std::pair(y.representative.u + y.representative.v, y.representative.u);
    });
    return out;
}

/// Rows of the reference tables: a label, a 1-PS and the listed monomials.
struct TableRow {
    std::string label;
    OnePS2 lambda;
    CubicSupport listed;
};

inline std::vector<TableRow> table1_rows() {
    return {
        {"N1", OnePS2(1, 0),
         make_support(std::vector<std::string>{"x1^3", "x1^2x2", "x1^2x3", "x1x2^2", "x1x2x3", "x1x3^2", "x2^3",
                                               "x2^2x3", "x2x3^2", "x3^3"})},
        {"N2", OnePS2(1, 1), make_support(std::vector<std::string>{"x0x2x3", "x1x2x3", "x1x2x4", "x2^3"})},
        {"N3", OnePS2(2, 1), make_support(std::vector<std::string>{"x0x3^2", "x1^2x4", "x1x2x3", "x2^3"})},
    };
}

inline std::vector<TableRow> table2_rows() {
    return {
        {"U1", OnePS2(1, 0), make_support(std::vector<std::string>{"x1^2x4"})},
        {"U2", OnePS2(1, 1), make_support(std::vector<std::string>{"x0x3^2", "x2^2x3"})},
    };
}

struct WeightEntry {
    Monomial5 monomial;
    std::int64_t weight;
};

struct Destabilizer {
    OnePS2 lambda;
    bool strict = false;
    std::vector<WeightEntry> certificate;
};

namespace detail {

struct SlopeInterval {
    Rational lo{0};
    Rational hi{1};
    bool lo_open = false;
    bool hi_open = false;

    bool contains(const Rational& t) const {
        return (lo_open ? t > lo : t >= lo) && (hi_open ? t < hi : t <= hi);
    }
    bool empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }
};

// With u = 1 and t = v/u in [0, 1], each monomial asks p + q t <= 0 (or < 0).
inline std::optional<SlopeInterval> feasible_slopes(const CubicSupport& f, bool strict) {
    SlopeInterval iv;
    for (const auto& m : f) {
        const std::int64_t p = m.a[0] - m.a[4];
        const std::int64_t q = m.a[1] - m.a[3];
        if (q == 0) {
            if (strict ? p >= 0 : p > 0) {
                return std::nullopt;
            }
            continue;
        }
        const Rational bound = make_rational(-p, q);
        if (q > 0) {  // t <= -p/q
            if (bound < iv.hi || (bound == iv.hi && strict)) {
                iv.hi = bound;
                iv.hi_open = strict;
            }
        } else {  // t >= -p/q
            if (bound > iv.lo || (bound == iv.lo && strict)) {
                iv.lo = bound;
                iv.lo_open = strict;
            }
        }
    }
    if (iv.empty()) {
        return std::nullopt;
    }
    return iv;
}

// Smallest-denominator rational in the interval, smallest numerator on ties.
inline Rational simplest_in(const SlopeInterval& iv) {
    for (std::int64_t den = 1;; ++den) {
        const Integer first = floor_of(iv.lo * den);
        for (Integer num = first; Rational(num, Integer(den)) <= iv.hi; ++num) {
            const Rational t(num, Integer(den));
            if (iv.contains(t)) {
                return t;
            }
        }
    }
}

inline Destabilizer make_certificate(const CubicSupport& f, const OnePS2& lambda, bool strict) {
    Destabilizer d;
    d.lambda = lambda;
    d.strict = strict;
    for (const auto& m : f) {
        d.certificate.push_back({m, weight_cubic(m, lambda)});
    }
    return d;
}

} // namespace detail

/// A normalized 1-PS under which every monomial of f has weight <= 0
/// (strict: < 0), found from the exact feasible interval of slopes v/u.
inline std::optional<Destabilizer> torus_destabilizer(const CubicSupport& f, bool strict) {
    if (f.empty()) {
        throw InvalidArgument("torus_destabilizer: empty support");
    }
    const auto iv = detail::feasible_slopes(f, strict);
    if (!iv) {
        return std::nullopt;
    }
    const Rational t = detail::simplest_in(*iv);
    const OnePS2 lambda(boost::multiprecision::denominator(t).convert_to<std::int64_t>(),
                        boost::multiprecision::numerator(t).convert_to<std::int64_t>());
    return detail::make_certificate(f, lambda, strict);
}

/// Same question answered by testing the boundary rays, every wall of f and a
/// point strictly between consecutive walls.
inline std::optional<Destabilizer> torus_destabilizer_by_rays(const CubicSupport& f, bool strict) {
    if (f.empty()) {
        throw InvalidArgument("torus_destabilizer_by_rays: empty support");
    }
    std::set<Rational> walls{Rational(0), Rational(1)};
    for (const auto& m : f) {
        const std::int64_t p = m.a[0] - m.a[4];
        const std::int64_t q = m.a[1] - m.a[3];
        if (q != 0) {
            const Rational t = make_rational(-p, q);
            if (t > 0 && t < 1) {
                walls.insert(t);
            }
        }
    }
    std::vector<Rational> candidates(walls.begin(), walls.end());
    for (auto it = walls.begin(); std::next(it) != walls.end(); ++it) {
        candidates.push_back((*it + *std::next(it)) / 2);
    }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& t : candidates) {
        const OnePS2 lambda(boost::multiprecision::denominator(t).convert_to<std::int64_t>(),
                            boost::multiprecision::numerator(t).convert_to<std::int64_t>());
        const bool ok = std::all_of(f.begin(), f.end(), [&](const Monomial5& m) {
            const auto w = weight_cubic(m, lambda);
            return strict ? w < 0 : w <= 0;
        });
        if (ok) {
            return detail::make_certificate(f, lambda, strict);
        }
    }
    return std::nullopt;
}

struct NormalFormTags {
    std::vector<std::string> tags;  // e.g. {"N1", "N2", "xi"}
    bool has(const std::string& t) const { return std::find(tags.begin(), tags.end(), t) != tags.end(); }
};

/// The support family of the strictly semistable type xi: l1 x2^3 + l2 x1x2x3.
inline CubicSupport xi_family() { return make_support(std::vector<std::string>{"x2^3", "x1x2x3"}); }

/// Which reference support families contain f, in the given coordinates.
inline NormalFormTags match_normal_form(const CubicSupport& f) {
    NormalFormTags out;
    for (const auto& row : table1_rows()) {
        if (is_subset(f, downward_closure(row.listed))) {
            out.tags.push_back(row.label);
        }
    }
    for (const auto& row : table2_rows()) {
        if (is_subset(f, downward_closure(row.listed))) {
            out.tags.push_back(row.label);
        }
    }
    if (is_subset(f, xi_family())) {
        out.tags.push_back("xi");
    }
    return out;
}

} // namespace k3kit
