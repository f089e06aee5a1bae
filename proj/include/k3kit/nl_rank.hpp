#pragma once

// Rank of the span of Heegner divisors in Pic_Q of the moduli space of
// degree-2l quasi-polarized K3 surfaces.  Two routes are provided:
//
//   * a Gauss-sum route, evaluated with high-precision floats, and
//   * a Jacobi-symbol route, evaluated in exact rational arithmetic.
//
// Both use the fractional-part sum sum_{k=0}^{l} {k^2/4l} and the Eisenstein
// count d_Eis = #{0 <= k <= l : 4l | k^2}, which are computed exactly.

#include <cmath>
#include <cstdint>
#include <string>

#include "k3kit/arith.hpp"
#include "k3kit/error.hpp"

namespace k3kit {

inline constexpr double kRankTolerance = 1e-6;

template <class R = Real>
struct RankReport {
    std::int64_t l = 0;
    std::int64_t rank = 0;
    R gauss_value{0};
    Rational jacobi_value{0};
    int alpha = 0;
    int beta = 0;
    Rational frac_sum{0};
    std::int64_t d_eis = 0;

    // Distance between the two routes.
    R discrepancy() const { return abs(gauss_value - to_real<R>(jacobi_value)); }
    bool agree() const { return discrepancy() < R(kRankTolerance); }
};

namespace detail {
inline void require_positive_l(std::int64_t l, const char* what) {
    if (l < 1) {
        throw InvalidArgument(std::string(what) + ": l must be >= 1, got " + std::to_string(l));
    }
}
} // namespace detail

inline std::int64_t d_eis(std::int64_t l) {
    detail::require_positive_l(l, "d_eis");
    const std::int64_t m = 4 * l;
    std::int64_t n = 0;
    for (std::int64_t k = 0; k <= l; ++k) {
        if (static_cast<__int128>(k) * k % m == 0) {
            ++n;
        }
    }
    return n;
}

inline int alpha(std::int64_t l) {
    detail::require_positive_l(l, "alpha");
    if (l % 2 != 0) {
        return 0;
    }
    return jacobi(2 * l, 2 * l - 1);
}

inline int beta(std::int64_t l) {
    detail::require_positive_l(l, "beta");
    const int j = jacobi(l, 4 * l - 1);
    if (l % 3 == 0) {
        return j - 1;
    }
    return j + jacobi(l, 3);
}

/// sum_{k=0}^{l} {k^2 / 4l}, exact.
inline Rational frac_sum(std::int64_t l) {
    detail::require_positive_l(l, "frac_sum");
    const std::int64_t m = 4 * l;
    // All terms share the denominator 4l, so accumulate residues.
    Integer residues = 0;
    for (std::int64_t k = 0; k <= l; ++k) {
        residues += static_cast<std::int64_t>(static_cast<__int128>(k) * k % m);
    }
    return Rational(residues, Integer(m));
}

/// Exact value of the Jacobi-symbol form of the rank formula (not yet
/// checked for integrality).
inline Rational jacobi_formula_value(std::int64_t l) {
    detail::require_positive_l(l, "jacobi_formula_value");
    return Rational(31 * l + 55, 24) - Rational(alpha(l), 4) - Rational(beta(l), 6) -
           frac_sum(l) - Rational(d_eis(l));
}

/// Gauss-sum form of the rank formula, evaluated term by term.
template <class R = Real>
R rank_via_gauss(std::int64_t l) {
    detail::require_positive_l(l, "rank_via_gauss");
    const R pi = boost::math::constants::pi<R>();
    const ComplexHP<R> rot{cos(5 * pi / 12), sin(5 * pi / 12)};

    const ComplexHP<R> g4 = gauss_sum<R>(-1, 4 * l) + gauss_sum<R>(3, 4 * l);
    const R term4 = (rot * g4).re / (6 * sqrt(R(6 * l)));
    const R term2 = gauss_sum<R>(-1, 2 * l).re / (4 * sqrt(R(2 * l)));

    return R(31 * l) / 24 + R(55) / 24 - term4 - term2 - to_real<R>(frac_sum(l)) - R(d_eis(l));
}

/// Rounds a Gauss-route value to the nearest integer; rejects values farther
/// than the tolerance from it.
template <class R>
std::int64_t round_rank(const R& value) {
    const R nearest = round(value);
    if (abs(value - nearest) > R(kRankTolerance)) {
        throw IntegralityError("rank_via_gauss: value " + value.str(20) +
                               " is not within 1e-6 of an integer");
    }
    return nearest.template convert_to<std::int64_t>();
}

/// Full report for one l: the exact Jacobi route decides the rank, the Gauss
/// route is attached for cross-checking.
template <class R = Real>
RankReport<R> rank_via_jacobi(std::int64_t l) {
    detail::require_positive_l(l, "rank_via_jacobi");
    RankReport<R> rep;
    rep.l = l;
    rep.alpha = alpha(l);
    rep.beta = beta(l);
    rep.frac_sum = frac_sum(l);
    rep.d_eis = d_eis(l);
    rep.jacobi_value = Rational(31 * l + 55, 24) - Rational(rep.alpha, 4) -
                       Rational(rep.beta, 6) - rep.frac_sum - Rational(rep.d_eis);
    if (!is_integer(rep.jacobi_value)) {
        throw IntegralityError("rank_via_jacobi: l = " + std::to_string(l) +
                               " gives non-integral value " + to_string(rep.jacobi_value));
    }
    rep.rank = boost::multiprecision::numerator(rep.jacobi_value).template convert_to<std::int64_t>();
    rep.gauss_value = rank_via_gauss<R>(l);
    return rep;
}

} // namespace k3kit
