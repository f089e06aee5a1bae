#include <gtest/gtest.h>

#include "k3kit/nl_rank.hpp"

namespace k3kit {
namespace {

// Brute-force fractional-part sum, one term at a time.
Rational frac_sum_by_terms(std::int64_t l) {
    Rational s = 0;
    for (std::int64_t k = 0; k <= l; ++k) {
        s += frac(Rational(k * k, 4 * l));
    }
    return s;
}

TEST(DEis, Examples) {
    EXPECT_EQ(d_eis(1), 1);
    EXPECT_EQ(d_eis(4), 2);
    EXPECT_EQ(d_eis(9), 2);
    EXPECT_THROW(d_eis(0), InvalidArgument);
    EXPECT_THROW(d_eis(-3), InvalidArgument);
}

TEST(DEis, AtLeastOne) {
    for (std::int64_t l = 1; l <= 300; ++l) {
        ASSERT_GE(d_eis(l), 1);
    }
}

TEST(AlphaBeta, Examples) {
    EXPECT_EQ(alpha(1), 0);
    EXPECT_EQ(alpha(3), 0);
    EXPECT_EQ(beta(1), 2);
    EXPECT_EQ(beta(3), 0);
    // l = 2: (4/3) = 1; (2/7) + (2/3) = 1 - 1 = 0.
    EXPECT_EQ(alpha(2), 1);
    EXPECT_EQ(beta(2), 0);
    // l = 4: (8/7) = 1; (4/15) + (4/3) = 2.
    EXPECT_EQ(alpha(4), 1);
    EXPECT_EQ(beta(4), 2);
}

TEST(FracSum, MatchesTermwiseSum) {
    for (std::int64_t l = 1; l <= 200; ++l) {
        ASSERT_EQ(frac_sum(l), frac_sum_by_terms(l)) << l;
    }
    EXPECT_EQ(frac_sum(1), Rational(1, 4));
    EXPECT_EQ(frac_sum(3), Rational(7, 6));
}

TEST(RankViaJacobi, KnownLowDegreeValues) {
    const std::int64_t expected[] = {2, 3, 4, 4};
    for (std::int64_t l = 1; l <= 4; ++l) {
        const auto rep = rank_via_jacobi(l);
        EXPECT_EQ(rep.rank, expected[l - 1]) << l;
        EXPECT_TRUE(is_integer(rep.jacobi_value));
        EXPECT_TRUE(rep.agree());
    }
}

TEST(RankViaJacobi, TermsForDegreeTwo) {
    const auto rep = rank_via_jacobi(1);
    EXPECT_EQ(rep.alpha, 0);
    EXPECT_EQ(rep.beta, 2);
    EXPECT_EQ(rep.frac_sum, Rational(1, 4));
    EXPECT_EQ(rep.d_eis, 1);
    EXPECT_EQ(Rational(86, 24) - Rational(2, 6) - Rational(1, 4) - 1, Rational(2));
}

// Values computed with an independent rational-arithmetic script.
TEST(RankViaJacobi, FrozenValues) {
    EXPECT_EQ(rank_via_jacobi(5).rank, 6);
    EXPECT_EQ(rank_via_jacobi(6).rank, 7);
    EXPECT_EQ(frac_sum(6), Rational(43, 24));
}

TEST(RankViaGauss, KnownLowDegreeValues) {
    const double expected[] = {2.0, 3.0, 4.0, 4.0};
    for (std::int64_t l = 1; l <= 4; ++l) {
        EXPECT_NEAR(rank_via_gauss(l).convert_to<double>(), expected[l - 1], 1e-6) << l;
        EXPECT_EQ(round_rank(rank_via_gauss(l)), static_cast<std::int64_t>(expected[l - 1]));
    }
}

TEST(RankViaGauss, RoundingRejectsNonIntegers) {
    EXPECT_THROW(round_rank(Real("2.4")), IntegralityError);
    EXPECT_EQ(round_rank(Real("2.0000000001")), 2);
}

TEST(Rank, RoutesAgreeOnSweep) {
    for (std::int64_t l = 1; l <= 120; ++l) {
        const auto rep = rank_via_jacobi(l);
        ASSERT_TRUE(rep.agree()) << "l = " << l << " discrepancy " << rep.discrepancy().str(10);
        ASSERT_GE(rep.rank, 1);
        ASSERT_EQ(round_rank(rep.gauss_value), rep.rank);
    }
}

TEST(Rank, PrecisionIndependent) {
    for (std::int64_t l : {7, 31, 64}) {
        const auto a = rank_via_gauss<Real>(l);
        const auto b = rank_via_gauss<Real512>(l);
        EXPECT_LT(abs(Real512(a) - b).convert_to<double>(), 1e-30) << l;
    }
}

} // namespace
} // namespace k3kit
