#include <gtest/gtest.h>

#include <random>

#include "k3kit/lattice.hpp"
#include "oracles.hpp"

namespace k3kit {
namespace {

using oracle::bareiss_det;

LatticeVector basis_vector(std::size_t i) {
    LatticeVector v(kLambdaRank, 0);
    v[i] = 1;
    return v;
}

TEST(LambdaGram, Entries) {
    const auto l1 = lambda_gram(1);
    EXPECT_EQ(l1.rank(), 21u);
    EXPECT_EQ(l1.gram()(0, 0), -2);
    EXPECT_EQ(bareiss_det(hyperbolic_plane()), -1);
    EXPECT_EQ(l1.gram()(kU1, kV1), 1);
    EXPECT_EQ(l1.gram()(kU1, kU1), 0);
    EXPECT_THROW(lambda_gram(0), InvalidArgument);
}

TEST(LambdaGram, Determinant) {
    EXPECT_EQ(bareiss_det(e8_negative()), 1);
    EXPECT_EQ(abs(bareiss_det(lambda_gram(3).gram())), 6);
    for (std::int64_t l = 1; l <= 12; ++l) {
        // -2l * (-1)^2 * 1 * 1
        EXPECT_EQ(bareiss_det(lambda_gram(l).gram()), -2 * l);
    }
}

TEST(EvenLatticeType, RejectsBadGram) {
    EXPECT_THROW(EvenLattice(IntMatrix::from_rows({{1, 0}, {0, 2}})), InvalidArgument);
    EXPECT_THROW(EvenLattice(IntMatrix::from_rows({{2, 1}, {0, 2}})), InvalidArgument);
    EXPECT_THROW(EvenLattice(IntMatrix::from_rows({{2, 1, 0}, {1, 2, 0}})), InvalidArgument);
}

TEST(DiscriminantGroup, Examples) {
    EXPECT_EQ(discriminant_group(lambda_gram(3)), std::vector<Integer>{6});
    EXPECT_EQ(discriminant_group(lambda_gram(1)), std::vector<Integer>{2});
    EXPECT_TRUE(discriminant_group(EvenLattice(hyperbolic_plane())).empty());
    EXPECT_TRUE(discriminant_group(EvenLattice(e8_negative())).empty());
    EXPECT_THROW(discriminant_group(EvenLattice(IntMatrix::from_rows({{0, 0}, {0, 2}}))), InvalidArgument);
}

TEST(DiscriminantGroup, CyclicOfOrderTwoL) {
    for (std::int64_t l = 1; l <= 20; ++l) {
        EXPECT_EQ(discriminant_group(lambda_gram(l)), std::vector<Integer>{Integer(2 * l)}) << l;
    }
}

TEST(SmithForm, NonCyclicAndDivisibilityChain) {
    // A2 scaled: diag blocks chosen so the answer is known: Z/2 + Z/6.
    const auto m = IntMatrix::from_rows({{2, 0}, {0, 6}});
    EXPECT_EQ(smith_diagonal(m), (std::vector<Integer>{2, 6}));
    const auto m2 = IntMatrix::from_rows({{4, 0}, {0, 6}});
    EXPECT_EQ(smith_diagonal(m2), (std::vector<Integer>{2, 12}));
    // A2 root lattice: discriminant Z/3.
    EXPECT_EQ(discriminant_group(EvenLattice(IntMatrix::from_rows({{2, -1}, {-1, 2}}))), std::vector<Integer>{3});
}

TEST(SmithForm, ProductMatchesDeterminant) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        IntMatrix m(4, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                m(i, j) = entry(rng);
            }
        }
        const auto diag = smith_diagonal(m);
        Integer prod = 1;
        for (std::size_t i = 0; i < diag.size(); ++i) {
            prod *= diag[i];
            if (i > 0 && diag[i - 1] != 0) {
                ASSERT_EQ(diag[i] % diag[i - 1], 0);
            }
        }
        ASSERT_EQ(prod, abs(bareiss_det(m)));
    }
}

TEST(Evenness, RandomVectorsHaveEvenNorm) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> coord(-50, 50);
    for (std::int64_t l : {1, 2, 3, 4, 7}) {
        const auto lat = lambda_gram(l);
        for (int i = 0; i < 1000; ++i) {
            LatticeVector v(kLambdaRank);
            for (auto& x : v) {
                x = coord(rng);
            }
            ASSERT_EQ(lat.norm(v) % 2, 0);
        }
    }
}

TEST(InvariantsOf, Examples) {
    const auto l3 = lambda_gram(3);
    EXPECT_EQ(invariants_of(basis_vector(kOmega), l3), (PrimitiveVectorClass{-6, 6, 1}));
    EXPECT_EQ(invariants_of(basis_vector(kU1), l3), (PrimitiveVectorClass{0, 1, 0}));
    LatticeVector v = basis_vector(kOmega);
    v[kU1] = 6;
    EXPECT_EQ(invariants_of(v, l3), (PrimitiveVectorClass{-6, 6, 1}));
}

TEST(InvariantsOf, RejectsNonPrimitive) {
    LatticeVector v(kLambdaRank, 0);
    v[kU1] = 2;
    v[kV1] = 4;
    EXPECT_THROW(invariants_of(v, lambda_gram(2)), InvalidArgument);
    EXPECT_THROW(invariants_of(LatticeVector(kLambdaRank, 0), lambda_gram(2)), InvalidArgument);
    EXPECT_THROW(invariants_of(LatticeVector(3, 1), lambda_gram(2)), InvalidArgument);
}

TEST(CanonicalPrimitive, Examples) {
    LatticeVector expected(kLambdaRank, 0);
    expected[kOmega] = 1;
    expected[kU1] = 6;
    EXPECT_EQ(canonical_primitive(-6, 6, 1, 3), expected);

    LatticeVector expected2(kLambdaRank, 0);
    expected2[kOmega] = 1;
    expected2[kU1] = 2;
    EXPECT_EQ(canonical_primitive(-2, 2, 1, 1), expected2);
    EXPECT_EQ(lambda_gram(1).norm(expected2), -2);

    EXPECT_THROW(canonical_primitive(-3, 2, 1, 1), InvalidArgument);  // m = -1/8
}

TEST(CanonicalPrimitive, RejectsInconsistentLevelAndType) {
    EXPECT_THROW(canonical_primitive(0, 4, 1, 3), InvalidArgument);  // 4 does not divide 6
    EXPECT_THROW(canonical_primitive(0, 2, 1, 3), InvalidArgument);  // dk/2l = 1/3
    EXPECT_THROW(canonical_primitive(0, 2, 0, 1), InvalidArgument);  // would not be primitive
    EXPECT_THROW(canonical_primitive(0, 0, 0, 1), InvalidArgument);
    EXPECT_THROW(canonical_primitive(0, 1, 0, 0), InvalidArgument);
}

TEST(CanonicalPrimitive, RoundTripsThroughInvariants) {
    int checked = 0;
    for (std::int64_t l = 1; l <= 10; ++l) {
        const auto lat = lambda_gram(l);
        for (std::int64_t k = 1; k <= 2 * l; ++k) {
            for (std::int64_t d = 0; d < 2 * l; ++d) {
                for (std::int64_t n = -40; n <= 40; n += 2) {
                    const bool admissible = (2 * l) % k == 0 && k == level_of_type(d, l) &&
                                            is_integer(Rational(n, 2 * k * k) + Rational(d * d, 4 * l));
                    if (!admissible) {
                        ASSERT_THROW(canonical_primitive(n, k, d, l), InvalidArgument);
                        continue;
                    }
                    const auto v = canonical_primitive(n, k, d, l);
                    ASSERT_EQ(invariants_of(v, lat), (PrimitiveVectorClass{n, k, d}))
                        << "N=" << n << " k=" << k << " d=" << d << " l=" << l;
                    ++checked;
                }
            }
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(NlToHeegner, Examples) {
    EXPECT_EQ(nl_to_heegner({1, 1, 3}), (HeegnerLabel{Rational(-1, 12), 1}));
    EXPECT_EQ(nl_to_heegner({0, 0, 5}), (HeegnerLabel{Rational(-1), 0}));
    EXPECT_EQ(nl_to_heegner({2, 1, 4}), (HeegnerLabel{Rational(-1, 4), 2}));
    EXPECT_THROW(nl_to_heegner({2, 2, 1}), InvalidArgument);  // Delta = 0
    EXPECT_THROW(nl_to_heegner({0, 1, 1}), InvalidArgument);  // Delta = 0
    EXPECT_THROW(nl_to_heegner({-1, 0, 1}), InvalidArgument);
}

TEST(ProjectionOracle, Examples) {
    EXPECT_EQ(projection_norm_oracle({1, 1, 3}), Rational(-1, 6));
    EXPECT_EQ(projection_norm_oracle({0, 0, 7}), Rational(-2));
    EXPECT_EQ(projection_norm_oracle({3, 1, 4}), Rational(-9, 8));
}

TEST(NlToHeegner, AgreesWithProjectionOracle) {
    for (std::int64_t l = 1; l <= 8; ++l) {
        for (std::int64_t d = 0; d <= 12; ++d) {
            for (std::int64_t g = 0; g <= 6; ++g) {
                const NLLabel label{d, g, l};
                if (discriminant_delta(label) <= 0) {
                    ASSERT_THROW(nl_to_heegner(label), InvalidArgument);
                    continue;
                }
                ASSERT_EQ(2 * nl_to_heegner(label).n, projection_norm_oracle(label));
            }
        }
    }
}

TEST(HeegnerClass, Examples) {
    const auto c = heegner_class({1, 1, 3});
    EXPECT_EQ(c.level, 6);
    EXPECT_EQ(c.norm, -6);
    EXPECT_EQ(describe_vector(c.representative), "omega + 6u1");

    const auto c2 = heegner_class({0, 0, 1});
    EXPECT_EQ(c2.label.n, Rational(-1));
    EXPECT_EQ(c2.level, 1);
    EXPECT_EQ(describe_vector(c2.representative), "u1 - v1");
}

TEST(HeegnerClass, RepresentativeCarriesTheLabel) {
    for (std::int64_t l = 1; l <= 6; ++l) {
        const auto lat = lambda_gram(l);
        for (std::int64_t d = 0; d <= 12; ++d) {
            for (std::int64_t g = 0; g <= 6; ++g) {
                const NLLabel label{d, g, l};
                if (discriminant_delta(label) <= 0) {
                    continue;
                }
                const auto c = heegner_class(label);
                const auto inv = invariants_of(c.representative, lat);
                ASSERT_EQ(inv.norm, c.norm);
                ASSERT_EQ(inv.level, c.level);
                ASSERT_EQ(inv.type, c.label.gamma);
                // v^pr / k has half-norm n.
                ASSERT_EQ(Rational(inv.norm, Integer(2) * c.level * c.level), c.label.n);
            }
        }
    }
}

} // namespace
} // namespace k3kit
