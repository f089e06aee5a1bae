#include <gtest/gtest.h>

#include <random>

#include "k3kit/git_net.hpp"

namespace k3kit {
namespace {

QuadMonomial Q(const char* s) { return parse_quad(s); }

QuadricRow zero_row() {
    QuadricRow r;
    r.fill(Rational(0));
    return r;
}

QuadricRow poly(std::initializer_list<std::pair<const char*, int>> terms) {
    auto r = zero_row();
    for (const auto& [name, c] : terms) {
        r[Q(name).lex_rank()] += c;
    }
    return r;
}

const OnePS5 kL1({2, 1, 0, 0, -1, -2});
const OnePS5 kL4({5, 3, 1, -1, -3, -5});

TEST(QuadMonomialType, LexRankAndNames) {
    const auto& all = quad_monomials();
    for (std::size_t k = 0; k < kQuadCount; ++k) {
        EXPECT_EQ(all[k].lex_rank(), k);
        EXPECT_EQ(parse_quad(all[k].name()), all[k]);
    }
    EXPECT_EQ(Q("x0^2").lex_rank(), 0u);
    EXPECT_EQ(Q("x0x5").lex_rank(), 5u);
    EXPECT_EQ(Q("x1^2").lex_rank(), 6u);
    EXPECT_EQ(Q("x5^2").lex_rank(), 20u);
    EXPECT_EQ(Q("x3x1"), Q("x1x3"));
    EXPECT_THROW(parse_quad("x6^2"), InvalidArgument);
    EXPECT_THROW(parse_quad("x1"), InvalidArgument);
}

TEST(OnePS5Type, Validation) {
    EXPECT_THROW(OnePS5({1, 2, 0, 0, -1, -2}), InvalidArgument);
    EXPECT_THROW(OnePS5({2, 1, 0, 0, -1, -1}), InvalidArgument);
    EXPECT_THROW(OnePS5({0, 0, 0, 0, 0, 0}), InvalidArgument);
}

TEST(WeightQuad, Examples) {
    EXPECT_EQ(weight_quad(Q("x0x5"), kL1), 0);
    EXPECT_EQ(weight_quad(Q("x3^2"), OnePS5({4, 1, 1, -2, -2, -2})), -4);
    EXPECT_EQ(weight_quad(Q("x2^2"), kL4), 2);
}

TEST(OrderGt, Examples) {
    EXPECT_TRUE(order_gt(Q("x0x2"), Q("x0x3"), kL1));
    EXPECT_FALSE(order_gt(Q("x0x3"), Q("x0x2"), kL1));
    EXPECT_TRUE(order_gt(Q("x1^2"), Q("x0x4"), kL1));
    for (const auto& l : normalized_lambdas(3)) {
        EXPECT_TRUE(order_gt(Q("x0^2"), Q("x5^2"), l));
    }
}

TEST(OrderGt, StrictTotalOrderForEveryLambda) {
    const auto& all = quad_monomials();
    for (const auto& l : normalized_lambdas(5)) {
        for (const auto& x : all) {
            ASSERT_FALSE(order_gt(x, x, l));
            for (const auto& y : all) {
                if (!(x == y)) {
                    ASSERT_NE(order_gt(x, y, l), order_gt(y, x, l));
                }
                if (order_gt(x, y, l)) {
                    ASSERT_GE(weight_quad(x, l), weight_quad(y, l));
                }
                for (const auto& z : all) {
                    if (order_gt(x, y, l) && order_gt(y, z, l)) {
                        ASSERT_TRUE(order_gt(x, z, l));
                    }
                }
            }
        }
    }
}

TEST(OrderGt, SmallerMonomialReachesPastBottomIndexOfLarger) {
    const auto& all = quad_monomials();
    for (const auto& l : normalized_lambdas(6)) {
        for (const auto& x : all) {
            for (const auto& y : all) {
                if (order_gt(x, y, l)) {
                    ASSERT_LT(std::min(x.i, x.j), std::max(y.i, y.j)) << x << " " << y << " " << l;
                }
            }
        }
    }
}

TEST(OrderGt, TopIndexBoundFailsOnPowersOfX0) {
    // x0^2 beats everything, yet max{0,0} > min{k,l} never holds when k = 0.
    for (const auto& l : normalized_lambdas(3)) {
        EXPECT_TRUE(order_gt(Q("x0^2"), Q("x0x1"), l));
        EXPECT_TRUE(order_gt(Q("x0^2"), Q("x1^2"), l));
    }
}

TEST(NormalizedLambdas, CountsAndShape) {
    const auto ls = normalized_lambdas(2);
    for (const auto& l : ls) {
        EXPECT_LE(l.a[0], 2);
    }
    EXPECT_NE(std::find(ls.begin(), ls.end(), kL1), ls.end());
    const auto l6 = normalized_lambdas(6);
    for (const auto& row : table3_rows()) {
        EXPECT_NE(std::find(l6.begin(), l6.end(), row.lambda), l6.end()) << row.label;
    }
}

TEST(QuadricNetType, RejectsDependentNets) {
    const auto a = poly({{"x0^2", 1}});
    const auto b = poly({{"x1^2", 1}});
    auto c = a;
    for (std::size_t k = 0; k < kQuadCount; ++k) {
        c[k] = 2 * a[k] - 3 * b[k];
    }
    EXPECT_THROW(QuadricNet({a, b, c}), InvalidArgument);
    EXPECT_THROW(QuadricNet({a, b, zero_row()}), InvalidArgument);
}

TEST(LeadingTerms, Examples) {
    const QuadricNet net({poly({{"x0x2", 1}, {"x4^2", 1}}), poly({{"x0x5", 1}}), poly({{"x2x5", 1}})});
    EXPECT_EQ(leading_terms(net, kL1), (LeadingTriple{Q("x0x2"), Q("x0x5"), Q("x2x5")}));

    const QuadricNet net2({poly({{"x0^2", 1}}), poly({{"x0^2", 1}, {"x5^2", 1}}), poly({{"x3x4", 1}})});
    EXPECT_EQ(leading_terms(net2, kL4), (LeadingTriple{Q("x0^2"), Q("x3x4"), Q("x5^2")}));
    EXPECT_EQ(leading_terms(net2, kL1), (LeadingTriple{Q("x0^2"), Q("x3x4"), Q("x5^2")}));
}

TEST(LeadingTerms, InvariantUnderChangeOfBasis) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> sparse(0, 3);
    const auto lambdas = normalized_lambdas(4);
    std::uniform_int_distribution<std::size_t> pick(0, lambdas.size() - 1);
    int nets = 0;
    while (nets < 100) {
        std::array<QuadricRow, 3> rows;
        for (auto& r : rows) {
            for (auto& x : r) {
                x = sparse(rng) == 0 ? coeff(rng) : 0;
            }
        }
        std::optional<QuadricNet> net;
        try {
            net.emplace(rows);
        } catch (const InvalidArgument&) {
            continue;
        }
        ++nets;
        const auto& l = lambdas[pick(rng)];
        const auto base = leading_terms(*net, l);
        ASSERT_TRUE(order_gt(base.m1, base.m2, l));
        ASSERT_TRUE(order_gt(base.m2, base.m3, l));
        for (int change = 0; change < 50; ++change) {
            std::array<std::array<Rational, 3>, 3> g;
            for (auto& gr : g) {
                for (auto& x : gr) {
                    x = Rational(coeff(rng), 1 + sparse(rng));
                }
            }
            const Rational det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                                 g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                                 g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
            if (det == 0) {
                continue;
            }
            std::array<QuadricRow, 3> mixed;
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t k = 0; k < kQuadCount; ++k) {
                    mixed[i][k] = g[i][0] * rows[0][k] + g[i][1] * rows[1][k] + g[i][2] * rows[2][k];
                }
            }
            ASSERT_EQ(leading_terms(QuadricNet(mixed), l), base);
        }
    }
}

TEST(PluckerWeight, Examples) {
    EXPECT_EQ(plucker_weight({Q("x0x2"), Q("x0x5"), Q("x2x5")}, kL1), 0);
    EXPECT_EQ(plucker_weight({Q("x1^2"), Q("x1x3"), Q("x3^2")}, OnePS5({3, 1, 1, -1, -1, -3})), 0);
    for (const auto& l : normalized_lambdas(3)) {
        EXPECT_EQ(plucker_weight({Q("x0^2"), Q("x0x1"), Q("x0x2")}, l), 4 * l.a[0] + l.a[1] + l.a[2]);
    }
}

TEST(NotProperlyStable, Examples) {
    const QuadricNet net({poly({{"x0x2", 1}, {"x4^2", 1}}), poly({{"x0x5", 1}}), poly({{"x2x5", 1}})});
    const auto v = not_properly_stable_wrt(net, kL1);
    EXPECT_TRUE(v.not_properly_stable);
    EXPECT_EQ(v.plucker, 0);

    const QuadricNet top({poly({{"x0^2", 1}}), poly({{"x0x1", 1}}), poly({{"x0x2", 1}})});
    const auto w = not_properly_stable_wrt(top, kL4);
    EXPECT_FALSE(w.not_properly_stable);
    EXPECT_EQ(w.plucker, 10 + 8 + 6);

    const QuadricNet n4({poly({{"x1x5", 1}}), poly({{"x2x4", 1}}), poly({{"x3^2", 1}})});
    const auto u = not_properly_stable_wrt(n4, kL4);
    EXPECT_EQ(u.weights, (std::array<std::int64_t, 3>{-2, -2, -2}));
    EXPECT_EQ(u.plucker, -6);
    EXPECT_TRUE(u.not_properly_stable);
}

TEST(Admissibility, Examples) {
    const auto r = lemma52_check({Q("x0x2"), Q("x0x5"), Q("x2x5")}, kL1);
    EXPECT_TRUE(r["1"].holds);

    const auto bad = lemma52_check(make_triple(Q("x3^2"), Q("x4^2"), Q("x5^2"), kL1), kL1);
    EXPECT_FALSE(bad["1"].holds);

    const auto n4 = lemma52_check({Q("x0x4"), Q("x0x5"), Q("x1x5")}, kL4);
    EXPECT_TRUE(n4["3'"].holds);
    EXPECT_EQ(n4["3'"].requirement, "m3 >= x3x5");
}

TEST(Admissibility, SecondConditionBranchesOnLeadingMonomial) {
    const auto r = lemma52_check(make_triple(Q("x0^2"), Q("x1x4"), Q("x5^2"), kL4), kL4);
    EXPECT_EQ(r["2"].requirement, "m2 >= x1x5");
    EXPECT_TRUE(r["2"].holds);
    const auto s = lemma52_check(make_triple(Q("x0x1"), Q("x1x4"), Q("x5^2"), kL4), kL4);
    EXPECT_EQ(s["2"].requirement, "m2 >= x0x5");
    EXPECT_FALSE(s["2"].holds);  // w(x1x4) = 0 = w(x0x5), x0x5 first lexicographically
    EXPECT_TRUE(lemma52_check(make_triple(Q("x0x1"), Q("x1x4"), Q("x5^2"), kL4), kL4, CompareMode::Weight)["2"].holds);
}

TEST(Admissibility, ThirdConditionOnlyAppliesBelowX0X3) {
    const auto r = lemma52_check(make_triple(Q("x0x2"), Q("x0x5"), Q("x5^2"), kL4), kL4);
    EXPECT_FALSE(r["3"].applies);
    EXPECT_TRUE(r["3"].holds);
}

TEST(Table3, RowsUseTheirStatedLambdas) {
    const auto rows = table3_rows();
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].lambda, kL1);
    EXPECT_EQ(rows[3].lambda, kL4);
}

TEST(Table3, SlotWeightsAndPlucker) {
    const std::array<std::array<std::int64_t, 3>, 4> expected{{{2, 0, -2}, {2, 0, -2}, {2, 2, -4}, {2, 0, -2}}};
    const auto checks = table3_verify();
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t s = 0; s < 3; ++s) {
            ASSERT_TRUE(checks[r].slot_weights[s].has_value());
            EXPECT_EQ(*checks[r].slot_weights[s], expected[r][s]) << checks[r].label;
        }
        EXPECT_EQ(checks[r].plucker, 0) << checks[r].label;
    }
    EXPECT_EQ(checks[2].triple, (LeadingTriple{Q("x0x3"), Q("x1^2"), Q("x3^2")}));
}

TEST(Table3, CaseAnalysisPerRow) {
    const auto strict = table3_verify(CompareMode::Order);
    EXPECT_TRUE(strict[0].pass);
    EXPECT_TRUE(strict[1].pass);
    EXPECT_TRUE(strict[3].pass);
    // N3': m1 = x0x3 and m2 = x1^2 tie in weight with x0x5, which comes
    // first lexicographically.
    EXPECT_FALSE(strict[2].lemma["2"].holds);
    const auto weight = table3_verify(CompareMode::Weight);
    for (const auto& c : weight) {
        EXPECT_TRUE(c.pass) << c.label;
    }
}

TEST(Table3Search, DeterministicAcrossJobCounts) {
    const auto one = table3_search(5, 1);
    const auto many = table3_search(5, 4);
    ASSERT_EQ(one.classes.size(), many.classes.size());
    for (std::size_t i = 0; i < one.classes.size(); ++i) {
        EXPECT_EQ(one.classes[i].members, many.classes[i].members);
        EXPECT_EQ(one.classes[i].triples, many.classes[i].triples);
    }
    EXPECT_THROW(table3_search(4, 1), InvalidArgument);
}

TEST(Table3Search, ClassesAreMaximalAndContainRowTriples) {
    const auto res = table3_search(6, default_jobs());
    for (std::size_t i = 0; i < res.classes.size(); ++i) {
        for (std::size_t j = 0; j < res.classes.size(); ++j) {
            if (i != j) {
                EXPECT_FALSE((res.classes[i].triples & ~res.classes[j].triples).none());
            }
        }
    }
    for (const auto& row : table3_rows()) {
        for (const auto& c : res.classes) {
            if (c.contains(row.lambda)) {
                const auto check = verify_row(row);
                EXPECT_EQ(c.triples.test(triple_index(check.triple)), check.lemma.admissible) << row.label;
            }
        }
    }
}

TEST(TripleIndex, RoundTrip) {
    const auto& all = quad_monomials();
    const auto& triples = all_triples();
    ASSERT_EQ(triples.size(), kTripleCount);
    for (std::size_t t = 0; t < triples.size(); t += 37) {
        const LeadingTriple lt{all[triples[t][2]], all[triples[t][0]], all[triples[t][1]]};
        EXPECT_EQ(triple_index(lt), t);
    }
}

} // namespace
} // namespace k3kit
