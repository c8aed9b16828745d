#include "testkit.hpp"

#include <gtest/gtest.h>

using namespace condent;

namespace {

const std::vector<double> kR = {2.0 / 3.0, 1.0 / 3.0};

RationalMatrix random_rational(Rng& rng, std::size_t d, std::size_t n) {
    const std::vector<int> c = rng.composition(97, d * n);
    RationalMatrix m(d, n);
    for (std::size_t i = 0; i < d * n; ++i) {
        m(i / n, i % n) = Rational(c[i], 97);
        m(i / n, i % n).canonicalize();
    }
    return m;
}

const Grid& coarse() {
    static const Grid g = grid_by_name("coarse");
    return g;
}

}  // namespace

TEST(Gibbs, StateAndPartition) {
    const GibbsSpec g{{0.0, 1.0, 2.5}, 0.7};
    const std::vector<double> s = gibbs_state(g);
    const double z = 1.0 + std::exp(-0.7) + std::exp(-1.75);
    EXPECT_NEAR(partition_function(g), z, 1e-14);
    EXPECT_NEAR(s[1], std::exp(-0.7) / z, 1e-15);
    const GibbsSpec far{{1000.0, 1001.0}, 1.0};
    EXPECT_NEAR(gibbs_state(far)[0], 1.0 / (1.0 + std::exp(-1.0)), 1e-15);
}

TEST(Embed, Examples) {
    const EmbedSpec id = embed_spec({0.5, 0.5});
    EXPECT_EQ(id.g, (std::vector<long>{1, 1}));
    const JointDist p = JointDist::from_rows({{0.6}, {0.4}});
    EXPECT_TRUE(approx_equal(embed(p, id), p, 0.0));
    const EmbedSpec e = embed_spec(kR);
    EXPECT_EQ(e.g, (std::vector<long>{2, 1}));
    EXPECT_EQ(e.d, 3);
    EXPECT_FALSE(e.approximated);
    EXPECT_TRUE(approx_equal(embed(p, e), JointDist::from_rows({{0.3}, {0.3}, {0.4}}), 1e-15));
    EXPECT_TRUE(approx_equal(embed(JointDist::column(kR), e), JointDist::column({1.0 / 3, 1.0 / 3, 1.0 / 3}), 1e-15));
    EXPECT_TRUE(approx_equal(embed_inverse(JointDist::from_rows({{0.5}, {0.25}, {0.25}}), e), JointDist::from_rows({{0.75}, {0.25}}), 0.0));
    EXPECT_TRUE(approx_equal(embed_inverse(JointDist::column({1.0 / 3, 1.0 / 3, 1.0 / 3}), e), JointDist::column(kR), 1e-15));
    EXPECT_THROW(embed(JointDist::from_rows({{1.0}}), e), Error);
}

TEST(Embed, IrrationalStateIsFlagged) {
    const EmbedSpec e = embed_spec(GibbsSpec{{0.0, 1.0}, 1.0});
    EXPECT_TRUE(e.approximated);
    EXPECT_LE(e.d, kEmbedCap);
    EXPECT_LT(e.max_error, 1e-4);
    long sum = 0;
    for (long v : e.g) sum += v;
    EXPECT_EQ(sum, e.d);
}

TEST(Embed, InverseIsExact) {
    Rng rng(61);
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = 1 + rng.below(4);
        std::vector<double> r(d);
        const std::vector<int> c = rng.composition(20 - static_cast<int>(d), d);
        for (std::size_t k = 0; k < d; ++k) r[k] = (c[k] + 1) / 20.0;
        const EmbedSpec e = embed_spec(r);
        const RationalMatrix p = random_rational(rng, d, 1 + rng.below(3));
        EXPECT_EQ(embed_inverse(embed(p, e), e), p);
        const JointDist pd(p.to_double());
        EXPECT_TRUE(approx_equal(embed_inverse(embed(pd, e), e), pd, 1e-15));
    }
}

TEST(Divergence, ZeroOnReference) {
    Rng rng(62);
    for (const BulkParam& b : coarse().bulk) {
        const JointDist p = testkit::product(kR, testkit::random_probvec(rng, 3));
        EXPECT_NEAR(i_divergence(p, ProbVec(kR), b), 0.0, 1e-12);
    }
}

TEST(Divergence, NonnegativeAndZeroOnlyAtReference) {
    Rng rng(63);
    for (int i = 0; i < 200; ++i) {
        const JointDist p = testkit::random_joint(rng, 2, 1 + rng.below(3));
        const BulkParam& b = coarse().bulk[rng.below(coarse().bulk.size())];
        const double v = i_divergence(p, ProbVec(kR), b);
        EXPECT_GE(v, -1e-12);
        // Dyadic columns never equal (2/3, 1/3); order 0 only sees supports.
        if (b.tau.min_alpha() > 0.0) EXPECT_GT(v, 1e-9);
    }
}

TEST(Divergence, EmbeddingIdentity) {
    Rng rng(64);
    const EmbedSpec e = embed_spec(kR);
    for (int i = 0; i < 200; ++i) {
        const JointDist p = testkit::random_joint(rng, 2, 1 + rng.below(3));
        const BulkParam& b = coarse().bulk[rng.below(coarse().bulk.size())];
        const double lhs = i_divergence(p, ProbVec(kR), b);
        if (std::isinf(lhs)) continue;
        EXPECT_NEAR(lhs, std::log2(3.0) - h_bulk(embed(p, e), b), 1e-10);
    }
}

TEST(Divergence, NegInfLimit) {
    Rng rng(65);
    for (int i = 0; i < 50; ++i) {
        const JointDist p = testkit::random_full_columns(rng, 2, 3);
        const DiscreteMeasure tau = DiscreteMeasure::point(0.5);
        const double lim = i_divergence_neg_inf(p, ProbVec(kR), tau);
        double mx = 0.0;
        for (std::size_t y = 0; y < 3; ++y) mx = std::max(mx, renyi_relative(conditional_column(p, y), ProbVec(kR), 0.5));
        EXPECT_NEAR(lim, mx, 1e-12);
        EXPECT_NEAR(i_divergence(p, ProbVec(kR), BulkParam(-1e5, tau)), lim, 1e-3);
    }
}

TEST(Divergence, SingleColumnSmallT) {
    const JointDist p = JointDist::from_rows({{0.25}, {0.75}});
    const DiscreteMeasure tau({{0.5, 0.5}, {2.0, 0.5}});
    const double direct = 0.5 * static_cast<double>(testkit::renyi_relative({0.25, 0.75}, kR, 0.5)) +
                          0.5 * static_cast<double>(testkit::renyi_relative({0.25, 0.75}, kR, 2.0));
    EXPECT_NEAR(i_divergence(p, ProbVec(kR), BulkParam(1e-7, tau)), direct, 1e-12);
}

TEST(FreeEnergy, GibbsProductIsMinimal) {
    const GibbsSpec g{{0.0, std::log(2.0)}, 1.0};
    const std::vector<double> gamma = gibbs_state(g);
    const JointDist p = testkit::product(gamma, {0.5, 0.5});
    const double z = partition_function(g);
    for (const BulkParam& b : coarse().bulk) EXPECT_NEAR(free_energy(p, g, b), -std::log2(z), 1e-12);
}

TEST(FreeEnergy, TrivialHamiltonianReversesEntropy) {
    Rng rng(66);
    const GibbsSpec g{{1.0, 1.0, 1.0}, 2.0};
    for (int i = 0; i < 100; ++i) {
        const JointDist p = testkit::random_joint(rng, 3, 2);
        const JointDist q = testkit::random_joint(rng, 3, 2);
        const BulkParam& b = coarse().bulk[rng.below(coarse().bulk.size())];
        const double df = free_energy(p, g, b) - free_energy(q, g, b);
        const double dh = h_bulk(q, b) - h_bulk(p, b);
        EXPECT_NEAR(df, dh / g.beta, 1e-10);
    }
}

TEST(FreeEnergy, MonotoneUnderReferencePreservingChannels) {
    Rng rng(67);
    const GibbsSpec g{{0.0, std::log(2.0)}, 1.0};
    const EmbedSpec e = embed_spec(g);
    ASSERT_FALSE(e.approximated);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 1 + rng.below(3);
        const JointDist p = testkit::random_joint(rng, 2, n);
        const CondChannel c = sample_channel(static_cast<std::size_t>(e.d), n, 1 + rng.below(3), rng.next());
        const JointDist q = embed_inverse(apply_channel(embed(p, e), c), e);
        for (const BulkParam& b : coarse().bulk) {
            const double fp = free_energy(p, g, b);
            const double fq = free_energy(q, g, b);
            if (std::isinf(fp)) continue;
            EXPECT_GE(fp, fq - 1e-9);
        }
    }
}

TEST(Smoothing, Bounds) {
    Rng rng(68);
    for (int i = 0; i < 100; ++i) {
        const JointDist q = testkit::random_joint(rng, 2, 1 + rng.below(3));
        EXPECT_TRUE(approx_equal(smooth_target(q, ProbVec(kR), 0.0), q, 0.0));
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            const JointDist s = smooth_target(q, ProbVec(kR), eps);
            EXPECT_LE(tv_distance(q, s), eps + 1e-15);
            for (std::size_t y = 0; y < q.cols(); ++y) {
                if (q.column_sum(y) <= 0) continue;
                EXPECT_GT(s(0, y), 0.0);
                EXPECT_GT(s(1, y), 0.0);
                for (double a : {0.5, 2.0}) {
                    const double before = renyi_relative(conditional_column(q, y), ProbVec(kR), a);
                    const double after = renyi_relative(conditional_column(s, y), ProbVec(kR), a);
                    if (before <= 1e-12) {
                        EXPECT_LE(after, 1e-12);
                    } else {
                        EXPECT_LT(after, before);
                    }
                }
            }
        }
    }
}

TEST(SecondLaws, HypothesisFixtures) {
    const GibbsSpec g{{0.0, std::log(2.0)}, 1.0};
    const JointDist full = JointDist::from_rows({{0.25, 0.25}, {0.25, 0.25}});
    const JointDist sharp = JointDist::from_rows({{0.5, 0.0}, {0.0, 0.5}});
    try {
        second_laws_verdict(full, sharp, g, 0.01, coarse());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::HypothesisViolated);
    }
    const JointDist gibbs = testkit::product(gibbs_state(g), {0.5, 0.5});
    try {
        second_laws_verdict(sharp, gibbs, g, 0.01, coarse());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::HypothesisViolated);
    }
}

TEST(SecondLaws, TrivialHamiltonianMatchesEntropyOrder) {
    Rng rng(69);
    const GibbsSpec g{{0.5, 0.5, 0.5}, 1.5};
    const Grid& grid = coarse();
    for (int i = 0; i < 30; ++i) {
        JointDist p = testkit::random_joint(rng, 3, 2);
        Matrix m = p.matrix();
        m.row(2) += m.row(0);
        m.row(0).setZero();
        p = JointDist(m);
        const JointDist q = testkit::random_joint(rng, 3, 2);
        bool uniform_column = false;
        for (std::size_t y = 0; y < 2; ++y) uniform_column = uniform_column || (q(0, y) == q(1, y) && q(1, y) == q(2, y));
        if (uniform_column) continue;
        const SecondLawsReport r = second_laws_verdict(p, q, g, 0.01, grid);
        ASSERT_EQ(r.margins.size(), grid.bulk.size() + grid.neg_inf.size());
        bool all = true;
        for (std::size_t k = 0; k < grid.bulk.size(); ++k) {
            const double dh = h_bulk(q, grid.bulk[k]) - h_bulk(p, grid.bulk[k]);
            EXPECT_NEAR(r.margins[k].slack, dh / g.beta, 1e-10);
            all = all && dh >= -1e-12;
        }
        for (std::size_t k = 0; k < grid.neg_inf.size(); ++k) {
            const double dh = h_neg_inf(q, grid.neg_inf[k]) - h_neg_inf(p, grid.neg_inf[k]);
            EXPECT_NEAR(r.margins[grid.bulk.size() + k].slack, dh / g.beta, 1e-10);
            all = all && dh >= -1e-12;
        }
        EXPECT_EQ(r.verdict == Verdict::Violated, !all);
        EXPECT_LE(r.smoothing_tv, 0.01 + 1e-15);
    }
}
