#include "testkit.hpp"

#include <gtest/gtest.h>

using namespace condent;

namespace {

const std::vector<double> kAlphas = {0.0, 0.1, 0.5, 0.9, 1.0, 1.5, 2.0, 3.0, kInf};

JointDist two_columns() { return JointDist::from_rows({{0.5, 0.25}, {0.0, 0.25}}); }

DiscreteMeasure random_measure(Rng& rng) {
    static const std::vector<double> pool = {0.0, 0.2, 0.5, 0.8, 1.0, 1.5, 2.0, 4.0, kInf};
    const std::size_t k = 1 + rng.below(3);
    const Permutation pick = rng.permutation(pool.size());
    const std::vector<int> w = rng.composition(16 - static_cast<int>(k), k);
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < k; ++i) atoms.push_back({pool[pick[i]], (w[i] + 1) / 16.0});
    return DiscreteMeasure(atoms);
}

}  // namespace

TEST(Renyi, Examples) {
    for (double a : kAlphas) EXPECT_NEAR(renyi(ProbVec({0.5, 0.5}), a), 1.0, 1e-15);
    EXPECT_NEAR(renyi(ProbVec({0.5, 0.3, 0.2, 0.0}), 0.0), std::log2(3.0), 1e-15);
    EXPECT_NEAR(renyi(ProbVec({0.25, 0.75}), kInf), std::log2(4.0 / 3.0), 1e-15);
    EXPECT_NEAR(renyi(ProbVec({0.25, 0.75}), 1.0), 2.0 - 0.75 * std::log2(3.0), 1e-15);
    EXPECT_THROW(renyi(ProbVec({0.0, 0.0}), 2.0), Error);
}

TEST(Renyi, MatchesReferenceAndRange) {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        const std::size_t d = 1 + rng.below(6);
        const std::vector<double> p = testkit::random_probvec(rng, d, 1000);
        for (double a : kAlphas) {
            const double h = renyi(ProbVec(p), a);
            EXPECT_NEAR(h, static_cast<double>(testkit::renyi(p, a)), 1e-12);
            EXPECT_GE(h, -1e-15);
            EXPECT_LE(h, std::log2(static_cast<double>(d)) + 1e-12);
        }
    }
}

TEST(RenyiRelative, Examples) {
    EXPECT_NEAR(renyi_relative(ProbVec({1.0, 0.0}), ProbVec({0.5, 0.5}), 2.0), 1.0, 1e-15);
    EXPECT_TRUE(std::isinf(renyi_relative(ProbVec({0.5, 0.5}), ProbVec({1.0, 0.0}), 2.0)));
    EXPECT_TRUE(std::isinf(renyi_relative(ProbVec({0.5, 0.5}), ProbVec({1.0, 0.0}), 1.0)));
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        const std::size_t d = 2 + rng.below(4);
        const std::vector<double> p = testkit::random_probvec(rng, d);
        std::vector<double> r(d, 1.0 / d);
        std::vector<double> q = testkit::random_probvec(rng, d);
        for (double& v : q) v = (v + 1.0 / 64) / (1.0 + d / 64.0);
        for (double a : {0.0, 0.5, 1.0, 2.0, 3.5, kInf}) {
            EXPECT_NEAR(renyi_relative(ProbVec(p), ProbVec(p), a), 0.0, 1e-12);
            EXPECT_NEAR(renyi_relative(ProbVec(p), ProbVec(r), a), std::log2(static_cast<double>(d)) - renyi(ProbVec(p), a), 1e-12);
            if (a != 0.0 && !std::isinf(a)) {
                EXPECT_NEAR(renyi_relative(ProbVec(p), ProbVec(q), a), static_cast<double>(testkit::renyi_relative(p, q, a)), 1e-11);
            }
        }
    }
}

TEST(HBulk, Normalization) {
    Rng rng(13);
    for (int i = 0; i < 50; ++i) {
        const JointDist j = testkit::product({0.5, 0.5}, testkit::random_probvec(rng, 1 + rng.below(4)));
        for (double t : {-40.0, -1.0, -1e-6, 1e-6, 0.5, 3.0}) {
            EXPECT_NEAR(h_bulk(j, BulkParam(t, random_measure(rng))), 1.0, 1e-12);
        }
    }
}

TEST(HBulk, TwoTermExample) {
    const double h = h_bulk(two_columns(), BulkParam(-1.0, DiscreteMeasure::point(kInf)));
    EXPECT_NEAR(h, -std::log2(0.75), 1e-15);
}

TEST(HBulk, MatchesDirectFormula) {
    Rng rng(14);
    for (int i = 0; i < 300; ++i) {
        const JointDist j = testkit::random_joint(rng, 1 + rng.below(4), 1 + rng.below(4));
        const DiscreteMeasure tau = random_measure(rng);
        const double t = rng.uniform(-5.0, 5.0);
        EXPECT_NEAR(h_bulk(j, BulkParam(t, tau)), static_cast<double>(testkit::bulk(j, t, tau)), 1e-10);
    }
}

TEST(HBulk, LargeTemperaturesStayFinite) {
    Rng rng(15);
    const JointDist j = testkit::random_full_columns(rng, 3, 3);
    const double lo = h_neg_inf(j, DiscreteMeasure::point(2.0));
    const double v = h_bulk(j, BulkParam(-1000.0, DiscreteMeasure::point(2.0)));
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GE(v, lo - 1e-12);
    EXPECT_TRUE(std::isfinite(h_bulk(j, BulkParam(1000.0, DiscreteMeasure::point(0.5)))));
}

TEST(HBulk, MonotoneInTemperature) {
    Rng rng(16);
    for (int i = 0; i < 100; ++i) {
        const JointDist j = testkit::random_joint(rng, 1 + rng.below(4), 1 + rng.below(4));
        const DiscreteMeasure tau = random_measure(rng);
        const double lo = h_neg_inf(j, tau);
        double hi = -kInf;
        const testkit::Conditioned c = testkit::conditioned(j);
        for (const auto& col : c.column) hi = std::max(hi, static_cast<double>(testkit::tau_entropy(col, tau)));
        double prev = -kInf;
        for (double t : {-50.0, -5.0, -1.0, -0.1, 0.1, 1.0, 5.0, 50.0}) {
            const double h = h_bulk(j, BulkParam(t, tau));
            EXPECT_GE(h, prev - 1e-12);
            EXPECT_GE(h, lo - 1e-12);
            EXPECT_LE(h, hi + 1e-12);
            prev = h;
        }
    }
}

TEST(HBulk, ShiftingAndEmbedding) {
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        const JointDist j = testkit::random_joint(rng, 1 + rng.below(3), 1 + rng.below(3));
        JointDist separate(Matrix::Zero(0, 0));
        for (std::size_t y = 0; y < j.cols(); ++y) separate = direct_sum(separate, JointDist::column(j.column_entries(y)));
        const JointDist padded = direct_sum(j, JointDist(Matrix::Zero(2, 0)));
        const BulkParam param(rng.uniform(-3.0, 3.0), random_measure(rng));
        const double h = h_bulk(j, param);
        EXPECT_NEAR(h_bulk(separate, param), h, 1e-12);
        EXPECT_NEAR(h_bulk(padded, param), h, 1e-12);
        EXPECT_NEAR(h_neg_inf(separate, param.tau), h_neg_inf(j, param.tau), 1e-12);
        EXPECT_NEAR(h_zero(padded, 0.5), h_zero(j, 0.5), 1e-12);
    }
}

TEST(HZero, Examples) {
    EXPECT_NEAR(h_zero(two_columns(), 1.0), 0.5, 1e-15);
    Rng rng(18);
    for (int i = 0; i < 100; ++i) {
        const std::vector<double> p = testkit::random_probvec(rng, 1 + rng.below(4));
        const JointDist j = testkit::product(p, testkit::random_probvec(rng, 1 + rng.below(4)));
        for (double a : kAlphas) EXPECT_NEAR(h_zero(j, a), renyi(ProbVec(p), a), 1e-12);
    }
}

TEST(HZero, SmallTemperatureLimit) {
    Rng rng(19);
    for (int i = 0; i < 100; ++i) {
        const JointDist j = testkit::random_joint(rng, 1 + rng.below(4), 1 + rng.below(4));
        for (double a : {0.0, 0.5, 1.0, 2.0, kInf}) {
            const double h0 = h_zero(j, a);
            EXPECT_NEAR(h_bulk(j, BulkParam(1e-6, DiscreteMeasure::point(a))), h0, 1e-5);
            EXPECT_NEAR(h_bulk(j, BulkParam(-1e-6, DiscreteMeasure::point(a))), h0, 1e-5);
        }
    }
}

TEST(HNegInf, Examples) {
    EXPECT_NEAR(h_neg_inf(two_columns(), DiscreteMeasure::point(2.0)), 0.0, 1e-15);
    Rng rng(20);
    for (int i = 0; i < 100; ++i) {
        const JointDist j = testkit::random_joint(rng, 1 + rng.below(4), 1 + rng.below(4));
        const DiscreteMeasure tau = random_measure(rng);
        EXPECT_NEAR(h_neg_inf(j, tau), static_cast<double>(testkit::neg_inf(j, tau)), 1e-12);
    }
}

// The gap to the t -> -inf limit is at most log2(1 / P_Y(y*)) / |t| for the
// minimizing column y*, and vanishes as |t| grows.
TEST(HNegInf, LargeNegativeTemperatureGap) {
    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        const JointDist j = testkit::random_full_columns(rng, 3, 3);
        const DiscreteMeasure tau = DiscreteMeasure::point(2.0);
        const double lim = h_neg_inf(j, tau);
        double bound = 0.0;
        const testkit::Conditioned c = testkit::conditioned(j);
        for (std::size_t y = 0; y < c.column.size(); ++y) {
            if (std::abs(static_cast<double>(testkit::tau_entropy(c.column[y], tau)) - lim) < 1e-12) {
                bound = std::max(bound, -std::log2(static_cast<double>(c.weight[y])) / 40.0);
            }
        }
        const double gap = h_bulk(j, BulkParam(-40.0, tau)) - lim;
        EXPECT_GE(gap, -1e-12);
        EXPECT_LE(gap, bound + 1e-12);
        EXPECT_LE(h_bulk(j, BulkParam(-1e5, tau)) - lim, 1e-3);
    }
}

TEST(HPosInfZero, Examples) {
    const JointDist j = JointDist::from_rows({{0.1, 0.2}, {0.1, 0.0}, {0.1, 0.0}, {0.0, 0.5}});
    EXPECT_NEAR(h_pos_inf_zero(j), std::log2(3.0), 1e-15);
    const JointDist w = JointDist::from_rows({{0.01, 0.4}, {0.01, 0.0}, {0.01, 0.0}, {0.0, 0.57}});
    EXPECT_NEAR(h_pos_inf_zero(w), h_pos_inf_zero(j), 1e-15);
    const std::vector<double> p = {0.5, 0.25, 0.25, 0.0};
    EXPECT_NEAR(h_pos_inf_zero(testkit::product(p, {0.5, 0.5})), std::log2(3.0), 1e-15);
}

TEST(Named, MatchesClosedForms) {
    Rng rng(22);
    for (int i = 0; i < 200; ++i) {
        const JointDist j = testkit::random_joint(rng, 1 + rng.below(4), 1 + rng.below(4));
        const double a = rng.uniform() < 0.5 ? rng.uniform(0.05, 0.95) : rng.uniform(1.05, 5.0);
        const double b = rng.uniform(0.1, 3.0);
        EXPECT_NEAR(h_named(j, {NamedFamily::Hayashi, a}), static_cast<double>(testkit::hayashi(j, a)), 1e-10);
        EXPECT_NEAR(h_named(j, {NamedFamily::Arimoto, a}), static_cast<double>(testkit::arimoto(j, a)), 1e-10);
        EXPECT_NEAR(h_named(j, {NamedFamily::TwoParam, a, b}), static_cast<double>(testkit::two_param(j, a, b)), 1e-10);
        EXPECT_NEAR(h_named(j, {NamedFamily::Arimoto, a}), h_named(j, {NamedFamily::TwoParam, a, 1.0}), 1e-12);
        EXPECT_NEAR(h_named(j, {NamedFamily::Hayashi, a}), h_named(j, {NamedFamily::TwoParam, a, a}), 1e-12);
        EXPECT_NEAR(h_named(j, {NamedFamily::Cachin, a}), static_cast<double>(testkit::cachin(j, a)), 1e-12);
        const double ta = rng.uniform(0.1, 2.0);
        const double tb = rng.uniform(0.1, 2.0);
        EXPECT_NEAR(h_named(j, {NamedFamily::TanHayashi, 0, 0, ta, tb}), static_cast<double>(testkit::tan_hayashi(j, ta, tb)), 1e-10);
        if (a > 1.0) {
            EXPECT_NEAR(h_named(j, {NamedFamily::RennerWolf, a}), static_cast<double>(testkit::neg_inf(j, DiscreteMeasure::point(a))), 1e-12);
        }
    }
}

TEST(Named, Normalization) {
    const JointDist j = testkit::product({0.5, 0.5}, {0.25, 0.5, 0.25});
    const std::vector<NamedSpec> specs = {{NamedFamily::Hayashi, 0.5},   {NamedFamily::Hayashi, 2.0},
                                          {NamedFamily::Hayashi, kInf},  {NamedFamily::Arimoto, 0.0},
                                          {NamedFamily::Arimoto, 3.0},   {NamedFamily::TwoParam, 2.0, 0.5},
                                          {NamedFamily::Cachin, 1.0},    {NamedFamily::RennerWolf, 2.0},
                                          {NamedFamily::RennerWolf, 0.0}, {NamedFamily::TanHayashi, 0, 0, 0.5, 0.5}};
    for (const NamedSpec& s : specs) EXPECT_NEAR(h_named(j, s), 1.0, 1e-12) << named_family_name(s.name);
}

TEST(Named, RejectsOutOfRange) {
    const JointDist j = testkit::product({0.5, 0.5}, {1.0});
    EXPECT_THROW(h_named(j, {NamedFamily::TwoParam, 1.0, 1.0}), Error);
    EXPECT_THROW(h_named(j, {NamedFamily::TwoParam, 2.0, 0.0}), Error);
    EXPECT_THROW(h_named(j, {NamedFamily::RennerWolf, 0.5}), Error);
    EXPECT_THROW(h_named(j, {NamedFamily::Hayashi, -1.0}), Error);
    EXPECT_THROW(h_named(j, {NamedFamily::TanHayashi, 0, 0, 0.0, 1.0}), Error);
}

TEST(Mixture, WeightedSum) {
    Rng rng(23);
    for (int i = 0; i < 50; ++i) {
        const JointDist j = testkit::random_joint(rng, 1 + rng.below(4), 1 + rng.below(4));
        const EntropyFamily f1 = FamilyBulk{BulkParam(-0.5, DiscreteMeasure::point(2.0))};
        const EntropyFamily f2 = FamilyZero{0.5};
        EXPECT_NEAR(h_mixture(j, {{1.0, f1}}), evaluate(j, f1), 1e-15);
        EXPECT_NEAR(h_mixture(j, {{0.5, f1}, {0.5, f2}}), 0.5 * (evaluate(j, f1) + evaluate(j, f2)), 1e-12);
    }
    const MixtureEntropy m = {{0.25, FamilyPosInfZero{}}, {0.75, FamilyNegInf{DiscreteMeasure::point(3.0)}}};
    EXPECT_NEAR(h_mixture(testkit::product({0.5, 0.5}, {0.5, 0.5}), m), 1.0, 1e-12);
    EXPECT_THROW(h_mixture(testkit::product({0.5, 0.5}, {1.0}), {{0.5, FamilyPosInfZero{}}}), Error);
}

TEST(Families, Additivity) {
    Rng rng(24);
    for (int i = 0; i < 100; ++i) {
        const JointDist a = testkit::random_joint(rng, 1 + rng.below(3), 1 + rng.below(3));
        const JointDist b = testkit::random_joint(rng, 1 + rng.below(3), 1 + rng.below(3));
        const JointDist ab = tensor(a, b);
        const std::vector<EntropyFamily> fams = {
            FamilyBulk{BulkParam(rng.uniform(-3, 3), random_measure(rng))},
            FamilyZero{rng.uniform(0, 3)},
            FamilyNegInf{random_measure(rng)},
            FamilyPosInfZero{},
            FamilyNamed{{NamedFamily::TanHayashi, 0, 0, 0.5, 0.25}},
        };
        for (const EntropyFamily& f : fams) EXPECT_NEAR(evaluate(ab, f), evaluate(a, f) + evaluate(b, f), 1e-9);
    }
}

TEST(Families, RelabelingInvariance) {
    Rng rng(25);
    for (int i = 0; i < 100; ++i) {
        const JointDist j = testkit::random_joint(rng, 1 + rng.below(4), 1 + rng.below(4));
        const JointDist c = canonicalize(j);
        const BulkParam p(rng.uniform(-3, 3), random_measure(rng));
        EXPECT_NEAR(h_bulk(c, p), h_bulk(j, p), 1e-12);
        EXPECT_NEAR(h_neg_inf(c, p.tau), h_neg_inf(j, p.tau), 1e-12);
        EXPECT_NEAR(h_pos_inf_zero(c), h_pos_inf_zero(j), 1e-12);
    }
}

TEST(Families, RequireNormalizedInput) {
    const JointDist j = JointDist::from_rows({{0.5, 0.25}, {0.5, 0.75}});
    EXPECT_THROW(h_bulk(j, BulkParam(1.0, DiscreteMeasure::point(0.5))), Error);
    EXPECT_THROW(h_zero(JointDist::from_rows({{0.0}}), 1.0), Error);
}
