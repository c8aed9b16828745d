#include "condent/convexlab.hpp"
#include "condent/entropy.hpp"
#include "condent/error.hpp"
#include "condent/rng.hpp"

#include <cmath>
#include <numbers>

namespace condent {

namespace {

constexpr double kViolationMargin = 1e-8;

JointDist random_joint(Rng& rng, std::size_t d, std::size_t n) {
    std::vector<int> parts = rng.composition(64, d * n);
    Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t y = 0; y < n; ++y) m(x, y) = parts[x * n + y] / 64.0;
    }
    return JointDist(std::move(m));
}

std::optional<Direction> guided_direction(const BulkParam& param, Rng& rng, bool prefer_beta0) {
    const int d = rng.between(50, 80);
    if (prefer_beta0) {
        try {
            return counterexample_beta0_positive(param, d);
        } catch (const Error&) {
        }
    }
    return counterexample_alpha_gt_one(rng.uniform(0.05, 0.95), d);
}

// h_in - h_out for the merge of [P1/2, P2/2] onto x, from the block form.
double merge_drop(const Direction& dir, const BulkParam& param, double step) {
    const double up = log_f_ratio(dir, param, step);
    const double down = log_f_ratio(dir, param, -step);
    const double ratio = std::log1p(0.5 * (std::expm1(up) + std::expm1(down)));
    return ratio / (param.t * std::numbers::ln2);
}

}  // namespace

FalsifierReport falsify_monotonicity(const BulkParam& param, std::size_t trials, std::uint64_t seed) {
    const Rng root(seed);
    FalsifierReport rep{Verdict::Satisfied, 0, std::nullopt};
    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng = root.split(i);
        rep.trials_run = i + 1;
        const std::size_t kind = i % 4;
        if (kind < 2) {
            const std::optional<Direction> dir = guided_direction(param, rng, kind == 1);
            if (!dir) continue;
            const double step = rng.uniform(0.1, 0.9) * dir->lambda_max;
            if (merge_drop(*dir, param, step) <= kViolationMargin) continue;
            // Confirm on the explicit witness before reporting.
            MergeWitness w = merge_channel_witness(*dir, step, 0.5);
            const double h_in = h_bulk(w.input, param);
            const double h_out = h_bulk(apply_channel(w.input, w.channel), param);
            if (h_out < h_in - kViolationMargin) {
                rep.verdict = Verdict::Violated;
                rep.violation = Violation{i, kind == 0 ? "merge:alpha_gt_one" : "merge:guided",
                                          std::move(w.input), std::move(w.channel), h_in, h_out};
                return rep;
            }
            continue;
        }
        const auto d = static_cast<std::size_t>(rng.between(2, 4));
        const auto n = static_cast<std::size_t>(rng.between(1, 4));
        const auto n_out = static_cast<std::size_t>(rng.between(1, 4));
        JointDist j = random_joint(rng, d, n);
        CondChannel c = sample_channel(d, n, n_out, rng.next());
        const double h_in = h_bulk(j, param);
        const double h_out = h_bulk(apply_channel(j, c), param);
        if (h_out < h_in - kViolationMargin) {
            rep.verdict = Verdict::Violated;
            rep.violation = Violation{i, "random", std::move(j), std::move(c), h_in, h_out};
            return rep;
        }
    }
    return rep;
}

}  // namespace condent
