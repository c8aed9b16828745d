#include "condent/convexlab.hpp"

#include "condent/error.hpp"
#include "condent/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace condent {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double lambda_bound(const std::vector<Block>& blocks) {
    double lm = kInf;
    for (const Block& b : blocks) {
        if (b.dir == 0.0) continue;
        lm = std::min(lm, b.value / std::abs(b.dir));
    }
    return lm;
}

void validate_blocks(const std::vector<Block>& blocks) {
    for (const Block& b : blocks) {
        if (!std::isfinite(b.value) || !std::isfinite(b.dir) || !std::isfinite(b.count) || b.value < 0.0 ||
            b.count < 1.0) {
            throw Error(ErrorCode::InvalidArgument, "blocks need finite values, x >= 0 and count >= 1");
        }
    }
}

// Direction rescaled to unit mass; the objectives are 1-homogeneous.
struct Normalized {
    std::vector<Block> blocks;
    double scale;  // original mass
    double dir_mass;
};

Normalized normalize(const Direction& dir) {
    double mass = 0.0;
    for (const Block& b : dir.blocks) mass += b.count * b.value;
    if (!(mass > 0.0)) throw Error(ErrorCode::ZeroVector, "x has zero mass");
    Normalized n{dir.blocks, mass, 0.0};
    for (Block& b : n.blocks) {
        b.value /= mass;
        b.dir /= mass;
        n.dir_mass += b.count * b.dir;
    }
    return n;
}

double log_mass_ratio(const Normalized& n, double lambda) { return std::log1p(lambda * n.dir_mass); }

// Renyi entropy (nats) of the normalized point at lambda = 0.
double entropy_at_zero(const Normalized& n, ExtendedReal alpha) {
    if (alpha == 0.0) {
        double s = 0.0;
        for (const Block& b : n.blocks) s += b.value > 0.0 ? b.count : 0.0;
        return std::log(s);
    }
    if (std::isinf(alpha)) {
        double m = 0.0;
        for (const Block& b : n.blocks) m = std::max(m, b.value);
        return -std::log(m);
    }
    if (alpha == 1.0) {
        double s = 0.0;
        for (const Block& b : n.blocks) {
            if (b.value > 0.0) s -= b.count * b.value * std::log(b.value);
        }
        return s;
    }
    double mx = -kInf;
    for (const Block& b : n.blocks) {
        if (b.value > 0.0) mx = std::max(mx, std::log(b.count) + alpha * std::log(b.value));
    }
    double s = 0.0;
    for (const Block& b : n.blocks) {
        if (b.value > 0.0) s += std::exp(std::log(b.count) + alpha * std::log(b.value) - mx);
    }
    return (mx + std::log(s)) / (1.0 - alpha);
}

// H_alpha(lambda) - H_alpha(0) in nats.
double entropy_delta(const Normalized& n, ExtendedReal alpha, double lambda) {
    const double dlog_n = log_mass_ratio(n, lambda);
    if (alpha == 0.0) return 0.0;
    if (std::isinf(alpha)) {
        double xmax = 0.0;
        for (const Block& b : n.blocks) xmax = std::max(xmax, b.value);
        double best = -kInf;
        for (const Block& b : n.blocks) {
            if (b.value <= 0.0) continue;
            best = std::max(best, std::log(b.value / xmax) + std::log1p(lambda * b.dir / b.value));
        }
        return -best + dlog_n;
    }
    if (alpha == 1.0) {
        const double n_lambda = 1.0 + lambda * n.dir_mass;
        double s_delta = 0.0, s0 = 0.0;
        for (const Block& b : n.blocks) {
            if (b.value <= 0.0) continue;
            const double r = lambda * b.dir / b.value;
            s_delta += b.count * (b.value * (1.0 + r) * std::log1p(r) + lambda * b.dir * std::log(b.value));
            s0 += b.count * b.value * std::log(b.value);
        }
        const double a_delta = s_delta / n_lambda - s0 * lambda * n.dir_mass / n_lambda;
        return dlog_n - a_delta;
    }
    double mx = -kInf;
    for (const Block& b : n.blocks) {
        if (b.value > 0.0) mx = std::max(mx, std::log(b.count) + alpha * std::log(b.value));
    }
    double wsum = 0.0, acc = 0.0;
    for (const Block& b : n.blocks) {
        if (b.value <= 0.0) continue;
        const double w = std::exp(std::log(b.count) + alpha * std::log(b.value) - mx);
        wsum += w;
        acc += w * std::expm1(alpha * std::log1p(lambda * b.dir / b.value));
    }
    const double dl = std::log1p(acc / wsum);
    return (dl - alpha * dlog_n) / (1.0 - alpha);
}

double log_f_delta(const Normalized& n, const BulkParam& param, double lambda) {
    double s = log_mass_ratio(n, lambda);
    for (const Atom& a : param.tau.atoms()) s += param.t * a.weight * entropy_delta(n, a.alpha, lambda);
    return s;
}

double log_f_zero(const Normalized& n, const BulkParam& param) {
    double s = std::log(n.scale);
    for (const Atom& a : param.tau.atoms()) s += param.t * a.weight * entropy_at_zero(n, a.alpha);
    return s;
}

double resolve_step(const Direction& dir, std::optional<double> h) {
    const double step = h.value_or(1e-4 * dir.lambda_max);
    if (!(dir.lambda_max > 0.0) || !(step > 0.0) || step > dir.lambda_max / 4.0) {
        throw Error(ErrorCode::StepTooLarge, "step must be positive and at most lambda_max / 4");
    }
    return step;
}

template <class Second>
CurvatureSample richardson(Second second, double h) {
    const double d1 = second(h);
    const double d2 = second(h / 2.0);
    const double d3 = second(h / 4.0);
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d3 - d2) / 3.0;
    const double scale = std::max(std::abs(r1), std::abs(r2));
    CurvatureSample s{};
    s.h = h;
    s.richardson_levels = 1;
    s.relative = r1;
    s.stable = scale < kCurvatureZero || std::abs(r1 - r2) <= 0.05 * scale;
    return s;
}

}  // namespace

Direction make_direction(const std::vector<double>& x, const std::vector<double>& v) {
    if (x.size() != v.size()) throw Error(ErrorCode::DimMismatch, "x and v differ in length");
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < x.size(); ++i) blocks.push_back({x[i], v[i], 1.0});
    return make_direction(std::move(blocks));
}

Direction make_direction(std::vector<Block> blocks) {
    validate_blocks(blocks);
    const double lm = lambda_bound(blocks);
    return Direction{std::move(blocks), lm};
}

std::vector<double> expand_point(const Direction& dir, double lambda) {
    std::vector<double> out;
    for (const Block& b : dir.blocks) {
        if (b.count > 1e7) throw Error(ErrorCode::SizeOverflow, "block too large to expand");
        const auto c = static_cast<std::size_t>(b.count);
        out.insert(out.end(), c, std::max(0.0, b.value + lambda * b.dir));
    }
    return out;
}

double f_objective(const std::vector<double>& x, const BulkParam& param) {
    std::vector<Block> blocks;
    for (double v : x) {
        if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::InvalidArgument, "x must be nonnegative");
        if (v > 0.0) blocks.push_back({v, 0.0, 1.0});
    }
    if (blocks.empty()) throw Error(ErrorCode::ZeroVector, "x is zero");
    const Normalized n = normalize(Direction{blocks, kInf});
    return std::exp(log_f_zero(n, param));
}

double log_f_ratio(const Direction& dir, const BulkParam& param, double lambda) {
    if (std::abs(lambda) > dir.lambda_max) throw Error(ErrorCode::InvalidArgument, "lambda outside the segment");
    return log_f_delta(normalize(dir), param, lambda);
}

CurvatureSample second_derivative(const Direction& dir, const BulkParam& param, std::optional<double> h) {
    const double step = resolve_step(dir, h);
    const Normalized n = normalize(dir);
    auto second = [&](double s) {
        return (std::expm1(log_f_delta(n, param, s)) + std::expm1(log_f_delta(n, param, -s))) / (s * s);
    };
    CurvatureSample out = richardson(second, step);
    out.value = std::exp(log_f_zero(n, param));
    if (std::abs(out.relative) < kCurvatureZero) out.relative = 0.0;
    out.second_derivative = out.relative * out.value;
    return out;
}

CurvatureSample derivation_second_derivative(const Direction& dir, ExtendedReal alpha, std::optional<double> h) {
    if (std::isnan(alpha) || alpha < 0.0) throw Error(ErrorCode::InvalidParams, "alpha must lie in [0, inf]");
    const double step = resolve_step(dir, h);
    const Normalized n = normalize(dir);
    const double h0 = entropy_at_zero(n, alpha) / kLn2;
    auto delta_g = [&](double s) {
        const double dh = entropy_delta(n, alpha, s) / kLn2;
        return dh + s * n.dir_mass * (h0 + dh);
    };
    auto second = [&](double s) { return (delta_g(s) + delta_g(-s)) / (s * s); };
    CurvatureSample out = richardson(second, step);
    // richardson() fills `relative` with the unit-mass estimate.
    const double unit = out.relative;
    out.value = n.scale * h0;
    out.second_derivative = std::abs(n.scale * unit) < kCurvatureZero ? 0.0 : n.scale * unit;
    out.relative = h0 != 0.0 ? unit / h0 : 0.0;
    return out;
}

Direction counterexample_alpha_gt_one(double p, int d) {
    if (!(p > 0.0 && p < 1.0) || d < 2) throw Error(ErrorCode::InvalidArgument, "need p in (0, 1) and d >= 2");
    const double dd = d;
    return make_direction({{p / dd, -1.0 / dd, dd}, {(1.0 - p) / (dd * dd), 1.0 / (dd * dd), dd * dd}});
}

Direction counterexample_derivation(double p, int d) { return counterexample_alpha_gt_one(p, d); }

BetaSplit beta_split(const BulkParam& param) {
    const ExtendedReal integral = integral_coefficient(param.tau);
    if (std::isinf(integral)) throw Error(ErrorCode::InvalidRegime, "tau has an atom at 1");
    double high = 0.0;
    for (const Atom& a : param.tau.atoms()) {
        if (a.alpha <= 1.0) continue;
        high += std::isinf(a.alpha) ? -a.weight : a.weight * a.alpha / (1.0 - a.alpha);
    }
    return {1.0 - param.t * integral, param.t * high};
}

Direction counterexample_beta0_positive(const BulkParam& param, int d) {
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "need d >= 2");
    const BetaSplit b = beta_split(param);
    if (!(b.beta0 > 0.0)) throw Error(ErrorCode::InvalidRegime, "beta0 must be positive");
    if (!(b.beta1 > 0.0)) throw Error(ErrorCode::InvalidRegime, "needs t < 0 and mass above 1");
    const double dd = d;
    const double s = 1.0 + (b.beta1 + 2.0) / b.beta0;
    return make_direction({{b.beta1, -1.0, 1.0}, {1.0 / dd, s / dd, dd}, {1.0 / (dd * dd), 0.0, dd * dd}});
}

double beta0_asymptote(const BulkParam& param) {
    const BetaSplit b = beta_split(param);
    return -(b.beta0 + b.beta1) / (b.beta0 * b.beta1);
}

namespace {

struct TwoPoints {
    double alpha1, alpha2, beta1, beta2;
};

TwoPoints two_points_of(const BulkParam& param) {
    if (!(param.t < 0.0)) throw Error(ErrorCode::InvalidRegime, "needs t < 0");
    std::vector<Atom> high;
    for (const Atom& a : param.tau.atoms()) {
        if (a.alpha > 1.0) high.push_back(a);
    }
    if (high.size() != 2) throw Error(ErrorCode::InvalidRegime, "needs exactly two orders above 1");
    if (std::isinf(high[1].alpha)) throw Error(ErrorCode::InvalidRegime, "orders must be finite");
    auto beta = [&](const Atom& a) { return param.t * a.weight * a.alpha / (1.0 - a.alpha); };
    return {high[0].alpha, high[1].alpha, beta(high[0]), beta(high[1])};
}

}  // namespace

Direction counterexample_two_points(const BulkParam& param, double delta, double d) {
    const TwoPoints tp = two_points_of(param);
    const double a1 = tp.alpha1, a2 = tp.alpha2;
    if (!(delta > 0.0 && delta < (a2 - a1) / 2.0)) {
        throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, (alpha2 - alpha1) / 2)");
    }
    if (!(d > 1.0)) throw Error(ErrorCode::InvalidArgument, "d must exceed 1");
    const double a12 = (a1 + a2) / 2.0;
    const double x2 = 1.0 + (a1 - 1.0) / 2.0;
    const double x3 = a1 + (a2 - a1) / 2.0;
    const double x4 = a2 - delta;
    const double b2 = 1.0, b3 = a1, b4 = a12;
    const double s1 = 1.0;
    const double s2 = (x2 - 0.0) / (x2 - b2) * s1;
    const double s3 = (x3 - b2) / (x3 - b3) * s2;
    const double s4 = (x4 - b3) / (x4 - b4) * s3;
    auto pw = [&](double e) {
        const double v = std::pow(d, e);
        if (!std::isfinite(v)) throw Error(ErrorCode::SizeOverflow, "construction exceeds double range");
        return v;
    };
    const double top = b4 * s4;
    return make_direction({
        {pw(s1), 0.0, std::ceil(pw(top))},
        {pw(s2) * tp.beta1, pw(s2), std::ceil(pw(top - b2 * s2))},
        {pw(s3), 0.0, std::ceil(pw(top - b3 * s3))},
        {pw(s4) * tp.beta2, -pw(s4), 1.0},
    });
}

double two_points_asymptote(const BulkParam& param) {
    const TwoPoints tp = two_points_of(param);
    return -(tp.beta1 + tp.beta2) / (tp.beta1 * tp.beta2);
}

MergeWitness merge_channel_witness(const Direction& dir, double a, double weight) {
    if (!(weight > 0.0 && weight < 1.0)) throw Error(ErrorCode::InvalidArgument, "weight must lie in (0, 1)");
    const double b = weight * a / (1.0 - weight);
    if (a > dir.lambda_max || b > dir.lambda_max) throw Error(ErrorCode::InvalidArgument, "step leaves the segment");
    const Normalized n = normalize(dir);
    const Direction unit{n.blocks, dir.lambda_max};
    const std::vector<double> p1 = expand_point(unit, a);
    const std::vector<double> p2 = expand_point(unit, -b);
    Matrix m(static_cast<Eigen::Index>(p1.size()), 2);
    for (std::size_t i = 0; i < p1.size(); ++i) {
        m(static_cast<Eigen::Index>(i), 0) = weight * p1[i];
        m(static_cast<Eigen::Index>(i), 1) = (1.0 - weight) * p2[i];
    }
    Matrix merge = Matrix::Ones(2, 1);
    CondChannel c({ChannelBranch{DoublyStochastic::identity(p1.size()), std::move(merge)}});
    return {JointDist(std::move(m)), std::move(c)};
}

}  // namespace condent
