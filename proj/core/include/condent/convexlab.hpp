#pragma once

#include "condent/majorization.hpp"
#include "condent/transform.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace condent {

// `count` equal entries with value `value` moving along `dir`. Counts are
// doubles so that astronomically repeated entries stay cheap.
struct Block {
    double value;
    double dir;
    double count;
};

struct Direction {
    std::vector<Block> blocks;
    double lambda_max;  // x + lambda v >= 0 for |lambda| <= lambda_max
};

Direction make_direction(const std::vector<double>& x, const std::vector<double>& v);
Direction make_direction(std::vector<Block> blocks);
std::vector<double> expand_point(const Direction& dir, double lambda);

// ||x||_1 2^{t sum_k tau_k H_{alpha_k}(x / ||x||_1)}.
double f_objective(const std::vector<double>& x, const BulkParam& param);
// log f(x + lambda v) - log f(x), natural log, without cancellation.
double log_f_ratio(const Direction& dir, const BulkParam& param, double lambda);

struct CurvatureSample {
    double second_derivative;  // d^2/dlambda^2 at 0, snapped to 0 below the threshold
    double relative;           // second derivative divided by the objective value
    double value;              // objective value at lambda = 0
    double h;
    int richardson_levels;
    bool stable;               // agrees with the next finer estimate within 5%
};

inline constexpr double kCurvatureZero = 1e-8;

// Central differences with step h (default 1e-4 lambda_max) and one
// Richardson level; StepTooLarge if h > lambda_max / 4.
CurvatureSample second_derivative(const Direction& dir, const BulkParam& param,
                                  std::optional<double> h = std::nullopt);
// Same for g(x) = ||x||_1 H_alpha(x / ||x||_1).
CurvatureSample derivation_second_derivative(const Direction& dir, ExtendedReal alpha,
                                             std::optional<double> h = std::nullopt);

// x = (p/d x d, (1-p)/d^2 x d^2), v = (-1/d x d, 1/d^2 x d^2).
Direction counterexample_alpha_gt_one(double p, int d);
Direction counterexample_derivation(double p, int d);

struct BetaSplit {
    double beta0;  // 1 - t int alpha/(1-alpha) dtau
    double beta1;  // t int_{alpha > 1} alpha/(1-alpha) dtau
};
BetaSplit beta_split(const BulkParam& param);

// x = (beta1, 1/d x d, 1/d^2 x d^2), v = (-1, s/d x d, 0 x d^2) with
// s = 1 + (beta1 + 2)/beta0, so that ||x + lambda v|| is proportional to
// beta0 + lambda. Requires beta0 > 0 and positive beta1.
Direction counterexample_beta0_positive(const BulkParam& param, int d);
// Predicted limit of f''/f along the direction above: -(beta0+beta1)/(beta0 beta1).
double beta0_asymptote(const BulkParam& param);

// Four-block construction for two orders 1 < alpha1 < alpha2 with t < 0.
Direction counterexample_two_points(const BulkParam& param, double delta, double d);
double two_points_asymptote(const BulkParam& param);

struct MergeWitness {
    JointDist input;
    CondChannel channel;
};

// J = [w P1, (1-w) P2] with P1 = x + a v, P2 = x - b v and w a = (1-w) b,
// merged by one column map onto the single column x.
MergeWitness merge_channel_witness(const Direction& dir, double a, double weight);

struct Violation {
    std::size_t trial;
    std::string kind;
    JointDist input;
    CondChannel channel;
    double h_in;
    double h_out;
};

struct FalsifierReport {
    // Violated when some trial lowered h_bulk by more than 1e-8; Satisfied
    // means no violation among the sampled trials.
    Verdict verdict;
    std::size_t trials_run;
    std::optional<Violation> violation;
};

FalsifierReport falsify_monotonicity(const BulkParam& param, std::size_t trials, std::uint64_t seed);

}  // namespace condent
