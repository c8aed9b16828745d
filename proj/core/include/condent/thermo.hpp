#pragma once

#include "condent/rational.hpp"
#include "condent/transform.hpp"

#include <vector>

namespace condent {

struct GibbsSpec {
    std::vector<double> energies;
    double beta;
};

// exp(-beta E_a) / Z.
std::vector<double> gibbs_state(const GibbsSpec& g);
// Z = sum_a exp(-beta E_a).
double partition_function(const GibbsSpec& g);

inline constexpr long kEmbedCap = 10'000;

// R ~ g / D with integer multiplicities g_a >= 1 and D = sum g_a <= cap.
struct EmbedSpec {
    std::vector<long> g;
    long d = 0;
    bool approximated = false;
    double max_error = 0.0;

    std::vector<double> state() const;
};

// Smallest D <= cap reproducing r exactly (to 1e-15), otherwise the best
// approximation found, flagged.
EmbedSpec embed_spec(const std::vector<double>& r, long cap = kEmbedCap);
EmbedSpec embed_spec(const GibbsSpec& g, long cap = kEmbedCap);

JointDist embed(const JointDist& p, const EmbedSpec& e);
JointDist embed_inverse(const JointDist& p, const EmbedSpec& e);
RationalMatrix embed(const RationalMatrix& p, const EmbedSpec& e);
RationalMatrix embed_inverse(const RationalMatrix& p, const EmbedSpec& e);

double i_divergence(const JointDist& p, const ProbVec& r, const BulkParam& param);
// Limit t -> -inf: the largest tau-weighted divergence over columns.
double i_divergence_neg_inf(const JointDist& p, const ProbVec& r, const DiscreteMeasure& tau);

double free_energy(const JointDist& p, const GibbsSpec& g, const BulkParam& param);
double free_energy_neg_inf(const JointDist& p, const GibbsSpec& g, const DiscreteMeasure& tau);

// (1 - eps) Q + eps (R (x) Q_Y).
JointDist smooth_target(const JointDist& q, const ProbVec& r, double eps);
double tv_distance(const JointDist& a, const JointDist& b);

struct SecondLawsReport {
    Verdict verdict;
    std::vector<FamilyMargin> margins;  // first = F(P), second = F(Q), slack = F(P) - F(Q)
    std::optional<EntropyFamily> violating;
    EmbedSpec embedding;
    double smoothing_tv;
};

// Throws HypothesisViolated when a column of P has full support or a column
// of Q equals the Gibbs state.
SecondLawsReport second_laws_verdict(const JointDist& p, const JointDist& q, const GibbsSpec& g,
                                     double eps, const Grid& grid);

}  // namespace condent
