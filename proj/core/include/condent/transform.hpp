#pragma once

#include "condent/entropy.hpp"
#include "condent/majorization.hpp"
#include "condent/params.hpp"

#include <optional>
#include <string>
#include <vector>

namespace condent {

enum class Verdict { Satisfied, Violated, Inconclusive };
std::string_view verdict_name(Verdict v);

struct FamilyMargin {
    EntropyFamily family;
    double first;   // value on the source
    double second;  // value on the target
    double slack;
};

struct LargeSampleReport {
    Verdict verdict;
    std::vector<FamilyMargin> margins;
    std::optional<EntropyFamily> violating;
    double min_slack;
};

inline constexpr double kStrictSlack = 1e-9;

// Checks H_F(P) < H_F(Q) with slack above 1e-9 for every grid family, the
// H_{0,alpha} orders of the grid and H_{+inf,0}.
LargeSampleReport large_sample_verdict(const JointDist& p, const JointDist& q, const Grid& g);

// Every family a verdict or rate runs over, in a fixed order.
std::vector<EntropyFamily> verdict_families(const Grid& g);

inline constexpr std::size_t kMaxCatalystEntries = 1'000'000;

// (1/n) sum_{l < n} P^{(x) l} (x) Q^{(x) (n-1-l)} as a direct sum.
JointDist catalyst(const JointDist& p, const JointDist& q, int n);

// Exact oracle on (P^{(x) n}, Q^{(x) n}).
OracleCertificate n_copy_feasible(const JointDist& p, const JointDist& q, int n);

struct RateEstimate {
    ExtendedReal value;
    bool inconclusive;
    std::optional<EntropyFamily> argmin;
    std::size_t families_used;
    std::vector<std::string> warnings;
};

// min over grid bulk and -inf families of H_F(Q) / H_F(P).
RateEstimate rate_formula(const JointDist& p, const JointDist& q, const Grid& g);

}  // namespace condent
