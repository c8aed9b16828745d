#pragma once

#include "condent/core.hpp"

#include <string>
#include <vector>

namespace condent {

// sum_alpha tau(alpha) * alpha / (1 - alpha). The atom at infinity
// contributes its analytic limit, -tau(inf); an atom at 1 gives +inf.
ExtendedReal integral_coefficient(const DiscreteMeasure& tau);

enum class AdmissibilityRule { Rule1, Rule2a, Rule2b, None };

struct AdmissibilityReport {
    bool admissible;
    AdmissibilityRule rule;
    ExtendedReal integral;
};

AdmissibilityReport in_bulk(const BulkParam& param);
AdmissibilityReport in_neg_inf(const DiscreteMeasure& tau);

std::string_view rule_name(AdmissibilityRule rule);

struct GridSpec {
    std::string id;
    std::vector<double> t_values;
    // Orders in [0, 1], used for point measures, mixtures and H_{0, alpha}.
    std::vector<double> low_alphas;
    // Orders in (1, inf].
    std::vector<double> high_alphas;
    // Weights w for two-point measures w delta_a + (1 - w) delta_b.
    std::vector<double> mix_weights;
    // Orders in [0, 1) used as the low point of two-point measures.
    std::vector<double> mix_low_alphas;
};

struct Grid {
    std::string id;
    std::vector<BulkParam> bulk;
    std::vector<DiscreteMeasure> neg_inf;
    std::vector<double> zero_alphas;
};

GridSpec grid_preset(const std::string& name);
// Preset named by CONDENT_GRID, or "coarse".
std::string default_grid_preset_name();
Grid grid(const GridSpec& spec);
// Presets are nested: coarse within medium within fine.
Grid grid_by_name(const std::string& name);

}  // namespace condent
