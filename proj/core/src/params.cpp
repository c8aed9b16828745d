#include "condent/params.hpp"

#include "condent/error.hpp"

#include <cmath>
#include <cstdlib>
#include <set>

namespace condent {

namespace {

bool within(ExtendedReal lhs, double rhs) {
    return lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs));
}

bool support_in_unit(const DiscreteMeasure& tau) {
    return tau.max_alpha() <= 1.0;
}

// Atoms above 1: at most one, and no atom exactly at 1.
bool single_high_atom(const DiscreteMeasure& tau) {
    std::size_t high = 0;
    for (const Atom& a : tau.atoms()) {
        if (a.alpha == 1.0) return false;
        if (a.alpha > 1.0) ++high;
    }
    return high == 1;
}

}  // namespace

ExtendedReal integral_coefficient(const DiscreteMeasure& tau) {
    double s = 0.0;
    for (const Atom& a : tau.atoms()) {
        if (a.alpha == 1.0) return kInf;
        if (std::isinf(a.alpha)) {
            s -= a.weight;
        } else {
            s += a.weight * a.alpha / (1.0 - a.alpha);
        }
    }
    return s;
}

AdmissibilityReport in_bulk(const BulkParam& param) {
    const ExtendedReal integral = integral_coefficient(param.tau);
    const double inv_t = 1.0 / param.t;
    if (param.t > 0.0) {
        const bool ok = support_in_unit(param.tau) && within(integral, inv_t);
        return {ok, ok ? AdmissibilityRule::Rule1 : AdmissibilityRule::None, integral};
    }
    if (support_in_unit(param.tau)) return {true, AdmissibilityRule::Rule2a, integral};
    if (single_high_atom(param.tau) && within(integral, inv_t)) {
        return {true, AdmissibilityRule::Rule2b, integral};
    }
    return {false, AdmissibilityRule::None, integral};
}

AdmissibilityReport in_neg_inf(const DiscreteMeasure& tau) {
    const ExtendedReal integral = integral_coefficient(tau);
    if (support_in_unit(tau)) return {true, AdmissibilityRule::Rule1, integral};
    if (single_high_atom(tau) && within(integral, 0.0)) return {true, AdmissibilityRule::Rule2b, integral};
    return {false, AdmissibilityRule::None, integral};
}

std::string_view rule_name(AdmissibilityRule rule) {
    switch (rule) {
        case AdmissibilityRule::Rule1: return "1";
        case AdmissibilityRule::Rule2a: return "2a";
        case AdmissibilityRule::Rule2b: return "2b";
        case AdmissibilityRule::None: return "none";
    }
    return "none";
}

GridSpec grid_preset(const std::string& name) {
    GridSpec s;
    s.id = name;
    if (name == "coarse") {
        s.t_values = {-4.0, -2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0};
        s.low_alphas = {0.0, 0.25, 0.5, 0.75, 1.0};
        s.high_alphas = {1.5, 2.0, 3.0, kInf};
        s.mix_weights = {0.5};
        s.mix_low_alphas = {0.0, 0.5};
    } else if (name == "medium") {
        s.t_values = {-8.0, -4.0, -3.0, -2.0, -1.5, -1.0, -0.75, -0.5, -0.25, -0.1,
                      0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0};
        for (int k = 0; k <= 10; ++k) s.low_alphas.push_back(k / 10.0);
        s.high_alphas = {1.25, 1.5, 2.0, 3.0, 5.0, 10.0, kInf};
        s.mix_weights = {0.25, 0.5, 0.75};
        s.mix_low_alphas = {0.0, 0.25, 0.5, 0.75};
    } else if (name == "fine") {
        for (double t : {-16.0, -8.0, -6.0, -4.0, -3.0, -2.5, -2.0, -1.5, -1.25, -1.0, -0.75, -0.5,
                         -0.4, -0.25, -0.1, -0.05, 0.05, 0.1, 0.2, 0.25, 0.4, 0.5, 0.75, 1.0,
                         1.25, 1.5, 2.0, 3.0, 4.0, 8.0}) {
            s.t_values.push_back(t);
        }
        for (int k = 0; k <= 20; ++k) s.low_alphas.push_back(k / 20.0);
        s.high_alphas = {1.1, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 10.0, 20.0, kInf};
        s.mix_weights = {0.1, 0.25, 0.5, 0.75, 0.9};
        s.mix_low_alphas = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9};
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown grid preset '" + name + "'");
    }
    return s;
}

std::string default_grid_preset_name() {
    const char* env = std::getenv("CONDENT_GRID");
    if (env == nullptr || *env == '\0') return "coarse";
    return env;
}

namespace {

using Key = std::vector<double>;

Key key_of(double t, const DiscreteMeasure& tau) {
    Key k{t};
    for (const Atom& a : tau.atoms()) {
        k.push_back(a.alpha);
        k.push_back(a.weight);
    }
    return k;
}

class GridBuilder {
public:
    explicit GridBuilder(Grid& g) : g_(g) {}

    void bulk(double t, const DiscreteMeasure& tau) {
        BulkParam p(t, tau);
        if (!in_bulk(p).admissible) return;
        if (bulk_keys_.insert(key_of(t, tau)).second) g_.bulk.push_back(std::move(p));
    }
    void neg_inf(const DiscreteMeasure& tau) {
        if (!in_neg_inf(tau).admissible) return;
        if (neg_keys_.insert(key_of(0.0, tau)).second) g_.neg_inf.push_back(tau);
    }
    void zero(double alpha) {
        if (zero_keys_.insert(alpha).second) g_.zero_alphas.push_back(alpha);
    }

private:
    Grid& g_;
    std::set<Key> bulk_keys_;
    std::set<Key> neg_keys_;
    std::set<double> zero_keys_;
};

void populate(const GridSpec& s, GridBuilder& b) {
    std::vector<DiscreteMeasure> measures;
    for (double a : s.low_alphas) measures.push_back(DiscreteMeasure::point(a));
    for (double a : s.high_alphas) measures.push_back(DiscreteMeasure::point(a));
    for (double w : s.mix_weights) {
        for (double lo : s.mix_low_alphas) {
            for (double hi : s.high_alphas) measures.push_back(DiscreteMeasure({{lo, w}, {hi, 1.0 - w}}));
            for (double hi : s.low_alphas) {
                if (hi > lo) measures.push_back(DiscreteMeasure({{lo, w}, {hi, 1.0 - w}}));
            }
        }
    }

    // Literature families with their exact parameter maps.
    for (int k = 0; k < 10; ++k) {
        const double a = k / 10.0;
        b.bulk(1.0 - a, DiscreteMeasure::point(a));
        if (a > 0.0) b.bulk((1.0 - a) / a, DiscreteMeasure::point(a));
    }
    for (double a : s.low_alphas) {
        if (a > 0.0 && a < 1.0) {
            b.bulk(1.0 - a, DiscreteMeasure::point(a));
            b.bulk((1.0 - a) / a, DiscreteMeasure::point(a));
        }
    }
    for (const DiscreteMeasure& tau : measures) {
        for (double t : s.t_values) b.bulk(t, tau);
        // Boundary of the t < 0 clause: integral equal to 1/t.
        const ExtendedReal integral = integral_coefficient(tau);
        if (tau.max_alpha() > 1.0 && integral < 0.0) b.bulk(1.0 / integral, tau);
        b.neg_inf(tau);
    }
    for (double a : s.high_alphas) {
        if (std::isfinite(a)) b.bulk(1.0 - a, DiscreteMeasure::point(a));
    }
    for (double a : s.low_alphas) b.zero(a);
}

}  // namespace

Grid grid(const GridSpec& spec) {
    Grid g;
    g.id = spec.id;
    GridBuilder b(g);
    populate(spec, b);
    return g;
}

Grid grid_by_name(const std::string& name) {
    static const std::vector<std::string> order = {"coarse", "medium", "fine"};
    std::size_t level = order.size();
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i] == name) level = i;
    }
    if (level == order.size()) throw Error(ErrorCode::InvalidArgument, "unknown grid preset '" + name + "'");
    Grid g;
    g.id = name;
    GridBuilder b(g);
    for (std::size_t i = 0; i <= level; ++i) populate(grid_preset(order[i]), b);
    return g;
}

}  // namespace condent
