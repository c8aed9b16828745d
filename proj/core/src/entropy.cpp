#include "condent/entropy.hpp"

#include "condent/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace condent {

namespace {

constexpr double kLn2 = std::numbers::ln2;

std::vector<double> normalized_clean(const std::vector<double>& v) {
    double total = 0.0;
    for (double x : v) total += x;
    const double thr = zero_threshold(total);
    std::vector<double> out(v.size(), 0.0);
    double kept = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > thr) {
            out[i] = v[i];
            kept += v[i];
        }
    }
    if (kept <= 0.0) throw Error(ErrorCode::EmptySupport, "vector has empty support");
    for (double& x : out) x /= kept;
    return out;
}

// Renyi entropy in bits of a normalized vector with exact zeros.
double renyi_clean(std::span<const double> p, ExtendedReal alpha) {
    double pmax = 0.0;
    std::size_t support = 0;
    for (double x : p) {
        if (x > 0.0) {
            ++support;
            pmax = std::max(pmax, x);
        }
    }
    if (support == 0) throw Error(ErrorCode::EmptySupport, "vector has empty support");
    if (alpha == 0.0) return std::log2(static_cast<double>(support));
    if (std::isinf(alpha)) return -std::log2(pmax);
    if (alpha == 1.0) {
        double h = 0.0;
        for (double x : p) {
            if (x > 0.0) h -= x * std::log2(x);
        }
        return h;
    }
    // log sum p^alpha = alpha log pmax + log sum (p / pmax)^alpha
    double s = 0.0;
    for (double x : p) {
        if (x > 0.0) s += std::pow(x / pmax, alpha);
    }
    const double log_sum = alpha * std::log(pmax) + std::log(s);
    return log_sum / ((1.0 - alpha) * kLn2);
}

void require_alpha(ExtendedReal alpha) {
    if (std::isnan(alpha) || alpha < 0.0) {
        throw Error(ErrorCode::InvalidParams, "Renyi order must lie in [0, inf]");
    }
}

// Positive-mass columns as (mass, normalized column) pairs.
struct ColumnView {
    double mass;
    std::vector<double> p;
};

std::vector<ColumnView> columns_of(const JointDist& j) {
    const double total = total_weight(j);
    if (std::abs(total - 1.0) > 1e-9) {
        throw Error(ErrorCode::NotNormalized, "joint distribution must have total weight 1");
    }
    const JointDist c = cleaned(j);
    std::vector<ColumnView> out;
    for (std::size_t y = 0; y < c.cols(); ++y) {
        const double mass = c.column_sum(y);
        if (mass <= 0.0) continue;
        std::vector<double> col = c.column_entries(y);
        for (double& x : col) x /= mass;
        out.push_back({mass, std::move(col)});
    }
    if (out.empty()) throw Error(ErrorCode::EmptySupport, "joint distribution has no mass");
    return out;
}

// (1/t) log2 sum_y w_y 2^{t h_y}, evaluated with a max shift and expm1/log1p
// so that small |t| keeps full precision.
double exponential_mean(const std::vector<double>& weights, const std::vector<double>& h, double t) {
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    double m = -kInf;
    for (double v : h) m = std::max(m, t * v);
    if (std::isinf(m)) {
        // Some column entropy is infinite; only reachable for signed combinations.
        return m / t;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        acc += (weights[i] / wsum) * std::expm1((t * h[i] - m) * kLn2);
    }
    return (m + std::log1p(acc) / kLn2) / t;
}

}  // namespace

ExtendedReal renyi(const ProbVec& p, ExtendedReal alpha) {
    require_alpha(alpha);
    const std::vector<double> q = normalized_clean(p.entries());
    return renyi_clean(q, alpha);
}

ExtendedReal renyi_relative(const ProbVec& p, const ProbVec& r, ExtendedReal alpha) {
    require_alpha(alpha);
    if (p.size() != r.size()) throw Error(ErrorCode::DimMismatch, "p and r differ in length");
    const std::vector<double> a = normalized_clean(p.entries());
    const std::vector<double> b = normalized_clean(r.entries());
    bool contained = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > 0.0 && b[i] == 0.0) contained = false;
    }
    if (alpha == 0.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] > 0.0) s += b[i];
        }
        return s > 0.0 ? -std::log2(s) : kInf;
    }
    if (alpha >= 1.0 && !contained) return kInf;
    if (alpha == 1.0) {
        double d = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] > 0.0) d += a[i] * std::log2(a[i] / b[i]);
        }
        return d;
    }
    if (std::isinf(alpha)) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] > 0.0) m = std::max(m, a[i] / b[i]);
        }
        return std::log2(m);
    }
    std::vector<double> logs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > 0.0 && b[i] > 0.0) logs.push_back(alpha * std::log(a[i]) + (1.0 - alpha) * std::log(b[i]));
    }
    if (logs.empty()) return kInf;
    const double mx = *std::max_element(logs.begin(), logs.end());
    double s = 0.0;
    for (double l : logs) s += std::exp(l - mx);
    return (mx + std::log(s)) / ((alpha - 1.0) * kLn2);
}

double tau_entropy(std::span<const double> p, const DiscreteMeasure& tau) {
    double h = 0.0;
    for (const Atom& a : tau.atoms()) h += a.weight * renyi_clean(p, a.alpha);
    return h;
}

double h_bulk(const JointDist& j, const BulkParam& param) {
    const auto cols = columns_of(j);
    std::vector<double> w, h;
    for (const auto& c : cols) {
        w.push_back(c.mass);
        h.push_back(tau_entropy(c.p, param.tau));
    }
    return exponential_mean(w, h, param.t);
}

double h_signed(const JointDist& j, double t, std::span<const SignedAtom> atoms) {
    if (!std::isfinite(t) || t == 0.0) throw Error(ErrorCode::InvalidParams, "t must be finite and nonzero");
    for (const SignedAtom& a : atoms) require_alpha(a.alpha);
    const auto cols = columns_of(j);
    std::vector<double> w, h;
    for (const auto& c : cols) {
        double v = 0.0;
        for (const SignedAtom& a : atoms) {
            if (a.weight != 0.0) v += a.weight * renyi_clean(c.p, a.alpha);
        }
        w.push_back(c.mass);
        h.push_back(v);
    }
    return exponential_mean(w, h, t);
}

double h_zero(const JointDist& j, ExtendedReal alpha) {
    require_alpha(alpha);
    double s = 0.0;
    for (const auto& c : columns_of(j)) s += c.mass * renyi_clean(c.p, alpha);
    return s;
}

double h_neg_inf(const JointDist& j, const DiscreteMeasure& tau) {
    double m = kInf;
    for (const auto& c : columns_of(j)) m = std::min(m, tau_entropy(c.p, tau));
    return m;
}

double h_pos_inf_zero(const JointDist& j) {
    double m = -kInf;
    for (const auto& c : columns_of(j)) m = std::max(m, renyi_clean(c.p, 0.0));
    return m;
}

std::string_view named_family_name(NamedFamily f) {
    switch (f) {
        case NamedFamily::Hayashi: return "hayashi";
        case NamedFamily::Arimoto: return "arimoto";
        case NamedFamily::TwoParam: return "two_param";
        case NamedFamily::Cachin: return "cachin";
        case NamedFamily::RennerWolf: return "renner_wolf";
        case NamedFamily::TanHayashi: return "tan_hayashi";
    }
    return "unknown";
}

EntropyFamily resolve(const NamedSpec& spec) {
    const double alpha = spec.alpha;
    auto invalid = [&](const char* why) {
        return Error(ErrorCode::InvalidParams,
                     std::string(named_family_name(spec.name)) + ": " + why);
    };
    switch (spec.name) {
        case NamedFamily::Hayashi:
            if (std::isnan(alpha) || alpha < 0.0) throw invalid("alpha must lie in [0, inf]");
            if (alpha == 1.0) return FamilyZero{1.0};
            if (std::isinf(alpha)) return FamilyNegInf{DiscreteMeasure::point(kInf)};
            return FamilyBulk{BulkParam(1.0 - alpha, DiscreteMeasure::point(alpha))};
        case NamedFamily::Arimoto:
            if (std::isnan(alpha) || alpha < 0.0) throw invalid("alpha must lie in [0, inf]");
            if (alpha == 0.0) return FamilyPosInfZero{};
            if (alpha == 1.0) return FamilyZero{1.0};
            if (std::isinf(alpha)) return FamilyBulk{BulkParam(-1.0, DiscreteMeasure::point(kInf))};
            return FamilyBulk{BulkParam((1.0 - alpha) / alpha, DiscreteMeasure::point(alpha))};
        case NamedFamily::TwoParam: {
            const double beta = spec.beta;
            if (std::isnan(alpha) || alpha <= 0.0 || alpha == 1.0) {
                throw invalid("alpha must lie in (0, 1) or (1, inf]");
            }
            if (!std::isfinite(beta) || beta == 0.0) throw invalid("beta must be finite and nonzero");
            const double t = std::isinf(alpha) ? -beta : beta * (1.0 - alpha) / alpha;
            return FamilyBulk{BulkParam(t, DiscreteMeasure::point(alpha))};
        }
        case NamedFamily::Cachin:
            if (std::isnan(alpha) || alpha < 0.0) throw invalid("alpha must lie in [0, inf]");
            return FamilyZero{alpha};
        case NamedFamily::RennerWolf:
            if (alpha == 0.0) return FamilyPosInfZero{};
            if (std::isnan(alpha) || alpha <= 1.0) throw invalid("alpha must exceed 1 (or equal 0)");
            return FamilyNegInf{DiscreteMeasure::point(alpha)};
        case NamedFamily::TanHayashi: {
            const double a = spec.a;
            const double b = spec.b;
            if (!std::isfinite(a) || !std::isfinite(b)) throw invalid("a and b must be finite");
            if (a == 0.0) throw invalid("a must be nonzero");
            if (1.0 + a <= 0.0 || 1.0 + b <= 0.0) throw invalid("1 + a and 1 + b must be positive");
            FamilySigned f{-a / (1.0 + b), {}};
            f.atoms.push_back({1.0 + a, 1.0 + b});
            if (b != 0.0) f.atoms.push_back({1.0 + b, -b});
            return f;
        }
    }
    throw invalid("unknown family");
}

double evaluate(const JointDist& j, const EntropyFamily& family) {
    return std::visit(
        [&](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, FamilyBulk>) {
                return h_bulk(j, f.param);
            } else if constexpr (std::is_same_v<F, FamilyZero>) {
                return h_zero(j, f.alpha);
            } else if constexpr (std::is_same_v<F, FamilyNegInf>) {
                return h_neg_inf(j, f.tau);
            } else if constexpr (std::is_same_v<F, FamilyPosInfZero>) {
                return h_pos_inf_zero(j);
            } else if constexpr (std::is_same_v<F, FamilySigned>) {
                return h_signed(j, f.t, f.atoms);
            } else {
                return h_named(j, f.spec);
            }
        },
        family);
}

double h_named(const JointDist& j, const NamedSpec& spec) {
    return evaluate(j, resolve(spec));
}

double h_mixture(const JointDist& j, const MixtureEntropy& mixture) {
    if (mixture.empty()) throw Error(ErrorCode::InvalidParams, "empty mixture");
    double wsum = 0.0;
    double value = 0.0;
    for (const auto& c : mixture) {
        if (!std::isfinite(c.weight) || c.weight < 0.0) {
            throw Error(ErrorCode::InvalidParams, "mixture weights must be nonnegative");
        }
        wsum += c.weight;
        if (c.weight > 0.0) value += c.weight * evaluate(j, c.family);
    }
    if (std::abs(wsum - 1.0) > 1e-12) throw Error(ErrorCode::InvalidParams, "mixture weights must sum to 1");
    return value;
}

}  // namespace condent
