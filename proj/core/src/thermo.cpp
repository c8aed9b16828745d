#include "condent/thermo.hpp"

#include "condent/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace condent {

namespace {

void require_gibbs(const GibbsSpec& g) {
    if (g.energies.empty()) throw Error(ErrorCode::InvalidArgument, "empty energy list");
    if (!std::isfinite(g.beta) || g.beta <= 0.0) throw Error(ErrorCode::InvalidArgument, "beta must be positive");
    for (double e : g.energies) {
        if (!std::isfinite(e)) throw Error(ErrorCode::InvalidArgument, "energies must be finite");
    }
}

}  // namespace

double partition_function(const GibbsSpec& g) {
    require_gibbs(g);
    double z = 0.0;
    for (double e : g.energies) z += std::exp(-g.beta * e);
    return z;
}

std::vector<double> gibbs_state(const GibbsSpec& g) {
    require_gibbs(g);
    // Shift by the ground energy to avoid overflow; the ratio is unchanged.
    const double e0 = *std::min_element(g.energies.begin(), g.energies.end());
    std::vector<double> w;
    double s = 0.0;
    for (double e : g.energies) {
        w.push_back(std::exp(-g.beta * (e - e0)));
        s += w.back();
    }
    for (double& v : w) v /= s;
    return w;
}

std::vector<double> EmbedSpec::state() const {
    std::vector<double> r;
    for (long gi : g) r.push_back(static_cast<double>(gi) / static_cast<double>(d));
    return r;
}

EmbedSpec embed_spec(const std::vector<double>& r, long cap) {
    const std::size_t n = r.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty state");
    for (double v : r) {
        if (!std::isfinite(v) || v <= 0.0) throw Error(ErrorCode::InvalidArgument, "state must have full support");
    }
    if (static_cast<long>(n) > cap) throw Error(ErrorCode::SizeOverflow, "state longer than the embedding cap");
    EmbedSpec best;
    best.max_error = kInf;
    for (long d = static_cast<long>(n); d <= cap; ++d) {
        // Largest-remainder rounding of r * d with every part at least 1.
        std::vector<long> g(n);
        std::vector<std::pair<double, std::size_t>> rem;
        long used = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double target = r[i] * static_cast<double>(d);
            g[i] = std::max(1L, static_cast<long>(std::floor(target)));
            used += g[i];
            rem.push_back({target - static_cast<double>(g[i]), i});
        }
        std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        for (std::size_t k = 0; used < d && k < rem.size(); ++k, ++used) ++g[rem[k].second];
        if (used != d) continue;
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            err = std::max(err, std::abs(static_cast<double>(g[i]) / static_cast<double>(d) - r[i]));
        }
        if (err < best.max_error) {
            best.g = g;
            best.d = d;
            best.max_error = err;
        }
        if (err <= 1e-15) break;
    }
    best.approximated = best.max_error > 1e-15;
    return best;
}

EmbedSpec embed_spec(const GibbsSpec& g, long cap) { return embed_spec(gibbs_state(g), cap); }

JointDist embed(const JointDist& p, const EmbedSpec& e) {
    if (p.rows() != e.g.size()) throw Error(ErrorCode::DimMismatch, "embedding spec does not match rows");
    Matrix out(e.d, static_cast<Eigen::Index>(p.cols()));
    Eigen::Index row = 0;
    for (std::size_t a = 0; a < e.g.size(); ++a) {
        for (long k = 0; k < e.g[a]; ++k, ++row) {
            for (std::size_t y = 0; y < p.cols(); ++y) out(row, y) = p(a, y) / static_cast<double>(e.g[a]);
        }
    }
    return JointDist(std::move(out));
}

JointDist embed_inverse(const JointDist& p, const EmbedSpec& e) {
    if (static_cast<long>(p.rows()) != e.d) throw Error(ErrorCode::DimMismatch, "embedding spec does not match rows");
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(e.g.size()), static_cast<Eigen::Index>(p.cols()));
    Eigen::Index row = 0;
    for (std::size_t a = 0; a < e.g.size(); ++a) {
        for (long k = 0; k < e.g[a]; ++k, ++row) out.row(static_cast<Eigen::Index>(a)) += p.matrix().row(row);
    }
    return JointDist(std::move(out));
}

RationalMatrix embed(const RationalMatrix& p, const EmbedSpec& e) {
    if (p.rows() != e.g.size()) throw Error(ErrorCode::DimMismatch, "embedding spec does not match rows");
    RationalMatrix out(static_cast<std::size_t>(e.d), p.cols());
    std::size_t row = 0;
    for (std::size_t a = 0; a < e.g.size(); ++a) {
        for (long k = 0; k < e.g[a]; ++k, ++row) {
            for (std::size_t y = 0; y < p.cols(); ++y) out(row, y) = p(a, y) / Rational(e.g[a]);
        }
    }
    return out;
}

RationalMatrix embed_inverse(const RationalMatrix& p, const EmbedSpec& e) {
    if (static_cast<long>(p.rows()) != e.d) throw Error(ErrorCode::DimMismatch, "embedding spec does not match rows");
    RationalMatrix out(e.g.size(), p.cols());
    std::size_t row = 0;
    for (std::size_t a = 0; a < e.g.size(); ++a) {
        for (long k = 0; k < e.g[a]; ++k, ++row) {
            for (std::size_t y = 0; y < p.cols(); ++y) out(a, y) += p(row, y);
        }
    }
    return out;
}

namespace {

struct ColumnDivergences {
    std::vector<double> mass;
    std::vector<double> value;
};

ColumnDivergences column_divergences(const JointDist& p, const ProbVec& r, const DiscreteMeasure& tau) {
    if (p.rows() != r.size()) throw Error(ErrorCode::DimMismatch, "state length does not match rows");
    if (std::abs(total_weight(p) - 1.0) > 1e-9) throw Error(ErrorCode::NotNormalized, "P must have total weight 1");
    const JointDist c = cleaned(p);
    ColumnDivergences out;
    for (std::size_t y = 0; y < c.cols(); ++y) {
        const double mass = c.column_sum(y);
        if (mass <= 0.0) continue;
        const ProbVec col(c.column_entries(y));
        double v = 0.0;
        for (const Atom& a : tau.atoms()) v += a.weight * renyi_relative(col, r, a.alpha);
        out.mass.push_back(mass);
        out.value.push_back(v);
    }
    return out;
}

}  // namespace

double i_divergence(const JointDist& p, const ProbVec& r, const BulkParam& param) {
    const ColumnDivergences cd = column_divergences(p, r, param.tau);
    // -(1/t) log2 sum P_Y 2^{-t D} is the exponential mean at -t.
    const double s = -param.t;
    double m = -kInf;
    for (double v : cd.value) m = std::max(m, s * v);
    if (std::isinf(m)) return m / s;
    double total = 0.0;
    for (double w : cd.mass) total += w;
    double acc = 0.0;
    for (std::size_t i = 0; i < cd.value.size(); ++i) {
        acc += (cd.mass[i] / total) * std::expm1((s * cd.value[i] - m) * std::numbers::ln2);
    }
    return (m + std::log1p(acc) / std::numbers::ln2) / s;
}

double i_divergence_neg_inf(const JointDist& p, const ProbVec& r, const DiscreteMeasure& tau) {
    const ColumnDivergences cd = column_divergences(p, r, tau);
    return *std::max_element(cd.value.begin(), cd.value.end());
}

double free_energy(const JointDist& p, const GibbsSpec& g, const BulkParam& param) {
    const ProbVec r(gibbs_state(g));
    return (i_divergence(p, r, param) - std::log2(partition_function(g))) / g.beta;
}

double free_energy_neg_inf(const JointDist& p, const GibbsSpec& g, const DiscreteMeasure& tau) {
    const ProbVec r(gibbs_state(g));
    return (i_divergence_neg_inf(p, r, tau) - std::log2(partition_function(g))) / g.beta;
}

JointDist smooth_target(const JointDist& q, const ProbVec& r, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw Error(ErrorCode::InvalidArgument, "eps must lie in [0, 1]");
    if (q.rows() != r.size()) throw Error(ErrorCode::DimMismatch, "state length does not match rows");
    Matrix out = (1.0 - eps) * q.matrix();
    for (std::size_t y = 0; y < q.cols(); ++y) {
        const double qy = q.column_sum(y);
        for (std::size_t x = 0; x < q.rows(); ++x) out(x, y) += eps * r[x] * qy;
    }
    return JointDist(std::move(out));
}

double tv_distance(const JointDist& a, const JointDist& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimMismatch, "shapes differ");
    return 0.5 * (a.matrix() - b.matrix()).cwiseAbs().sum();
}

SecondLawsReport second_laws_verdict(const JointDist& p, const JointDist& q, const GibbsSpec& g,
                                     double eps, const Grid& grid) {
    const EmbedSpec e = embed_spec(g);
    const ProbVec r(e.state());
    if (p.rows() != r.size() || q.rows() != r.size()) {
        throw Error(ErrorCode::DimMismatch, "energy list does not match the system dimension");
    }
    const JointDist pc = cleaned(p);
    for (std::size_t y = 0; y < pc.cols(); ++y) {
        std::size_t support = 0;
        for (std::size_t x = 0; x < pc.rows(); ++x) support += pc(x, y) > 0.0 ? 1 : 0;
        if (support >= r.size()) {
            throw Error(ErrorCode::HypothesisViolated,
                        "column " + std::to_string(y) + " of P has full support");
        }
    }
    const JointDist qc = cleaned(q);
    for (std::size_t y = 0; y < qc.cols(); ++y) {
        const double mass = qc.column_sum(y);
        if (mass <= 0.0) continue;
        double diff = 0.0;
        for (std::size_t x = 0; x < qc.rows(); ++x) diff = std::max(diff, std::abs(qc(x, y) / mass - r[x]));
        if (diff <= 1e-12) {
            throw Error(ErrorCode::HypothesisViolated,
                        "column " + std::to_string(y) + " of Q equals the Gibbs state");
        }
    }

    SecondLawsReport rep{Verdict::Satisfied, {}, std::nullopt, e,
                         tv_distance(q, smooth_target(q, r, eps))};
    const double log_z = std::log2(partition_function(g));
    double worst = kInf;
    auto record = [&](EntropyFamily f, double ip, double iq) {
        const double fp = (ip - log_z) / g.beta;
        const double fq = (iq - log_z) / g.beta;
        const double slack = fp - fq;
        if (slack < worst) {
            worst = slack;
            if (slack < 0.0) rep.violating = f;
        }
        rep.margins.push_back({std::move(f), fp, fq, slack});
    };
    for (const BulkParam& b : grid.bulk) {
        record(FamilyBulk{b}, i_divergence(p, r, b), i_divergence(q, r, b));
    }
    for (const DiscreteMeasure& tau : grid.neg_inf) {
        record(FamilyNegInf{tau}, i_divergence_neg_inf(p, r, tau), i_divergence_neg_inf(q, r, tau));
    }
    if (worst < -1e-12) {
        rep.verdict = Verdict::Violated;
    } else if (worst < 0.0) {
        rep.verdict = Verdict::Inconclusive;
    }
    return rep;
}

}  // namespace condent
