#include "condent/transform.hpp"

#include "condent/error.hpp"

#include <cmath>

namespace condent {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Satisfied: return "Satisfied";
        case Verdict::Violated: return "Violated";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::vector<EntropyFamily> verdict_families(const Grid& g) {
    std::vector<EntropyFamily> out;
    for (const BulkParam& p : g.bulk) out.push_back(FamilyBulk{p});
    for (const DiscreteMeasure& tau : g.neg_inf) out.push_back(FamilyNegInf{tau});
    for (double a : g.zero_alphas) {
        if (a <= 1.0) out.push_back(FamilyZero{a});
    }
    out.push_back(FamilyPosInfZero{});
    return out;
}

LargeSampleReport large_sample_verdict(const JointDist& p, const JointDist& q, const Grid& g) {
    LargeSampleReport r{Verdict::Satisfied, {}, std::nullopt, kInf};
    for (EntropyFamily& f : verdict_families(g)) {
        const double hp = evaluate(p, f);
        const double hq = evaluate(q, f);
        const double slack = hq - hp;
        if (slack < r.min_slack) {
            r.min_slack = slack;
            if (slack <= 0.0) r.violating = f;
        }
        r.margins.push_back({std::move(f), hp, hq, slack});
    }
    if (r.min_slack <= 0.0) {
        r.verdict = Verdict::Violated;
    } else if (r.min_slack <= kStrictSlack) {
        r.verdict = Verdict::Inconclusive;
    }
    return r;
}

namespace {

JointDist tensor_power(const JointDist& p, int k) {
    JointDist out(Matrix::Ones(1, 1));
    for (int i = 0; i < k; ++i) out = tensor(out, p);
    return out;
}

double checked_pow(double base, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) {
        v *= base;
        if (v > 1e18) return v;
    }
    return v;
}

}  // namespace

JointDist catalyst(const JointDist& p, const JointDist& q, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
    double rows = 0.0, cols = 0.0;
    for (int l = 0; l < n; ++l) {
        rows += checked_pow(static_cast<double>(p.rows()), l) * checked_pow(static_cast<double>(q.rows()), n - 1 - l);
        cols += checked_pow(static_cast<double>(p.cols()), l) * checked_pow(static_cast<double>(q.cols()), n - 1 - l);
    }
    if (rows * cols > static_cast<double>(kMaxCatalystEntries)) {
        throw Error(ErrorCode::SizeOverflow, "catalyst would exceed 1e6 entries");
    }
    JointDist out;
    for (int l = 0; l < n; ++l) {
        JointDist block = tensor(tensor_power(p, l), tensor_power(q, n - 1 - l));
        out = l == 0 ? block : direct_sum(out, block);
    }
    return scaled(out, 1.0 / n);
}

namespace {

std::size_t nonzero_rows(const JointDist& j) {
    const JointDist c = cleaned(j);
    std::size_t k = 0;
    for (std::size_t x = 0; x < c.rows(); ++x) {
        if ((c.matrix().row(static_cast<Eigen::Index>(x)).array() > 0.0).any()) ++k;
    }
    return k;
}

}  // namespace

OracleCertificate n_copy_feasible(const JointDist& p, const JointDist& q, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
    const double dp = checked_pow(static_cast<double>(nonzero_rows(p)), n);
    const double dq = checked_pow(static_cast<double>(nonzero_rows(q)), n);
    if (dp > kOracleMaxDim || dq > kOracleMaxDim) {
        throw Error(ErrorCode::DimensionTooLarge, "tensor powers exceed the oracle dimension guard");
    }
    const RationalMatrix rp = rationalize(p);
    const RationalMatrix rq = rationalize(q);
    RationalMatrix pn = rp, qn = rq;
    for (int i = 1; i < n; ++i) {
        pn = tensor(pn, rp);
        qn = tensor(qn, rq);
    }
    return cond_majorizes_oracle(pn, qn);
}

RateEstimate rate_formula(const JointDist& p, const JointDist& q, const Grid& g) {
    constexpr double kZero = 1e-12;
    RateEstimate r{kInf, false, std::nullopt, 0, {}};
    std::vector<EntropyFamily> families;
    for (const BulkParam& b : g.bulk) families.push_back(FamilyBulk{b});
    for (const DiscreteMeasure& tau : g.neg_inf) families.push_back(FamilyNegInf{tau});
    std::size_t degenerate = 0, undetermined = 0;
    for (EntropyFamily& f : families) {
        const double hp = evaluate(p, f);
        const double hq = evaluate(q, f);
        if (std::abs(hp) <= kZero) {
            if (std::abs(hq) <= kZero) {
                ++undetermined;
            } else {
                ++degenerate;
            }
            continue;
        }
        const double ratio = hq / hp;
        ++r.families_used;
        if (ratio < r.value) {
            r.value = ratio;
            r.argmin = std::move(f);
        }
    }
    if (degenerate > 0) {
        r.warnings.push_back("DegenerateDenominator: skipped " + std::to_string(degenerate) +
                             " families with H(P) = 0 < H(Q)");
    }
    if (undetermined > 0) {
        r.warnings.push_back("skipped " + std::to_string(undetermined) + " families with H(P) = H(Q) = 0");
    }
    r.inconclusive = r.families_used == 0;
    return r;
}

}  // namespace condent
