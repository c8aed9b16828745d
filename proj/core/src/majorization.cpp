#include "condent/majorization.hpp"

#include "condent/error.hpp"
#include "condent/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace condent {

namespace {

constexpr double kChannelTol = 1e-10;

bool is_permutation(const Permutation& p, std::size_t d) {
    if (p.size() != d) return false;
    std::vector<bool> seen(d, false);
    for (std::size_t v : p) {
        if (v >= d || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

}  // namespace

bool majorizes(const ProbVec& p, const ProbVec& q) {
    std::vector<double> a = p.entries();
    std::vector<double> b = q.entries();
    const std::size_t len = std::max(a.size(), b.size());
    a.resize(len, 0.0);
    b.resize(len, 0.0);
    const double ta = std::accumulate(a.begin(), a.end(), 0.0);
    const double tb = std::accumulate(b.begin(), b.end(), 0.0);
    if (std::abs(ta - tb) > 1e-10) throw Error(ErrorCode::WeightMismatch, "vectors differ in total weight");
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    const double tol = zero_threshold(ta);
    double sa = 0.0, sb = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        sa += a[k];
        sb += b[k];
        if (sa < sb - tol) return false;
    }
    return true;
}

DoublyStochastic DoublyStochastic::dense(Matrix s) {
    if (s.rows() != s.cols()) throw Error(ErrorCode::InvalidChannel, "S must be square");
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        const double v = s.data()[i];
        if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::InvalidChannel, "S must be nonnegative");
    }
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        if (std::abs(s.row(i).sum() - 1.0) > kChannelTol || std::abs(s.col(i).sum() - 1.0) > kChannelTol) {
            throw Error(ErrorCode::InvalidChannel, "S must be doubly stochastic");
        }
    }
    DoublyStochastic out;
    out.dim_ = static_cast<std::size_t>(s.rows());
    out.dense_ = true;
    out.s_ = std::move(s);
    return out;
}

DoublyStochastic DoublyStochastic::mixture(std::size_t dim, std::vector<PermTerm> terms) {
    if (terms.empty()) throw Error(ErrorCode::InvalidChannel, "empty permutation mixture");
    double total = 0.0;
    for (const PermTerm& t : terms) {
        if (!std::isfinite(t.weight) || t.weight < 0.0) {
            throw Error(ErrorCode::InvalidChannel, "mixture weights must be nonnegative");
        }
        if (!is_permutation(t.perm, dim)) throw Error(ErrorCode::InvalidChannel, "invalid permutation");
        total += t.weight;
    }
    if (std::abs(total - 1.0) > kChannelTol) throw Error(ErrorCode::InvalidChannel, "mixture weights must sum to 1");
    DoublyStochastic out;
    out.dim_ = dim;
    out.dense_ = false;
    out.terms_ = std::move(terms);
    return out;
}

DoublyStochastic DoublyStochastic::identity(std::size_t dim) {
    Permutation id(dim);
    std::iota(id.begin(), id.end(), std::size_t{0});
    return mixture(dim, {PermTerm{1.0, std::move(id)}});
}

Matrix DoublyStochastic::to_dense() const {
    if (dense_) return s_;
    const auto d = static_cast<Eigen::Index>(dim_);
    Matrix s = Matrix::Zero(d, d);
    for (const PermTerm& t : terms_) {
        for (std::size_t x = 0; x < dim_; ++x) s(x, t.perm[x]) += t.weight;
    }
    return s;
}

Matrix DoublyStochastic::apply(const Matrix& j) const {
    if (dense_) return s_ * j;
    Matrix out = Matrix::Zero(j.rows(), j.cols());
    for (const PermTerm& t : terms_) {
        for (std::size_t x = 0; x < dim_; ++x) out.row(x) += t.weight * j.row(t.perm[x]);
    }
    return out;
}

CondChannel::CondChannel(std::vector<ChannelBranch> branches) : branches_(std::move(branches)) {
    if (branches_.empty()) throw Error(ErrorCode::InvalidChannel, "channel has no branches");
    const std::size_t dx = branches_.front().s.dim();
    const Eigen::Index n = branches_.front().d.rows();
    const Eigen::Index n_out = branches_.front().d.cols();
    Matrix sum = Matrix::Zero(n, n_out);
    for (const ChannelBranch& b : branches_) {
        if (b.s.dim() != dx || b.d.rows() != n || b.d.cols() != n_out) {
            throw Error(ErrorCode::InvalidChannel, "branches disagree in shape");
        }
        for (Eigen::Index i = 0; i < b.d.size(); ++i) {
            const double v = b.d.data()[i];
            if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::InvalidChannel, "D must be nonnegative");
        }
        for (Eigen::Index y = 0; y < n; ++y) {
            if (b.d.row(y).sum() > 1.0 + kChannelTol) {
                throw Error(ErrorCode::InvalidChannel, "D rows must be substochastic");
            }
        }
        sum += b.d;
    }
    for (Eigen::Index y = 0; y < n; ++y) {
        if (std::abs(sum.row(y).sum() - 1.0) > kChannelTol) {
            throw Error(ErrorCode::InvalidChannel, "branch maps must sum to a row-stochastic matrix");
        }
    }
}

JointDist apply_channel(const JointDist& j, const CondChannel& c) {
    if (j.rows() != c.dim_x() || j.cols() != c.dim_y_in()) {
        throw Error(ErrorCode::DimMismatch, "channel shape does not match the joint distribution");
    }
    Matrix out = Matrix::Zero(j.matrix().rows(), static_cast<Eigen::Index>(c.dim_y_out()));
    for (const ChannelBranch& b : c.branches()) out += b.s.apply(j.matrix()) * b.d;
    // Cancellation-free products of nonnegatives; clamp signed zeros.
    return JointDist(out.cwiseMax(0.0));
}

CondChannel sample_channel(std::size_t d, std::size_t n, std::size_t n_out, std::uint64_t seed) {
    if (d == 0 || n == 0 || n_out == 0) throw Error(ErrorCode::InvalidArgument, "dimensions must be positive");
    Rng rng(seed);
    const auto k = static_cast<std::size_t>(rng.between(1, static_cast<int>(n_out)));
    const auto nn = static_cast<Eigen::Index>(n);
    const auto no = static_cast<Eigen::Index>(n_out);

    Matrix transition(nn, no);
    for (Eigen::Index y = 0; y < nn; ++y) {
        const auto parts = rng.composition(16, n_out);
        for (Eigen::Index yo = 0; yo < no; ++yo) transition(y, yo) = parts[yo] / 16.0;
    }
    std::vector<Matrix> ds(k, Matrix::Zero(nn, no));
    for (Eigen::Index y = 0; y < nn; ++y) {
        for (Eigen::Index yo = 0; yo < no; ++yo) {
            const auto split = rng.composition(8, k);
            for (std::size_t i = 0; i < k; ++i) ds[i](y, yo) = transition(y, yo) * (split[i] / 8.0);
        }
    }
    std::vector<ChannelBranch> branches;
    for (std::size_t i = 0; i < k; ++i) {
        const auto m = static_cast<std::size_t>(rng.between(1, static_cast<int>(d)));
        const auto weights = rng.composition(8, m);
        std::vector<PermTerm> terms;
        for (std::size_t r = 0; r < m; ++r) {
            Permutation perm = rng.permutation(d);
            if (weights[r] > 0) terms.push_back({weights[r] / 8.0, std::move(perm)});
        }
        const Matrix s = DoublyStochastic::mixture(d, std::move(terms)).to_dense();
        branches.push_back({DoublyStochastic::dense(s), std::move(ds[i])});
    }
    return CondChannel(std::move(branches));
}

bool power_universal(const JointDist& j) {
    if (std::abs(total_weight(j) - 1.0) > 1e-10) return false;
    const JointDist c = cleaned(j);
    for (std::size_t y = 0; y < c.cols(); ++y) {
        std::size_t nonzero = 0;
        for (std::size_t x = 0; x < c.rows(); ++x) nonzero += c(x, y) > 0.0 ? 1 : 0;
        if (nonzero == 1) return false;
    }
    return true;
}

}  // namespace condent
