#include "condent/core.hpp"

#include "condent/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace condent {

double zero_threshold(double total_weight) {
    return 1e-12 * std::max(1.0, total_weight);
}

namespace {

void require_entry(double v, const char* what) {
    if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " entries must be finite and nonnegative");
    }
}

}  // namespace

ProbVec::ProbVec(std::vector<double> entries) : entries_(std::move(entries)) {
    for (double v : entries_) require_entry(v, "ProbVec");
}

double ProbVec::total() const {
    double s = 0.0;
    for (double v : entries_) s += v;
    return s;
}

JointDist::JointDist(Matrix m) : m_(std::move(m)) {
    for (Eigen::Index i = 0; i < m_.size(); ++i) require_entry(m_.data()[i], "JointDist");
}

JointDist JointDist::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t d = rows.size();
    const std::size_t n = d == 0 ? 0 : rows.front().size();
    Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < d; ++x) {
        if (rows[x].size() != n) throw Error(ErrorCode::DimMismatch, "ragged matrix rows");
        for (std::size_t y = 0; y < n; ++y) m(x, y) = rows[x][y];
    }
    return JointDist(std::move(m));
}

JointDist JointDist::column(const std::vector<double>& p) {
    Matrix m(static_cast<Eigen::Index>(p.size()), 1);
    for (std::size_t i = 0; i < p.size(); ++i) m(i, 0) = p[i];
    return JointDist(std::move(m));
}

std::vector<double> JointDist::column_entries(std::size_t y) const {
    std::vector<double> out(rows());
    for (std::size_t x = 0; x < rows(); ++x) out[x] = m_(x, y);
    return out;
}

double JointDist::column_sum(std::size_t y) const {
    double s = 0.0;
    for (std::size_t x = 0; x < rows(); ++x) s += m_(x, y);
    return s;
}

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw Error(ErrorCode::InvalidParams, "measure has no atoms");
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.alpha < b.alpha; });
    double total = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        if (std::isnan(a.alpha) || a.alpha < 0.0) {
            throw Error(ErrorCode::InvalidParams, "measure atom outside [0, inf]");
        }
        if (!std::isfinite(a.weight) || a.weight <= 0.0) {
            throw Error(ErrorCode::InvalidParams, "measure weights must be positive");
        }
        if (i > 0 && atoms_[i - 1].alpha == a.alpha) {
            throw Error(ErrorCode::InvalidParams, "measure atoms must be distinct");
        }
        total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw Error(ErrorCode::InvalidParams, "measure weights must sum to 1");
    }
}

DiscreteMeasure DiscreteMeasure::point(ExtendedReal alpha) {
    return DiscreteMeasure({Atom{alpha, 1.0}});
}

double DiscreteMeasure::weight_at(ExtendedReal alpha) const {
    for (const Atom& a : atoms_) {
        if (a.alpha == alpha) return a.weight;
    }
    return 0.0;
}

BulkParam::BulkParam(double t_value, DiscreteMeasure measure)
    : t(t_value), tau(std::move(measure)) {
    if (!std::isfinite(t) || t == 0.0) {
        throw Error(ErrorCode::InvalidParams, "t must be finite and nonzero");
    }
    if (tau.size() == 0) throw Error(ErrorCode::InvalidParams, "empty measure");
}

double total_weight(const JointDist& j) { return j.matrix().sum(); }

bool is_normalized(const JointDist& j, double tol) {
    return std::abs(total_weight(j) - 1.0) <= tol;
}

JointDist cleaned(const JointDist& j) {
    const double thr = zero_threshold(total_weight(j));
    Matrix m = j.matrix();
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        if (m.data()[i] <= thr) m.data()[i] = 0.0;
    }
    return JointDist(std::move(m));
}

JointDist tensor(const JointDist& a, const JointDist& b) {
    const Matrix& A = a.matrix();
    const Matrix& B = b.matrix();
    Matrix m(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            m.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
        }
    }
    return JointDist(std::move(m));
}

JointDist direct_sum(const JointDist& a, const JointDist& b) {
    const Matrix& A = a.matrix();
    const Matrix& B = b.matrix();
    Matrix m = Matrix::Zero(A.rows() + B.rows(), A.cols() + B.cols());
    m.topLeftCorner(A.rows(), A.cols()) = A;
    m.bottomRightCorner(B.rows(), B.cols()) = B;
    return JointDist(std::move(m));
}

JointDist scaled(const JointDist& j, double factor) {
    return JointDist(j.matrix() * factor);
}

ProbVec marginal_y(const JointDist& j) {
    std::vector<double> out(j.cols());
    for (std::size_t y = 0; y < j.cols(); ++y) out[y] = j.column_sum(y);
    return ProbVec(std::move(out));
}

ProbVec conditional_column(const JointDist& j, std::size_t y) {
    if (y >= j.cols()) throw Error(ErrorCode::DimMismatch, "column index out of range");
    const double mass = j.column_sum(y);
    if (mass <= zero_threshold(total_weight(j))) {
        throw Error(ErrorCode::ZeroColumn, "column " + std::to_string(y) + " has zero mass");
    }
    std::vector<double> out = j.column_entries(y);
    for (double& v : out) v /= mass;
    return ProbVec(std::move(out));
}

bool approx_equal(const JointDist& a, const JointDist& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if (a.rows() == 0 || a.cols() == 0) return true;
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace condent
