#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <vector>

namespace condent {

// Real number or a symbolic infinity, encoded by the IEEE infinities.
using ExtendedReal = double;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

using Matrix = Eigen::MatrixXd;

// Entries at or below this magnitude count as zero.
double zero_threshold(double total_weight);

class ProbVec {
public:
    ProbVec() = default;
    explicit ProbVec(std::vector<double> entries);

    std::size_t size() const { return entries_.size(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<double>& entries() const { return entries_; }
    double total() const;

private:
    std::vector<double> entries_;
};

// Nonnegative d x n matrix; rows index X, columns index Y.
class JointDist {
public:
    JointDist() = default;
    explicit JointDist(Matrix m);
    static JointDist from_rows(const std::vector<std::vector<double>>& rows);
    static JointDist column(const std::vector<double>& p);

    std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
    double operator()(std::size_t x, std::size_t y) const { return m_(x, y); }
    const Matrix& matrix() const { return m_; }
    std::vector<double> column_entries(std::size_t y) const;
    double column_sum(std::size_t y) const;

private:
    Matrix m_;
};

struct Atom {
    ExtendedReal alpha;
    double weight;
};

// Finitely supported probability measure on [0, +inf]; atoms sorted by alpha.
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    explicit DiscreteMeasure(std::vector<Atom> atoms);
    static DiscreteMeasure point(ExtendedReal alpha);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double weight_at(ExtendedReal alpha) const;
    ExtendedReal min_alpha() const { return atoms_.front().alpha; }
    ExtendedReal max_alpha() const { return atoms_.back().alpha; }

    friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

private:
    std::vector<Atom> atoms_;
};

inline bool operator==(const Atom& a, const Atom& b) {
    return a.alpha == b.alpha && a.weight == b.weight;
}

struct BulkParam {
    double t;
    DiscreteMeasure tau;

    BulkParam(double t_value, DiscreteMeasure measure);
    friend bool operator==(const BulkParam&, const BulkParam&) = default;
};

double total_weight(const JointDist& j);
bool is_normalized(const JointDist& j, double tol = 1e-9);
// Copy with sub-threshold entries set to exactly zero.
JointDist cleaned(const JointDist& j);

JointDist tensor(const JointDist& a, const JointDist& b);
JointDist direct_sum(const JointDist& a, const JointDist& b);
JointDist scaled(const JointDist& j, double factor);
JointDist canonicalize(const JointDist& j);

ProbVec marginal_y(const JointDist& j);
ProbVec conditional_column(const JointDist& j, std::size_t y);

bool approx_equal(const JointDist& a, const JointDist& b, double tol);

}  // namespace condent
