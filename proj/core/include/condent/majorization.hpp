#pragma once

#include "condent/core.hpp"
#include "condent/rational.hpp"

#include <cstdint>
#include <vector>

namespace condent {

bool majorizes(const ProbVec& p, const ProbVec& q);

using Permutation = std::vector<std::size_t>;

// Row x of (pi J) is row perm[x] of J.
struct PermTerm {
    double weight;
    Permutation perm;
    friend bool operator==(const PermTerm&, const PermTerm&) = default;
};

// Doubly stochastic map on R^d, held either densely or as a convex
// combination of permutations. The latter keeps identity-like maps on large
// alphabets cheap.
class DoublyStochastic {
public:
    static DoublyStochastic dense(Matrix s);
    static DoublyStochastic mixture(std::size_t dim, std::vector<PermTerm> terms);
    static DoublyStochastic identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    bool is_dense() const { return dense_; }
    const Matrix& dense_matrix() const { return s_; }
    const std::vector<PermTerm>& terms() const { return terms_; }

    Matrix to_dense() const;
    Matrix apply(const Matrix& j) const;

private:
    std::size_t dim_ = 0;
    bool dense_ = true;
    Matrix s_;
    std::vector<PermTerm> terms_;
};

struct ChannelBranch {
    DoublyStochastic s;
    Matrix d;
};

class CondChannel {
public:
    explicit CondChannel(std::vector<ChannelBranch> branches);

    const std::vector<ChannelBranch>& branches() const { return branches_; }
    std::size_t dim_x() const { return branches_.front().s.dim(); }
    std::size_t dim_y_in() const { return static_cast<std::size_t>(branches_.front().d.rows()); }
    std::size_t dim_y_out() const { return static_cast<std::size_t>(branches_.front().d.cols()); }

private:
    std::vector<ChannelBranch> branches_;
};

JointDist apply_channel(const JointDist& j, const CondChannel& c);

// Deterministic in the seed. Weights are dyadic, so applying the channel to
// dyadic inputs is exact in double precision.
CondChannel sample_channel(std::size_t d, std::size_t n, std::size_t n_out, std::uint64_t seed);

bool power_universal(const JointDist& j);

inline constexpr std::size_t kOracleMaxDim = 5;

struct WitnessTerm {
    Permutation perm;
    std::size_t y;
    std::size_t y_out;
    Rational weight;
};

// Decides Q = sum_pi (pi P) D_pi with D_pi >= 0 and sum_pi D_pi row-stochastic.
// `p` and `q` are the exact matrices the program was solved on (zero rows
// stripped, both padded to `d` rows).
struct OracleCertificate {
    bool feasible = false;
    std::size_t d = 0;
    RationalMatrix p;
    RationalMatrix q;
    std::vector<WitnessTerm> witness;
    // Multipliers for the rows (sum_y' D(y, .) = 1 for each y), then
    // (reconstruction of Q(x, y') in row-major order).
    std::vector<Rational> farkas;
    std::size_t pivots = 0;
};

OracleCertificate cond_majorizes_oracle(const JointDist& p, const JointDist& q);
OracleCertificate cond_majorizes_oracle(const RationalMatrix& p, const RationalMatrix& q);

// Exact re-check of either kind of certificate.
bool verify_certificate(const OracleCertificate& cert);

// Channel realizing a feasible certificate (weights rounded to double).
CondChannel witness_channel(const OracleCertificate& cert);

}  // namespace condent
