#include "condent/error.hpp"
#include "condent/majorization.hpp"
#include "condent/simplex.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace condent {

namespace {

RationalMatrix strip_zero_rows(const RationalMatrix& m) {
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (sgn(m(r, c)) != 0) {
                keep.push_back(r);
                break;
            }
        }
    }
    RationalMatrix out(keep.size(), m.cols());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t c = 0; c < m.cols(); ++c) out(i, c) = m(keep[i], c);
    }
    return out;
}

RationalMatrix pad_rows(const RationalMatrix& m, std::size_t d) {
    RationalMatrix out(d, m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    }
    return out;
}

struct Variable {
    Permutation perm;
    std::size_t y;
    std::size_t y_out;
    std::vector<Rational> column;  // (pi P)(., y)
};

struct Program {
    std::vector<Variable> vars;
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
};

// One variable per distinct permuted column of P and output column.
Program build_program(const RationalMatrix& p, const RationalMatrix& q) {
    const std::size_t d = p.rows();
    const std::size_t n = p.cols();
    const std::size_t n_out = q.cols();
    Program prog;
    for (std::size_t y = 0; y < n; ++y) {
        std::map<std::vector<Rational>, Permutation> distinct;
        Permutation perm(d);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        do {
            std::vector<Rational> col(d);
            for (std::size_t x = 0; x < d; ++x) col[x] = p(perm[x], y);
            distinct.emplace(std::move(col), perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (const auto& [col, pm] : distinct) {
            for (std::size_t yo = 0; yo < n_out; ++yo) prog.vars.push_back({pm, y, yo, col});
        }
    }
    const std::size_t rows = n + d * n_out;
    prog.a.assign(rows, std::vector<Rational>(prog.vars.size()));
    prog.b.assign(rows, Rational(0));
    for (std::size_t y = 0; y < n; ++y) prog.b[y] = 1;
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t yo = 0; yo < n_out; ++yo) prog.b[n + x * n_out + yo] = q(x, yo);
    }
    for (std::size_t v = 0; v < prog.vars.size(); ++v) {
        const Variable& var = prog.vars[v];
        prog.a[var.y][v] = 1;
        for (std::size_t x = 0; x < d; ++x) prog.a[n + x * n_out + var.y_out][v] = var.column[x];
    }
    return prog;
}

}  // namespace

OracleCertificate cond_majorizes_oracle(const JointDist& p, const JointDist& q) {
    return cond_majorizes_oracle(rationalize(p), rationalize(q));
}

OracleCertificate cond_majorizes_oracle(const RationalMatrix& p_raw, const RationalMatrix& q_raw) {
    // GMP arithmetic assumes reduced fractions; callers may hand in e.g. 6/12.
    RationalMatrix p_in = p_raw;
    RationalMatrix q_in = q_raw;
    for (RationalMatrix* m : {&p_in, &q_in}) {
        for (std::size_t r = 0; r < m->rows(); ++r) {
            for (std::size_t c = 0; c < m->cols(); ++c) {
                (*m)(r, c).canonicalize();
                if (sgn((*m)(r, c)) < 0) throw Error(ErrorCode::InvalidArgument, "entries must be nonnegative");
            }
        }
    }
    const Rational tp = p_in.total();
    const Rational tq = q_in.total();
    const bool zp = sgn(tp) == 0;
    const bool zq = sgn(tq) == 0;
    if (zp != zq || std::abs(Rational(tp - tq).get_d()) > 1e-10) {
        throw Error(ErrorCode::WeightMismatch, "P and Q differ in total weight");
    }

    const RationalMatrix ps = strip_zero_rows(p_in);
    const RationalMatrix qs = strip_zero_rows(q_in);
    const std::size_t d = std::max(ps.rows(), qs.rows());
    if (d > kOracleMaxDim) {
        throw Error(ErrorCode::DimensionTooLarge,
                    "oracle supports at most " + std::to_string(kOracleMaxDim) + " nonzero rows");
    }
    OracleCertificate cert;
    cert.d = d;
    cert.p = pad_rows(ps, d);
    cert.q = pad_rows(qs, d);
    if (zp) {
        cert.feasible = true;
        return cert;
    }

    const Program prog = build_program(cert.p, cert.q);
    const LpResult lp = phase_one(prog.a, prog.b);
    cert.pivots = lp.pivots;
    cert.feasible = lp.feasible;
    if (lp.feasible) {
        for (std::size_t v = 0; v < prog.vars.size(); ++v) {
            if (sgn(lp.solution[v]) == 0) continue;
            const Variable& var = prog.vars[v];
            cert.witness.push_back({var.perm, var.y, var.y_out, lp.solution[v]});
        }
    } else {
        cert.farkas = lp.farkas;
    }
    return cert;
}

bool verify_certificate(const OracleCertificate& cert) {
    const RationalMatrix& p = cert.p;
    const RationalMatrix& q = cert.q;
    if (p.rows() != cert.d || q.rows() != cert.d) return false;
    const std::size_t n = p.cols();
    const std::size_t n_out = q.cols();
    if (sgn(p.total()) == 0) return cert.feasible && sgn(q.total()) == 0;

    if (cert.feasible) {
        RationalMatrix rebuilt(cert.d, n_out);
        std::vector<Rational> row_sums(n);
        for (const WitnessTerm& w : cert.witness) {
            if (sgn(w.weight) < 0 || w.y >= n || w.y_out >= n_out) return false;
            if (w.perm.size() != cert.d) return false;
            std::vector<bool> seen(cert.d, false);
            for (std::size_t v : w.perm) {
                if (v >= cert.d || seen[v]) return false;
                seen[v] = true;
            }
            row_sums[w.y] += w.weight;
            for (std::size_t x = 0; x < cert.d; ++x) rebuilt(x, w.y_out) += w.weight * p(w.perm[x], w.y);
        }
        for (std::size_t y = 0; y < n; ++y) {
            if (row_sums[y] != 1) return false;
        }
        return rebuilt == q;
    }
    const Program prog = build_program(p, q);
    return verify_farkas(prog.a, prog.b, cert.farkas);
}

CondChannel witness_channel(const OracleCertificate& cert) {
    if (!cert.feasible) throw Error(ErrorCode::InvalidArgument, "certificate is infeasible");
    const auto n = static_cast<Eigen::Index>(cert.p.cols());
    const auto n_out = static_cast<Eigen::Index>(cert.q.cols());
    std::map<Permutation, Matrix> by_perm;
    for (const WitnessTerm& w : cert.witness) {
        auto it = by_perm.try_emplace(w.perm, Matrix::Zero(n, n_out)).first;
        it->second(static_cast<Eigen::Index>(w.y), static_cast<Eigen::Index>(w.y_out)) += w.weight.get_d();
    }
    std::vector<ChannelBranch> branches;
    for (auto& [perm, dmat] : by_perm) {
        branches.push_back({DoublyStochastic::mixture(cert.d, {PermTerm{1.0, perm}}), std::move(dmat)});
    }
    return CondChannel(std::move(branches));
}

}  // namespace condent
