#include "condent/rational.hpp"

#include "condent/error.hpp"

#include <cmath>

namespace condent {

Rational rationalize(double x, long cap) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "cannot rationalize a non-finite value");
    if (cap < 1) throw Error(ErrorCode::InvalidArgument, "denominator cap must be positive");
    const Rational exact(x);
    if (exact.get_den() <= cap) return exact;

    mpz_class n = exact.get_num();
    mpz_class d = exact.get_den();
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    const mpz_class max_den = cap;
    while (true) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        const mpz_class q2 = q0 + a * q1;
        if (q2 > max_den) break;
        const mpz_class p2 = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const mpz_class r = n - a * d;
        n = d;
        d = r;
        if (d == 0) break;
    }
    mpz_class k;
    mpz_class num = max_den - q0;
    mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), q1.get_mpz_t());
    Rational semi(p0 + k * p1, q0 + k * q1);
    Rational conv(p1, q1);
    semi.canonicalize();
    conv.canonicalize();
    const Rational e_semi = abs(semi - exact);
    const Rational e_conv = abs(conv - exact);
    return e_conv <= e_semi ? conv : semi;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
        throw Error(ErrorCode::InvalidArgument, "malformed rational '" + s + "'");
    }
    q.canonicalize();
    return q;
}

Rational RationalMatrix::total() const {
    Rational s = 0;
    for (const Rational& v : data_) s += v;
    return s;
}

Matrix RationalMatrix::to_double() const {
    Matrix m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).get_d();
    }
    return m;
}

RationalMatrix rationalize(const JointDist& j, long cap) {
    RationalMatrix out(j.rows(), j.cols());
    for (std::size_t r = 0; r < j.rows(); ++r) {
        for (std::size_t c = 0; c < j.cols(); ++c) out(r, c) = rationalize(j(r, c), cap);
    }
    return out;
}

RationalMatrix tensor(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

}  // namespace condent
