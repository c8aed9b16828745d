#include "condent/simplex.hpp"

#include "condent/error.hpp"

namespace condent {

namespace {

constexpr std::size_t kDegenerateSwitch = 20;

}  // namespace

LpResult phase_one(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b) {
    const std::size_t m = b.size();
    if (a.size() != m) throw Error(ErrorCode::DimMismatch, "constraint matrix and rhs differ in rows");
    const std::size_t n = m == 0 ? 0 : a.front().size();
    for (const auto& row : a) {
        if (row.size() != n) throw Error(ErrorCode::DimMismatch, "ragged constraint matrix");
    }
    const std::size_t width = n + m;

    // Tableau rows [A' | I | b'] with rows sign-flipped so that b' >= 0.
    std::vector<int> sign(m, 1);
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width + 1));
    std::vector<Rational> cost(width + 1);
    for (std::size_t i = 0; i < m; ++i) {
        sign[i] = sgn(b[i]) < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) {
            t[i][j] = sign[i] < 0 ? Rational(-a[i][j]) : a[i][j];
            cost[j] -= t[i][j];
        }
        t[i][n + i] = 1;
        t[i][width] = sign[i] < 0 ? Rational(-b[i]) : b[i];
        cost[width] -= t[i][width];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    LpResult result;
    std::size_t degenerate_run = 0;
    bool bland = false;
    while (true) {
        std::size_t enter = width;
        for (std::size_t j = 0; j < width; ++j) {
            if (sgn(cost[j]) >= 0) continue;
            if (enter == width || (!bland && cost[j] < cost[enter])) enter = j;
            if (bland) break;
        }
        if (enter == width) break;

        std::size_t leave = m;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (sgn(t[i][enter]) <= 0) continue;
            Rational ratio = t[i][width] / t[i][enter];
            if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = std::move(ratio);
            }
        }
        if (leave == m) break;  // unbounded direction; cannot occur in phase one

        degenerate_run = sgn(best_ratio) == 0 ? degenerate_run + 1 : 0;
        if (degenerate_run >= kDegenerateSwitch) bland = true;

        std::vector<Rational>& prow = t[leave];
        const Rational pivot = prow[enter];
        std::vector<std::size_t> nonzero;
        for (std::size_t j = 0; j <= width; ++j) {
            if (sgn(prow[j]) != 0) {
                prow[j] /= pivot;
                nonzero.push_back(j);
            }
        }
        auto eliminate = [&](std::vector<Rational>& row) {
            if (sgn(row[enter]) == 0) return;
            const Rational f = row[enter];
            for (std::size_t j : nonzero) row[j] -= f * prow[j];
        };
        for (std::size_t i = 0; i < m; ++i) {
            if (i != leave) eliminate(t[i]);
        }
        eliminate(cost);
        basis[leave] = enter;
        ++result.pivots;
    }

    // cost[width] holds minus the optimal sum of artificials.
    result.feasible = sgn(cost[width]) == 0;
    if (result.feasible) {
        result.solution.assign(n, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < n) result.solution[basis[i]] = t[i][width];
        }
    } else {
        result.farkas.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            Rational y = 1 - cost[n + i];
            result.farkas[i] = sign[i] < 0 ? Rational(-y) : y;
        }
    }
    return result;
}

bool verify_farkas(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                   const std::vector<Rational>& y) {
    if (y.size() != b.size()) return false;
    Rational yb = 0;
    for (std::size_t i = 0; i < b.size(); ++i) yb += y[i] * b[i];
    if (sgn(yb) <= 0) return false;
    const std::size_t n = a.empty() ? 0 : a.front().size();
    for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += y[i] * a[i][j];
        if (sgn(s) > 0) return false;
    }
    return true;
}

}  // namespace condent
