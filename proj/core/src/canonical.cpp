#include "condent/core.hpp"

#include <algorithm>
#include <numeric>

namespace condent {

namespace {

using Column = std::vector<double>;

struct ColumnKey {
    Column sorted;  // entries in descending order
    double sum;
};

ColumnKey key_of(const Column& c) {
    ColumnKey k{c, 0.0};
    std::sort(k.sorted.begin(), k.sorted.end(), std::greater<>());
    for (double v : k.sorted) k.sum += v;
    return k;
}

// Descending order: larger key first.
bool key_before(const ColumnKey& a, const ColumnKey& b) {
    if (a.sorted != b.sorted) return a.sorted > b.sorted;
    return a.sum > b.sum;
}

// Rows sorted descending given a fixed column order; returns row-major data.
std::vector<double> arrange(const std::vector<Column>& cols, const std::vector<std::size_t>& order) {
    const std::size_t d = cols.front().size();
    const std::size_t n = order.size();
    std::vector<std::vector<double>> rows(d, std::vector<double>(n));
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t k = 0; k < n; ++k) rows[x][k] = cols[order[k]][x];
    }
    std::sort(rows.begin(), rows.end(), std::greater<>());
    std::vector<double> flat;
    flat.reserve(d * n);
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return flat;
}

constexpr double kEnumerationCap = 40320.0;

std::vector<double> refine(const std::vector<Column>& cols, std::vector<std::size_t> order) {
    const std::size_t n = order.size();
    const std::size_t d = cols.front().size();
    std::vector<double> flat = arrange(cols, order);
    for (int iter = 0; iter < 32; ++iter) {
        // Re-sort columns by (key, column vector in the current row order).
        std::vector<Column> current(n, Column(d));
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t x = 0; x < d; ++x) current[k][x] = flat[x * n + k];
        }
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            const ColumnKey ka = key_of(current[a]);
            const ColumnKey kb = key_of(current[b]);
            if (key_before(ka, kb)) return true;
            if (key_before(kb, ka)) return false;
            return current[a] > current[b];
        });
        std::vector<double> next = arrange(current, perm);
        if (next == flat) break;
        flat = std::move(next);
    }
    return flat;
}

}  // namespace

JointDist canonicalize(const JointDist& j) {
    const JointDist c = cleaned(j);
    const Matrix& m = c.matrix();
    std::vector<Eigen::Index> keep_rows, keep_cols;
    for (Eigen::Index x = 0; x < m.rows(); ++x) {
        if ((m.row(x).array() != 0.0).any()) keep_rows.push_back(x);
    }
    for (Eigen::Index y = 0; y < m.cols(); ++y) {
        if ((m.col(y).array() != 0.0).any()) keep_cols.push_back(y);
    }
    if (keep_rows.empty() || keep_cols.empty()) return JointDist(Matrix(0, 0));

    std::vector<Column> cols;
    for (Eigen::Index y : keep_cols) {
        Column col;
        for (Eigen::Index x : keep_rows) col.push_back(m(x, y));
        cols.push_back(std::move(col));
    }
    const std::size_t n = cols.size();
    const std::size_t d = keep_rows.size();

    std::vector<ColumnKey> keys;
    for (const Column& col : cols) keys.push_back(key_of(col));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key_before(keys[a], keys[b]); });

    // Tie classes: runs of equal keys in the sorted order.
    std::vector<std::pair<std::size_t, std::size_t>> classes;
    double arrangements = 1.0;
    for (std::size_t s = 0; s < n;) {
        std::size_t e = s + 1;
        while (e < n && keys[order[e]].sorted == keys[order[s]].sorted &&
               keys[order[e]].sum == keys[order[s]].sum) {
            ++e;
        }
        if (e - s > 1) {
            classes.emplace_back(s, e);
            for (std::size_t k = 2; k <= e - s; ++k) arrangements *= static_cast<double>(k);
        }
        s = e;
    }

    std::vector<double> best;
    if (arrangements <= kEnumerationCap) {
        // Lexicographic maximum over all arrangements inside tie classes.
        for (auto& [s, e] : classes) std::sort(order.begin() + s, order.begin() + e);
        while (true) {
            std::vector<double> flat = arrange(cols, order);
            if (best.empty() || flat > best) best = std::move(flat);
            std::size_t c = 0;
            for (; c < classes.size(); ++c) {
                auto [s, e] = classes[c];
                if (std::next_permutation(order.begin() + s, order.begin() + e)) break;
            }
            if (c == classes.size()) break;
        }
    } else {
        best = refine(cols, order);
    }

    Matrix out(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t k = 0; k < n; ++k) out(x, k) = best[x * n + k];
    }
    return JointDist(std::move(out));
}

}  // namespace condent
