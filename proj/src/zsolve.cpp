#include "bloch/zsolve.hpp"

#include <set>
#include <tuple>

namespace bloch {

namespace {

struct ExtGcd {
    Int g, s, t;  // s*a + t*b = g
};

ExtGcd ext_gcd(Int a, Int b) {
    Int old_r = std::move(a), r = std::move(b);
    Int old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = std::move(r);
        r = std::move(tmp);
        tmp = old_s - q * s;
        old_s = std::move(s);
        s = std::move(tmp);
        tmp = old_t - q * t;
        old_t = std::move(t);
        t = std::move(tmp);
    }
    return {old_r, old_s, old_t};
}

// column-major sparse matrix with a row index for pivot selection
struct SparseCols {
    std::vector<SparseVec> cols;
    std::vector<std::set<int>> rows;

    SparseCols(int ncols, int nrows) : cols(ncols), rows(nrows) {}

    void set(int i, int j, Int v) {
        if (v != 0) {
            cols[j][i] = std::move(v);
            rows[i].insert(j);
        }
    }

    // col jdst += q * col jsrc
    void addmul(int jdst, int jsrc, const Int& q) {
        if (q == 0) return;
        SparseVec& dst = cols[jdst];
        for (const auto& [i, v] : cols[jsrc]) {
            auto it = dst.find(i);
            if (it == dst.end()) {
                dst[i] = q * v;
                rows[i].insert(jdst);
            } else {
                it->second += q * v;
                if (it->second == 0) {
                    dst.erase(it);
                    rows[i].erase(jdst);
                }
            }
        }
    }

    // (col j1, col j2) <- (s*c1 + t*c2, u*c1 + v*c2)
    void combine(int j1, int j2, const Int& s, const Int& t, const Int& u, const Int& v) {
        SparseVec n1, n2;
        std::set<int> keys;
        for (const auto& [i, w] : cols[j1]) keys.insert(i);
        for (const auto& [i, w] : cols[j2]) keys.insert(i);
        for (int i : keys) {
            Int a = 0, b = 0;
            if (auto it = cols[j1].find(i); it != cols[j1].end()) a = it->second;
            if (auto it = cols[j2].find(i); it != cols[j2].end()) b = it->second;
            Int x = s * a + t * b;
            Int y = u * a + v * b;
            if (x != 0) {
                n1[i] = std::move(x);
                rows[i].insert(j1);
            } else {
                rows[i].erase(j1);
            }
            if (y != 0) {
                n2[i] = std::move(y);
                rows[i].insert(j2);
            } else {
                rows[i].erase(j2);
            }
        }
        cols[j1] = std::move(n1);
        cols[j2] = std::move(n2);
    }
};

}  // namespace

std::optional<std::vector<Int>> solve_integer(const std::vector<SparseVec>& columns,
                                              const SparseVec& rhs, int nrows) {
    const int n = int(columns.size());
    SparseCols A(n, nrows);
    for (int j = 0; j < n; ++j)
        for (const auto& [i, v] : columns[j]) A.set(i, j, v);
    SparseCols U(n, n);  // column transformation: A_final = A_input * U
    for (int j = 0; j < n; ++j) U.set(j, j, 1);

    std::vector<char> used_col(n, 0), done_row(nrows, 0);
    std::vector<std::pair<int, int>> pivots;  // (row, col) in elimination order

    while (true) {
        // prefer |entry| == 1 pivots, break ties by Markowitz fill score
        bool have = false;
        std::tuple<int, long long, Int> best_score;
        int bi = -1, bj = -1;
        for (int i = 0; i < nrows; ++i) {
            if (done_row[i]) continue;
            for (int j : A.rows[i]) {
                if (used_col[j]) continue;
                const Int& v = A.cols[j].at(i);
                Int av = abs(v);
                std::tuple<int, long long, Int> score{
                    av == 1 ? 0 : 1,
                    (long long)(A.rows[i].size() - 1) * (long long)(A.cols[j].size() - 1), av};
                if (!have || score < best_score) {
                    have = true;
                    best_score = score;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (!have) break;
        const int i = bi, j = bj;
        if (abs(A.cols[j].at(i)) != 1) {
            // gcd-combine every other unused column hitting row i into column j
            std::vector<int> hits(A.rows[i].begin(), A.rows[i].end());
            for (int j2 : hits) {
                if (j2 == j || used_col[j2]) continue;
                Int a = A.cols[j].at(i), c = A.cols[j2].at(i);
                if (c % a == 0) {
                    Int q = -(c / a);
                    A.addmul(j2, j, q);
                    U.addmul(j2, j, q);
                } else {
                    auto [g, s, t] = ext_gcd(a, c);
                    A.combine(j, j2, s, t, -(c / g), a / g);
                    U.combine(j, j2, s, t, -(c / g), a / g);
                }
            }
        } else {
            // unit pivot: clear row i out of every other unused column
            const Int v = A.cols[j].at(i);
            std::vector<int> hits(A.rows[i].begin(), A.rows[i].end());
            for (int j2 : hits) {
                if (j2 == j || used_col[j2]) continue;
                Int q = -(A.cols[j2].at(i) / v);
                A.addmul(j2, j, q);
                U.addmul(j2, j, q);
            }
        }
        pivots.emplace_back(i, j);
        used_col[j] = 1;
        done_row[i] = 1;
    }

    // forward substitution along the elimination order; every column not yet
    // used at its pivot time has zeros in all earlier pivot rows, so each
    // pivot row determines its coordinate directly
    SparseVec bb = rhs;
    std::vector<std::pair<int, Int>> y;
    for (auto [i, j] : pivots) {
        Int r = 0;
        if (auto it = bb.find(i); it != bb.end()) r = it->second;
        const Int& p = A.cols[j].at(i);
        if (r % p != 0) return std::nullopt;
        Int q = r / p;
        if (q != 0) {
            for (const auto& [ii, v] : A.cols[j]) {
                auto it = bb.find(ii);
                if (it == bb.end())
                    bb[ii] = -q * v;
                else {
                    it->second -= q * v;
                    if (it->second == 0) bb.erase(it);
                }
            }
            y.emplace_back(j, std::move(q));
        }
    }
    if (!bb.empty()) return std::nullopt;

    std::vector<Int> x(n, Int(0));
    for (const auto& [j, q] : y)
        for (const auto& [k, u] : U.cols[j]) x[k] += q * u;
    return x;
}

}  // namespace bloch
