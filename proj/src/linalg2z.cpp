#include "hfs/linalg2z.hpp"

#include <algorithm>
#include <cstdlib>

namespace hfs {

namespace {

size_t col_count(const F2Mat& rows) {
    return rows.empty() ? 0 : rows[0].size();
}

void check_rect(const F2Mat& rows) {
    for (const F2Vec& r : rows)
        if (r.size() != col_count(rows)) throw InternalError("ragged F2 matrix");
}

} // namespace

std::vector<size_t> f2_rref(F2Mat& rows) {
    check_rect(rows);
    size_t n = col_count(rows);
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < n && r < rows.size(); ++c) {
        size_t sel = r;
        while (sel < rows.size() && !rows[sel][c]) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i != r && rows[i][c])
                for (size_t j = c; j < n; ++j) rows[i][j] ^= rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int f2_rank(F2Mat rows) {
    return (int)f2_rref(rows).size();
}

std::optional<F2Vec> f2_solve(const F2Mat& a, const F2Vec& b) {
    check_rect(a);
    if (a.size() != b.size()) throw InternalError("f2_solve: shape mismatch");
    size_t n = col_count(a);
    F2Mat aug = a;
    for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    std::vector<size_t> pivots = f2_rref(aug);
    F2Vec x(n, 0);
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == n) return std::nullopt; // pivot in the rhs column
        x[pivots[r]] = aug[r][n];
    }
    return x;
}

F2Mat f2_inverse(const F2Mat& a) {
    check_rect(a);
    size_t n = a.size();
    if (col_count(a) != n) throw InternalError("f2_inverse: not square");
    F2Mat aug = a;
    for (size_t i = 0; i < n; ++i) {
        aug[i].resize(2 * n, 0);
        aug[i][n + i] = 1;
    }
    std::vector<size_t> pivots = f2_rref(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw InternalError("f2_inverse: singular matrix");
    for (size_t i = 0; i < n; ++i)
        if (pivots[i] != i) throw InternalError("f2_inverse: singular matrix");
    F2Mat inv(n, F2Vec(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

std::vector<size_t> f2_max_independent(const F2Mat& vectors) {
    check_rect(vectors);
    std::vector<size_t> kept;
    F2Mat basis;
    for (size_t i = 0; i < vectors.size(); ++i) {
        F2Mat trial = basis;
        trial.push_back(vectors[i]);
        if (f2_rank(trial) == (int)trial.size()) {
            kept.push_back(i);
            basis.push_back(vectors[i]);
        }
    }
    return kept;
}

bool f2_in_span(const F2Mat& basis, const F2Vec& v) {
    F2Mat trial = basis;
    trial.push_back(v);
    return f2_rank(basis) == f2_rank(std::move(trial));
}

ZMat z_identity(size_t n) {
    ZMat id(n, ZVec(n, 0));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

ZMat z_mul(const ZMat& a, const ZMat& b) {
    size_t m = a.size();
    size_t k = b.size();
    size_t n = b.empty() ? 0 : b[0].size();
    ZMat c(m, ZVec(n, 0));
    for (size_t i = 0; i < m; ++i) {
        if (a[i].size() != k) throw InternalError("z_mul: shape mismatch");
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][t] * b[t][j];
        }
    }
    return c;
}

namespace {

void z_check_rect(const ZMat& rows) {
    size_t n = rows.empty() ? 0 : rows[0].size();
    for (const ZVec& r : rows)
        if (r.size() != n) throw InternalError("ragged Z matrix");
}

} // namespace

SnfResult z_snf(const ZMat& a) {
    z_check_rect(a);
    size_t m = a.size();
    size_t n = m ? a[0].size() : 0;
    SnfResult res{a, z_identity(m), z_identity(n), {}};
    ZMat& d = res.d;
    ZMat& u = res.u;
    ZMat& v = res.v;

    auto row_sub = [&](size_t dst, size_t src, int64_t q) {
        for (size_t j = 0; j < n; ++j) d[dst][j] -= q * d[src][j];
        for (size_t j = 0; j < m; ++j) u[dst][j] -= q * u[src][j];
    };
    auto col_sub = [&](size_t dst, size_t src, int64_t q) {
        for (size_t i = 0; i < m; ++i) d[i][dst] -= q * d[i][src];
        for (size_t i = 0; i < n; ++i) v[i][dst] -= q * v[i][src];
    };
    auto row_swap = [&](size_t i1, size_t i2) {
        std::swap(d[i1], d[i2]);
        std::swap(u[i1], u[i2]);
    };
    auto col_swap = [&](size_t j1, size_t j2) {
        for (size_t i = 0; i < m; ++i) std::swap(d[i][j1], d[i][j2]);
        for (size_t i = 0; i < n; ++i) std::swap(v[i][j1], v[i][j2]);
    };
    auto row_neg = [&](size_t i) {
        for (size_t j = 0; j < n; ++j) d[i][j] = -d[i][j];
        for (size_t j = 0; j < m; ++j) u[i][j] = -u[i][j];
    };

    size_t t = 0;
    while (t < m && t < n) {
        // pick the nonzero entry of smallest absolute value as pivot
        size_t pi = t, pj = t;
        int64_t best = 0;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                int64_t av = std::llabs(d[i][j]);
                if (av != 0 && (best == 0 || av < best)) {
                    best = av;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        row_swap(t, pi);
        col_swap(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (d[i][t] == 0) continue;
                int64_t q = d[i][t] / d[t][t];
                row_sub(i, t, q);
                if (d[i][t] != 0) { // remainder becomes the new, smaller pivot
                    row_swap(t, i);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (d[t][j] == 0) continue;
                int64_t q = d[t][j] / d[t][t];
                col_sub(j, t, q);
                if (d[t][j] != 0) {
                    col_swap(t, j);
                    clean = false;
                }
            }
        }
        if (d[t][t] < 0) row_neg(t);
        // enforce divisibility d[t][t] | d[i][j] for the trailing block
        bool redo = false;
        for (size_t i = t + 1; i < m && !redo; ++i)
            for (size_t j = t + 1; j < n && !redo; ++j)
                if (d[i][j] % d[t][t] != 0) {
                    row_sub(t, i, -1); // fold row i into row t, then re-eliminate
                    redo = true;
                }
        if (!redo) ++t;
    }
    for (size_t i = 0; i < std::min(m, n); ++i)
        if (d[i][i] != 0) res.invariants.push_back(d[i][i]);
    return res;
}

ZMat z_hnf_rows(ZMat a) {
    z_check_rect(a);
    size_t m = a.size();
    size_t n = m ? a[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < n && r < m; ++c) {
        // Euclid on the entries of column c among rows r..m-1
        for (;;) {
            size_t sel = m;
            int64_t best = 0;
            for (size_t i = r; i < m; ++i) {
                int64_t av = std::llabs(a[i][c]);
                if (av != 0 && (best == 0 || av < best)) {
                    best = av;
                    sel = i;
                }
            }
            if (sel == m) break;
            std::swap(a[r], a[sel]);
            bool others = false;
            for (size_t i = r + 1; i < m; ++i) {
                if (a[i][c] == 0) continue;
                int64_t q = a[i][c] / a[r][c];
                for (size_t j = 0; j < n; ++j) a[i][j] -= q * a[r][j];
                if (a[i][c] != 0) others = true;
            }
            if (!others) break;
        }
        if (a[r][c] == 0) continue;
        if (a[r][c] < 0)
            for (size_t j = 0; j < n; ++j) a[r][j] = -a[r][j];
        for (size_t i = 0; i < r; ++i) { // reduce entries above the pivot
            int64_t q = a[i][c] / a[r][c];
            if (a[i][c] % a[r][c] < 0) --q; // floor division
            if (q != 0)
                for (size_t j = 0; j < n; ++j) a[i][j] -= q * a[r][j];
        }
        ++r;
    }
    a.resize(r);
    return a;
}

ZMat z_kernel_rows(const ZMat& a) {
    z_check_rect(a);
    SnfResult s = z_snf(a);
    size_t m = a.size();
    size_t rank = s.invariants.size();
    ZMat ker;
    for (size_t i = rank; i < m; ++i) ker.push_back(s.u[i]);
    return z_hnf_rows(std::move(ker));
}

ZMat group_kernel(const ZMat& vectors, const ZVec& orders) {
    z_check_rect(vectors);
    size_t k = vectors.size();
    size_t r = orders.size();
    for (const ZVec& v : vectors)
        if (v.size() != r) throw InternalError("group_kernel: vector length != #orders");
    ZMat stacked = vectors;
    size_t extra = 0;
    for (size_t j = 0; j < r; ++j) {
        if (orders[j] == 0) continue;
        ZVec rel(r, 0);
        rel[j] = orders[j];
        stacked.push_back(std::move(rel));
        ++extra;
    }
    if (stacked.empty()) return z_hnf_rows(z_identity(k));
    ZMat ker = z_kernel_rows(stacked);
    ZMat proj;
    for (const ZVec& row : ker) proj.emplace_back(row.begin(), row.begin() + (long)k);
    (void)extra;
    return z_hnf_rows(std::move(proj));
}

} // namespace hfs
