#pragma once

// Exact Smith normal form of sparse integer matrices.
//
// Unit pivots (entries ±1) are eliminated first on a sparse column store;
// each such pivot contributes one invariant factor 1. Whatever is left has
// no unit entries and goes through a dense arbitrary-precision SNF.
// Elimination runs in checked 64-bit arithmetic and is replayed in GMP
// integers if any intermediate would overflow.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "indtopo/errors.hpp"

namespace indtopo {

/// Column-major sparse integer matrix; each column sorted by row.
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns;

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& c : columns) n += c.size();
        return n;
    }
};

struct SmithResult {
    std::size_t rank = 0;
    /// Invariant factors greater than one, ascending (each divides the next).
    std::vector<mpz_class> torsion;
    /// Size of the block handed to the dense stage.
    std::size_t dense_rows = 0;
    std::size_t dense_cols = 0;
};

namespace detail {

struct Overflow {};

inline std::int64_t checked_axpy(std::int64_t x, std::int64_t c, std::int64_t y) {
    // x - c*y
    std::int64_t prod, out;
    if (__builtin_mul_overflow(c, y, &prod) || __builtin_sub_overflow(x, prod, &out)) throw Overflow{};
    if (out == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return out;
}
inline mpz_class checked_axpy(const mpz_class& x, const mpz_class& c, const mpz_class& y) { return x - c * y; }

inline bool is_unit(std::int64_t v) { return v == 1 || v == -1; }
inline bool is_unit(const mpz_class& v) { return v == 1 || v == -1; }
inline bool is_zero(std::int64_t v) { return v == 0; }
inline bool is_zero(const mpz_class& v) { return v == 0; }

template <class Scalar>
class UnitPivotEliminator {
public:
    using Entry = std::pair<std::uint32_t, Scalar>;

    explicit UnitPivotEliminator(const SparseMatrix& m)
        : cols_(m.cols), row_cols_(m.rows), col_alive_(m.cols, 1), seen_(m.cols, 0) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            for (const auto& [r, v] : m.columns[j]) {
                cols_[j].emplace_back(r, Scalar(v));
                row_cols_[r].push_back(static_cast<std::uint32_t>(j));
            }
        }
    }

    void run() {
        std::vector<std::uint32_t> order(cols_.size());
        bool progress = true;
        while (progress) {
            progress = false;
            order.clear();
            for (std::size_t j = 0; j < cols_.size(); ++j)
                if (col_alive_[j]) order.push_back(static_cast<std::uint32_t>(j));
            std::stable_sort(order.begin(), order.end(),
                             [&](std::uint32_t a, std::uint32_t b) { return cols_[a].size() < cols_[b].size(); });
            for (auto j : order) {
                if (!col_alive_[j]) continue;
                if (cols_[j].empty()) {
                    col_alive_[j] = 0;
                    continue;
                }
                std::size_t best = cols_[j].size();
                for (std::size_t p = 0; p < cols_[j].size(); ++p)
                    if (is_unit(cols_[j][p].second) &&
                        (best == cols_[j].size() ||
                         row_cols_[cols_[j][p].first].size() < row_cols_[cols_[j][best].first].size()))
                        best = p;
                if (best == cols_[j].size()) continue;
                pivot(j, cols_[j][best].first, cols_[j][best].second);
                progress = true;
            }
        }
    }

    std::size_t rank() const { return rank_; }

    /// Remaining nonzero block, compacted, as a dense GMP matrix.
    std::vector<std::vector<mpz_class>> residual() const {
        std::vector<std::uint32_t> live_cols;
        std::vector<std::int64_t> row_map(row_cols_.size(), -1);
        std::size_t nrows = 0;
        for (std::size_t j = 0; j < cols_.size(); ++j) {
            if (!col_alive_[j] || cols_[j].empty()) continue;
            live_cols.push_back(static_cast<std::uint32_t>(j));
            for (const auto& e : cols_[j])
                if (row_map[e.first] < 0) row_map[e.first] = static_cast<std::int64_t>(nrows++);
        }
        std::vector<std::vector<mpz_class>> dense(nrows, std::vector<mpz_class>(live_cols.size(), 0));
        for (std::size_t c = 0; c < live_cols.size(); ++c)
            for (const auto& e : cols_[live_cols[c]]) dense[static_cast<std::size_t>(row_map[e.first])][c] = to_mpz(e.second);
        return dense;
    }

private:
    static mpz_class to_mpz(std::int64_t v) {
        mpz_class z;
        mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
        return z;
    }
    static mpz_class to_mpz(const mpz_class& v) { return v; }

    static const Scalar* lookup(const std::vector<Entry>& col, std::uint32_t row) {
        auto it = std::lower_bound(col.begin(), col.end(), row,
                                   [](const Entry& e, std::uint32_t r) { return e.first < r; });
        return (it != col.end() && it->first == row) ? &it->second : nullptr;
    }

    // Clears row `prow` from every other column using column `pcol`, then
    // drops both; the pivot value is a unit so it is its own inverse.
    void pivot(std::uint32_t pcol, std::uint32_t prow, Scalar pval) {
        ++stamp_;
        seen_[pcol] = stamp_;
        const auto pivot_col = cols_[pcol];
        std::vector<std::uint32_t> targets;
        for (auto k : row_cols_[prow]) {
            if (seen_[k] == stamp_ || !col_alive_[k]) continue;
            seen_[k] = stamp_;
            if (lookup(cols_[k], prow)) targets.push_back(k);
        }
        for (auto k : targets) {
            Scalar factor = *lookup(cols_[k], prow) * pval;
            auto& col = cols_[k];
            std::vector<Entry> merged;
            merged.reserve(col.size() + pivot_col.size());
            std::size_t a = 0, b = 0;
            while (a < col.size() || b < pivot_col.size()) {
                if (b == pivot_col.size() || (a < col.size() && col[a].first < pivot_col[b].first)) {
                    merged.push_back(std::move(col[a++]));
                } else if (a == col.size() || pivot_col[b].first < col[a].first) {
                    Scalar v = checked_axpy(Scalar(0), factor, pivot_col[b].second);
                    row_cols_[pivot_col[b].first].push_back(k);
                    merged.emplace_back(pivot_col[b].first, std::move(v));
                    ++b;
                } else {
                    Scalar v = checked_axpy(col[a].second, factor, pivot_col[b].second);
                    if (!is_zero(v)) merged.emplace_back(col[a].first, std::move(v));
                    ++a;
                    ++b;
                }
            }
            col = std::move(merged);
        }
        col_alive_[pcol] = 0;
        cols_[pcol].clear();
        cols_[pcol].shrink_to_fit();
        row_cols_[prow].clear();
        ++rank_;
        if (stamp_ == std::numeric_limits<std::uint32_t>::max()) {
            std::fill(seen_.begin(), seen_.end(), 0);
            stamp_ = 0;
        }
    }

    std::vector<std::vector<Entry>> cols_;
    std::vector<std::vector<std::uint32_t>> row_cols_;
    std::vector<char> col_alive_;
    std::vector<std::uint32_t> seen_;
    std::uint32_t stamp_ = 0;
    std::size_t rank_ = 0;
};

}  // namespace detail

/// Diagonal of the Smith normal form of a dense integer matrix (absolute
/// values, nonzero entries only, each dividing the next).
inline std::vector<mpz_class> dense_smith_diagonal(std::vector<std::vector<mpz_class>> a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    std::vector<mpz_class> diag;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // Smallest nonzero |entry| of the trailing block becomes the pivot.
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m) break;
        std::swap(a[t], a[pi]);
        for (auto& row : a) std::swap(row[t], row[pj]);

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (auto& row : a) std::swap(row[t], row[j]);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Pivot must divide the whole trailing block; otherwise fold the
            // offending row into the pivot row and repeat.
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t c = t; c < n; ++c) a[t][c] += a[i][c];
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

inline SmithResult smith_form(const SparseMatrix& m) {
    SmithResult out;
    std::vector<std::vector<mpz_class>> rest;
    try {
        detail::UnitPivotEliminator<std::int64_t> elim(m);
        elim.run();
        out.rank = elim.rank();
        rest = elim.residual();
    } catch (const detail::Overflow&) {
        detail::UnitPivotEliminator<mpz_class> elim(m);
        elim.run();
        out.rank = elim.rank();
        rest = elim.residual();
    }
    out.dense_rows = rest.size();
    out.dense_cols = rest.empty() ? 0 : rest[0].size();
    for (auto& d : dense_smith_diagonal(std::move(rest))) {
        ++out.rank;
        if (d != 1) out.torsion.push_back(d);
    }
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

/// Prime-power decomposition of an invariant factor (trial division).
inline std::vector<std::uint64_t> prime_power_parts(const mpz_class& value) {
    std::vector<std::uint64_t> parts;
    mpz_class v = abs(value);
    for (mpz_class p = 2; p * p <= v; ++p) {
        if (v % p != 0) continue;
        mpz_class q = 1;
        while (v % p == 0) {
            v /= p;
            q *= p;
        }
        if (!q.fits_ulong_p()) throw Error(ErrorKind::InvalidArgument, "torsion order exceeds 64 bits");
        parts.push_back(q.get_ui());
    }
    if (v > 1) {
        if (!v.fits_ulong_p()) throw Error(ErrorKind::InvalidArgument, "torsion order exceeds 64 bits");
        parts.push_back(v.get_ui());
    }
    std::sort(parts.begin(), parts.end());
    return parts;
}

}  // namespace indtopo
