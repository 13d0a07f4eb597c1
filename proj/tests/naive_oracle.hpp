#pragma once

// Test-only homology oracle, independent of the library's SNF path:
// faces come from a plain subset filter and ranks from dense rational
// Gaussian elimination. It sees Betti numbers only (no torsion).

#include <gmpxx.h>

#include <map>
#include <vector>

#include "indtopo/graph.hpp"

namespace testutil {

/// All independent sets of g, as sorted position vectors, by brute force over subsets.
inline std::vector<std::vector<std::uint32_t>> naive_independent_sets(const indtopo::Graph& g) {
    std::vector<std::vector<std::uint32_t>> out;
    const std::size_t n = g.order();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<std::uint32_t> s;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            for (auto j : s)
                if (g.adjacent_at(i, j)) ok = false;
            s.push_back(static_cast<std::uint32_t>(i));
        }
        if (ok) out.push_back(s);
    }
    return out;
}

inline std::size_t rational_rank(std::vector<std::vector<mpq_class>> a) {
    std::size_t rank = 0;
    const std::size_t m = a.size(), n = m ? a[0].size() : 0;
    for (std::size_t c = 0; c < n && rank < m; ++c) {
        std::size_t p = rank;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = rank + 1; i < m; ++i) {
            if (a[i][c] == 0) continue;
            mpq_class f = a[i][c] / a[rank][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

/// Reduced rational Betti numbers of Ind(g), nonzero degrees only.
inline std::map<int, std::uint64_t> naive_reduced_betti(const indtopo::Graph& g) {
    auto sets = naive_independent_sets(g);
    std::map<int, std::vector<std::vector<std::uint32_t>>> by_dim;
    by_dim[-1].push_back({});
    for (auto& s : sets) by_dim[static_cast<int>(s.size()) - 1].push_back(s);
    for (auto& [d, v] : by_dim) std::sort(v.begin(), v.end());
    int top = by_dim.rbegin()->first;
    std::map<int, std::size_t> rank;
    for (int d = 0; d <= top; ++d) {
        const auto& rows = by_dim[d - 1];
        const auto& cols = by_dim[d];
        std::vector<std::vector<mpq_class>> a(rows.size(), std::vector<mpq_class>(cols.size(), 0));
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t p = 0; p < cols[j].size(); ++p) {
                auto sub = cols[j];
                sub.erase(sub.begin() + static_cast<long>(p));
                auto i = std::lower_bound(rows.begin(), rows.end(), sub) - rows.begin();
                a[static_cast<std::size_t>(i)][j] = (p % 2) ? -1 : 1;
            }
        rank[d] = rational_rank(a);
    }
    std::map<int, std::uint64_t> betti;
    for (int d = -1; d <= top; ++d) {
        auto b = static_cast<long>(by_dim[d].size()) - static_cast<long>(rank[d]) - static_cast<long>(rank[d + 1]);
        if (b) betti[d] = static_cast<std::uint64_t>(b);
    }
    return betti;
}

}  // namespace testutil
