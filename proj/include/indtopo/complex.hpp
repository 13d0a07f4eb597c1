#pragma once

#include <algorithm>
#include <bit>
#include <numeric>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "indtopo/errors.hpp"
#include "indtopo/graph.hpp"

namespace indtopo {

/// Desk-scale guardrails for the homology oracle.
struct Budget {
    std::size_t max_faces = 5'000'000;
    std::size_t max_matrix_entries = 50'000'000;

    /// Defaults overridden by INDTOPO_BUDGET_FACES / INDTOPO_BUDGET_MATRIX.
    static Budget from_env() {
        Budget b;
        if (const char* f = std::getenv("INDTOPO_BUDGET_FACES")) b.max_faces = std::strtoull(f, nullptr, 10);
        if (const char* m = std::getenv("INDTOPO_BUDGET_MATRIX"))
            b.max_matrix_entries = std::strtoull(m, nullptr, 10);
        return b;
    }
};

/// Simplicial complex stored as faces per dimension. A face of dimension d
/// is a sorted (d+1)-tuple of positions into vertex_labels; faces of one
/// dimension are stored flat and in lexicographic order. The empty face is
/// implicit unless the complex is void.
class Complex {
public:
    Complex() = default;

    Complex(std::vector<Label> labels, std::vector<std::vector<std::uint32_t>> faces_by_dim)
        : labels_(std::move(labels)), faces_(std::move(faces_by_dim)) {
        while (!faces_.empty() && faces_.back().empty()) faces_.pop_back();
    }

    static Complex void_complex() {
        Complex c;
        c.void_ = true;
        return c;
    }

    bool is_void() const { return void_; }
    const std::vector<Label>& vertex_labels() const { return labels_; }

    /// -1 for {∅}; -2 for the void complex.
    int dimension() const { return void_ ? -2 : static_cast<int>(faces_.size()) - 1; }

    std::size_t face_count(int d) const {
        if (d == -1) return void_ ? 0 : 1;
        if (d < 0 || d >= static_cast<int>(faces_.size())) return 0;
        return faces_[static_cast<std::size_t>(d)].size() / static_cast<std::size_t>(d + 1);
    }

    std::size_t total_faces() const {
        std::size_t t = void_ ? 0 : 1;
        for (int d = 0; d <= dimension(); ++d) t += face_count(d);
        return t;
    }

    /// (f_{-1}, f_0, f_1, ...).
    std::vector<std::size_t> f_vector() const {
        std::vector<std::size_t> f;
        for (int d = -1; d <= std::max(dimension(), -1); ++d) f.push_back(face_count(d));
        return f;
    }

    std::span<const std::uint32_t> face(int d, std::size_t i) const {
        auto w = static_cast<std::size_t>(d + 1);
        return {faces_[static_cast<std::size_t>(d)].data() + i * w, w};
    }

    std::optional<std::size_t> find(int d, std::span<const std::uint32_t> f) const {
        if (d < 0 || d > dimension()) return std::nullopt;
        const auto& flat = faces_[static_cast<std::size_t>(d)];
        auto w = static_cast<std::size_t>(d + 1);
        std::size_t lo = 0, hi = flat.size() / w;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            auto cmp = std::lexicographical_compare(flat.begin() + static_cast<long>(mid * w),
                                                    flat.begin() + static_cast<long>((mid + 1) * w), f.begin(),
                                                    f.end());
            if (cmp)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo < flat.size() / w && std::equal(f.begin(), f.end(), flat.begin() + static_cast<long>(lo * w)))
            return lo;
        return std::nullopt;
    }

    const std::vector<std::vector<std::uint32_t>>& raw_faces() const { return faces_; }

private:
    std::vector<Label> labels_;
    std::vector<std::vector<std::uint32_t>> faces_;
    bool void_ = false;
};

namespace detail {

struct FaceSink {
    std::vector<std::vector<std::uint32_t>> faces;
    std::size_t count = 1;  // the empty face
    std::size_t budget;

    void emit(const std::vector<std::uint32_t>& stack) {
        if (++count > budget)
            throw Error(ErrorKind::FaceBudgetExceeded,
                        "independence complex exceeds " + std::to_string(budget) + " faces");
        auto d = stack.size() - 1;
        if (faces.size() <= d) faces.resize(d + 1);
        faces[d].insert(faces[d].end(), stack.begin(), stack.end());
    }
};

// Depth-first enumeration in increasing vertex order visits sets in
// lexicographic order, so every dimension comes out sorted.
inline void enumerate_small(const std::vector<std::uint64_t>& closed, std::uint64_t candidates,
                            std::vector<std::uint32_t>& stack, FaceSink& sink) {
    while (candidates) {
        auto v = static_cast<std::uint32_t>(std::countr_zero(candidates));
        candidates &= candidates - 1;
        stack.push_back(v);
        sink.emit(stack);
        enumerate_small(closed, candidates & ~closed[v], stack, sink);
        stack.pop_back();
    }
}

inline void enumerate_large(const std::vector<Bitset>& closed, Bitset candidates, std::vector<std::uint32_t>& stack,
                            FaceSink& sink) {
    for (std::size_t v = candidates.first(); v < candidates.size(); v = candidates.first()) {
        candidates.reset(v);
        stack.push_back(static_cast<std::uint32_t>(v));
        sink.emit(stack);
        enumerate_large(closed, candidates - closed[v], stack, sink);
        stack.pop_back();
    }
}

}  // namespace detail

/// Ind(G): all independent sets of g. The empty graph gives {∅}.
inline Complex independence_complex(const Graph& g, const Budget& budget = {}) {
    detail::FaceSink sink{{}, 1, budget.max_faces};
    std::vector<std::uint32_t> stack;
    const std::size_t n = g.order();
    if (n <= 64) {
        std::vector<std::uint64_t> closed(n);
        for (std::size_t i = 0; i < n; ++i) closed[i] = closed_nbhd(g, i).word(0);
        std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
        detail::enumerate_small(closed, all, stack, sink);
    } else {
        std::vector<Bitset> closed;
        for (std::size_t i = 0; i < n; ++i) closed.push_back(closed_nbhd(g, i));
        detail::enumerate_large(closed, g.all(), stack, sink);
    }
    return Complex(g.labels(), std::move(sink.faces));
}

/// Downward closure of the given facets (vertex positions 0..n_vertices-1).
inline Complex complex_from_facets(std::size_t n_vertices, const std::vector<std::vector<std::uint32_t>>& facets) {
    std::vector<std::vector<std::vector<std::uint32_t>>> by_dim;
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        for (std::uint32_t mask = 1; mask < (1u << f.size()); ++mask) {
            std::vector<std::uint32_t> sub;
            for (std::size_t p = 0; p < f.size(); ++p)
                if (mask >> p & 1) sub.push_back(f[p]);
            if (by_dim.size() < sub.size()) by_dim.resize(sub.size());
            by_dim[sub.size() - 1].push_back(sub);
        }
    }
    std::vector<std::vector<std::uint32_t>> flat(by_dim.size());
    for (std::size_t d = 0; d < by_dim.size(); ++d) {
        std::sort(by_dim[d].begin(), by_dim[d].end());
        by_dim[d].erase(std::unique(by_dim[d].begin(), by_dim[d].end()), by_dim[d].end());
        for (const auto& f : by_dim[d]) flat[d].insert(flat[d].end(), f.begin(), f.end());
    }
    std::vector<Label> labels(n_vertices);
    std::iota(labels.begin(), labels.end(), Label{0});
    return Complex(std::move(labels), std::move(flat));
}

/// K1 * K2 on disjoint vertex sets; K2's labels are offset past K1's.
inline Complex simplicial_join(const Complex& k1, const Complex& k2, const Budget& budget = {}) {
    if (k1.is_void() || k2.is_void()) return Complex::void_complex();
    std::vector<Label> labels = k1.vertex_labels();
    Label offset = labels.empty() ? 0 : labels.back() + 1;
    for (Label l : k2.vertex_labels()) labels.push_back(l + offset);
    const auto shift = static_cast<std::uint32_t>(k1.vertex_labels().size());

    std::size_t total = 0;
    for (int a = -1; a <= k1.dimension(); ++a)
        for (int b = -1; b <= k2.dimension(); ++b) {
            total += k1.face_count(a) * k2.face_count(b);
            if (total > budget.max_faces)
                throw Error(ErrorKind::FaceBudgetExceeded,
                            "join exceeds " + std::to_string(budget.max_faces) + " faces");
        }

    std::vector<std::vector<std::uint32_t>> faces(
        static_cast<std::size_t>(std::max(0, k1.dimension() + k2.dimension() + 2)));
    std::vector<std::uint32_t> buf;
    for (int a = -1; a <= k1.dimension(); ++a)
        for (std::size_t i = 0; i < k1.face_count(a); ++i)
            for (int b = -1; b <= k2.dimension(); ++b) {
                if (a == -1 && b == -1) continue;
                for (std::size_t j = 0; j < k2.face_count(b); ++j) {
                    buf.clear();
                    if (a >= 0) {
                        auto s = k1.face(a, i);
                        buf.insert(buf.end(), s.begin(), s.end());
                    }
                    if (b >= 0)
                        for (auto x : k2.face(b, j)) buf.push_back(x + shift);
                    faces[buf.size() - 1].insert(faces[buf.size() - 1].end(), buf.begin(), buf.end());
                }
            }
    // Restore lexicographic order per dimension.
    for (std::size_t d = 0; d < faces.size(); ++d) {
        std::size_t w = d + 1, cnt = faces[d].size() / w;
        std::vector<std::size_t> idx(cnt);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        const auto& flat = faces[d];
        std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
            return std::lexicographical_compare(flat.begin() + static_cast<long>(x * w),
                                                flat.begin() + static_cast<long>((x + 1) * w),
                                                flat.begin() + static_cast<long>(y * w),
                                                flat.begin() + static_cast<long>((y + 1) * w));
        });
        std::vector<std::uint32_t> sorted;
        sorted.reserve(flat.size());
        for (auto x : idx) sorted.insert(sorted.end(), flat.begin() + static_cast<long>(x * w),
                                         flat.begin() + static_cast<long>((x + 1) * w));
        faces[d] = std::move(sorted);
    }
    return Complex(std::move(labels), std::move(faces));
}

/// One face per line as vertex labels, by dimension. The leading comment
/// carries the f-vector so {∅} and the void complex stay distinguishable.
inline std::string to_text(const Complex& k) {
    std::ostringstream os;
    os << "# f-vector (from dim -1):";
    for (auto f : k.f_vector()) os << ' ' << f;
    os << "\n";
    for (int d = 0; d <= k.dimension(); ++d)
        for (std::size_t i = 0; i < k.face_count(d); ++i) {
            auto f = k.face(d, i);
            for (std::size_t p = 0; p < f.size(); ++p)
                os << (p ? " " : "") << k.vertex_labels()[f[p]];
            os << "\n";
        }
    return os.str();
}

}  // namespace indtopo
