#pragma once

#include <cstddef>
#include <cstdint>
#include <future>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "indtopo/complex.hpp"
#include "indtopo/errors.hpp"
#include "indtopo/graph.hpp"
#include "indtopo/snf.hpp"

namespace indtopo {

/// Reduced integral homology: Betti numbers and prime-power torsion per
/// degree. Only nonzero entries are stored, so equality is structural.
struct HomologySignature {
    std::map<int, std::uint64_t> betti;
    std::map<int, std::vector<std::uint64_t>> torsion;
    bool is_void = false;

    static HomologySignature sphere(int d, std::uint64_t multiplicity = 1) {
        HomologySignature s;
        if (multiplicity) s.betti[d] = multiplicity;
        return s;
    }

    bool is_zero() const { return betti.empty() && torsion.empty(); }
    bool torsion_free() const { return torsion.empty(); }

    std::uint64_t betti_at(int d) const {
        auto it = betti.find(d);
        return it == betti.end() ? 0 : it->second;
    }

    HomologySignature& operator+=(const HomologySignature& o) {
        for (const auto& [d, b] : o.betti) betti[d] += b;
        for (const auto& [d, t] : o.torsion) {
            auto& dst = torsion[d];
            dst.insert(dst.end(), t.begin(), t.end());
            std::sort(dst.begin(), dst.end());
        }
        is_void = is_void && o.is_void;
        return *this;
    }
    friend HomologySignature operator+(HomologySignature a, const HomologySignature& b) { return a += b; }

    HomologySignature scaled(std::uint64_t k) const {
        HomologySignature out;
        if (k == 0) return out;
        for (const auto& [d, b] : betti) out.betti[d] = b * k;
        for (const auto& [d, t] : torsion)
            for (std::uint64_t i = 0; i < k; ++i) out.torsion[d].insert(out.torsion[d].end(), t.begin(), t.end());
        for (auto& [d, t] : out.torsion) std::sort(t.begin(), t.end());
        return out;
    }

    friend bool operator==(const HomologySignature& a, const HomologySignature& b) {
        return a.betti == b.betti && a.torsion == b.torsion && a.is_void == b.is_void;
    }

    /// Compact form such as "{1:2, 3:1}" or "{1:1 T2:[2]}".
    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (const auto& [d, b] : betti) {
            s += (first ? "" : ", ") + std::to_string(d) + ":" + std::to_string(b);
            first = false;
        }
        for (const auto& [d, t] : torsion) {
            s += (first ? "" : ", ") + std::string("T") + std::to_string(d) + ":[";
            for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
            s += "]";
            first = false;
        }
        return s + (is_void ? " void}" : "}");
    }
};

/// Every degree entry moves up by k (k-fold suspension).
inline HomologySignature shift(const HomologySignature& sig, int k) {
    HomologySignature out;
    out.is_void = sig.is_void;
    for (const auto& [d, b] : sig.betti) out.betti[d + k] = b;
    for (const auto& [d, t] : sig.torsion) out.torsion[d + k] = t;
    return out;
}

/// (lowest degree with nonzero homology) - 1; +inf for the zero signature.
inline ExtInt homology_connectivity(const HomologySignature& sig) {
    std::optional<int> lowest;
    if (!sig.betti.empty()) lowest = sig.betti.begin()->first;
    if (!sig.torsion.empty() && (!lowest || sig.torsion.begin()->first < *lowest)) lowest = sig.torsion.begin()->first;
    if (!lowest) return ExtInt::infinity();
    return ExtInt(*lowest - 1);
}

inline nlohmann::json to_json(const HomologySignature& sig) {
    nlohmann::json j;
    j["betti"] = nlohmann::json::object();
    for (const auto& [d, b] : sig.betti) j["betti"][std::to_string(d)] = b;
    j["torsion"] = nlohmann::json::object();
    for (const auto& [d, t] : sig.torsion) j["torsion"][std::to_string(d)] = t;
    if (sig.is_void) j["void"] = true;
    return j;
}

inline HomologySignature signature_from_json(const nlohmann::json& j) {
    HomologySignature s;
    for (const auto& [d, b] : j.at("betti").items()) s.betti[std::stoi(d)] = b.get<std::uint64_t>();
    if (j.contains("torsion"))
        for (const auto& [d, t] : j["torsion"].items()) s.torsion[std::stoi(d)] = t.get<std::vector<std::uint64_t>>();
    s.is_void = j.value("void", false);
    return s;
}

/// Boundary map from d-faces to (d-1)-faces; d = 0 maps onto the empty face.
/// Sign of dropping position p is (-1)^p.
inline SparseMatrix boundary_matrix(const Complex& k, int d) {
    SparseMatrix m;
    m.rows = k.face_count(d - 1);
    m.cols = k.face_count(d);
    m.columns.resize(m.cols);
    std::vector<std::uint32_t> sub;
    for (std::size_t j = 0; j < m.cols; ++j) {
        if (d == 0) {
            m.columns[j].emplace_back(0, 1);
            continue;
        }
        auto f = k.face(d, j);
        auto& col = m.columns[j];
        for (std::size_t p = 0; p < f.size(); ++p) {
            sub.assign(f.begin(), f.end());
            sub.erase(sub.begin() + static_cast<long>(p));
            auto row = k.find(d - 1, sub);
            if (!row) throw Error(ErrorKind::InvalidArgument, "complex is not downward closed");
            col.emplace_back(static_cast<std::uint32_t>(*row), (p % 2) ? -1 : 1);
        }
        std::sort(col.begin(), col.end());
    }
    return m;
}

/// Throws unless boundary(d) ∘ boundary(d+1) vanishes.
inline void assert_boundary_square_zero(const SparseMatrix& lower, const SparseMatrix& upper) {
    std::map<std::uint32_t, std::int64_t> acc;
    for (const auto& col : upper.columns) {
        acc.clear();
        for (const auto& [mid, v] : col)
            for (const auto& [r, w] : lower.columns[mid]) acc[r] += v * w;
        for (const auto& [r, s] : acc)
            if (s != 0) throw Error(ErrorKind::InvalidArgument, "boundary of boundary is nonzero");
    }
}

struct HomologyOptions {
    Budget budget{};
    bool check_boundary = true;
    /// Run the per-degree Smith forms concurrently above this many faces.
    std::size_t parallel_threshold = 200'000;
};

/// Exact reduced integral homology of k via Smith normal form of the
/// augmented boundary maps.
inline HomologySignature reduced_homology(const Complex& k, const HomologyOptions& opt = {}) {
    HomologySignature sig;
    if (k.is_void()) {
        sig.is_void = true;
        return sig;
    }
    const int top = k.dimension();
    if (top < 0) {
        sig.betti[-1] = 1;
        return sig;
    }
    std::size_t entries = 0;
    for (int d = 0; d <= top; ++d) entries += k.face_count(d) * static_cast<std::size_t>(d + 1);
    if (entries > opt.budget.max_matrix_entries)
        throw Error(ErrorKind::MatrixBudgetExceeded,
                    std::to_string(entries) + " boundary entries exceed budget " +
                        std::to_string(opt.budget.max_matrix_entries));

    std::vector<SparseMatrix> boundary(static_cast<std::size_t>(top + 1));
    for (int d = 0; d <= top; ++d) boundary[static_cast<std::size_t>(d)] = boundary_matrix(k, d);
    if (opt.check_boundary)
        for (int d = 1; d <= top; ++d)
            assert_boundary_square_zero(boundary[static_cast<std::size_t>(d - 1)], boundary[static_cast<std::size_t>(d)]);

    std::vector<SmithResult> snf(boundary.size());
    if (k.total_faces() > opt.parallel_threshold) {
        std::vector<std::future<SmithResult>> jobs;
        for (const auto& b : boundary) jobs.push_back(std::async(std::launch::async, [&b] { return smith_form(b); }));
        for (std::size_t d = 0; d < jobs.size(); ++d) snf[d] = jobs[d].get();
    } else {
        for (std::size_t d = 0; d < boundary.size(); ++d) snf[d] = smith_form(boundary[d]);
    }

    // b~_d = f_d - rank ∂_d - rank ∂_{d+1}, with ∂_0 the augmentation.
    auto rank = [&](int d) -> std::size_t {
        return (d < 0 || d > top) ? 0 : snf[static_cast<std::size_t>(d)].rank;
    };
    for (int d = -1; d <= top; ++d) {
        auto b = static_cast<std::int64_t>(k.face_count(d)) - static_cast<std::int64_t>(rank(d)) -
                 static_cast<std::int64_t>(rank(d + 1));
        if (b < 0) throw Error(ErrorKind::InvalidArgument, "negative Betti number");
        if (b > 0) sig.betti[d] = static_cast<std::uint64_t>(b);
        if (d + 1 <= top)
            for (const auto& t : snf[static_cast<std::size_t>(d + 1)].torsion)
                for (auto q : prime_power_parts(t)) sig.torsion[d].push_back(q);
    }
    for (auto& [d, t] : sig.torsion) std::sort(t.begin(), t.end());
    return sig;
}

inline HomologySignature independence_signature(const Graph& g, const HomologyOptions& opt = {}) {
    return reduced_homology(independence_complex(g, opt.budget), opt);
}

/// Thread-safe memo of Ind-signatures keyed on graph structure (labels
/// do not affect homology).
class HomologyOracle {
public:
    explicit HomologyOracle(HomologyOptions opt = {}) : opt_(opt) {}

    HomologySignature signature(const Graph& g) {
        auto key = g.structure_key();
        {
            std::lock_guard lock(mu_);
            if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        }
        auto sig = independence_signature(g, opt_);
        std::lock_guard lock(mu_);
        cache_.emplace(std::move(key), sig);
        return sig;
    }

    const HomologyOptions& options() const { return opt_; }

private:
    HomologyOptions opt_;
    std::mutex mu_;
    std::unordered_map<std::string, HomologySignature> cache_;
};

}  // namespace indtopo
