#pragma once

// Recursions for independence complexes of path and cycle powers, the
// oracle-backed base tables they bottom out in, and the psi invariant.

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "indtopo/errors.hpp"
#include "indtopo/graph.hpp"
#include "indtopo/homology.hpp"
#include "indtopo/homotopy.hpp"

namespace indtopo {

/// Map that only ever gains entries; lookups and inserts are serialized,
/// computation happens outside the lock and the first insert wins.
template <class K, class V>
class InsertOnceMemo {
public:
    std::optional<V> find(const K& k) const {
        std::lock_guard lock(mu_);
        auto it = map_.find(k);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }
    V insert(const K& k, V v) {
        std::lock_guard lock(mu_);
        return map_.emplace(k, std::move(v)).first->second;
    }
    std::size_t size() const {
        std::lock_guard lock(mu_);
        return map_.size();
    }

private:
    mutable std::mutex mu_;
    std::map<K, V> map_;
};

// ---------------------------------------------------------------------------
// Multiplicities k_i

inline std::uint64_t k_multiplicity(long i, long r) {
    if (r < 1 || i < 4 * r + 6 || i > 6 * r + 3)
        throw Error(ErrorKind::IndexOutOfRange,
                    "k index " + std::to_string(i) + " outside [4r+6, 6r+3] for r=" + std::to_string(r));
    long twice = i <= 5 * r + 4 ? (i - 4 * r - 5) * (i - 2 * r - 2) : (6 * r + 4 - i) * (i - 2 * r - 1);
    return static_cast<std::uint64_t>(twice / 2);
}

struct KTable {
    long r = 1;
    std::map<long, std::uint64_t> k;

    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto& [i, c] : k) s += c;
        return s;
    }
};

inline KTable k_table(long r) {
    if (r < 1) throw Error(ErrorKind::InvalidArgument, "radius must be >= 1");
    KTable t;
    t.r = r;
    for (long i = 4 * r + 6; i <= 6 * r + 3; ++i) t.k[i] = k_multiplicity(i, r);
    return t;
}

// ---------------------------------------------------------------------------
// Base tables

enum class Provenance { TrivialComplete, OracleComputed };

inline std::string to_string(Provenance p) {
    return p == Provenance::TrivialComplete ? "trivial-complete" : "oracle";
}

struct BaseEntry {
    HomologySignature signature;
    Provenance provenance = Provenance::OracleComputed;
};

struct BaseTable {
    Family family = Family::CyclePower;
    long r = 1;
    std::map<long, BaseEntry> entries;
};

/// Ind(K_n): n points, i.e. a wedge of n-1 zero-spheres; K_0 gives S^-1.
inline HomologySignature complete_graph_signature(long n) {
    if (n <= 0) return HomologySignature::sphere(-1);
    return HomologySignature::sphere(0, static_cast<std::uint64_t>(n - 1));
}

inline long complete_range_end(Family family, long r) {
    return family == Family::PathPower ? r + 1 : 2 * r + 1;
}

inline BaseEntry base_entry(Family family, long n, long r, HomologyOracle& oracle) {
    if (n <= complete_range_end(family, r)) return {complete_graph_signature(n), Provenance::TrivialComplete};
    Graph g = family == Family::PathPower ? make_path_power(n, r) : make_cycle_power(n, r);
    return {oracle.signature(g), Provenance::OracleComputed};
}

inline BaseTable build_base_table(Family family, long r, long n_max, HomologyOracle& oracle) {
    if (family != Family::PathPower && family != Family::CyclePower)
        throw Error(ErrorKind::InvalidArgument, "base tables exist for path and cycle powers only");
    if (r < 1) throw Error(ErrorKind::InvalidArgument, "radius must be >= 1");
    BaseTable t;
    t.family = family;
    t.r = r;
    for (long n = 0; n <= n_max; ++n) t.entries[n] = base_entry(family, n, r, oracle);
    return t;
}

// ---------------------------------------------------------------------------
// Predictions

/// Lower end of the path-power recursion. The default applies it from
/// n = r+2; the alternative also uses it at n = r+1.
enum class PathConvention { FromRPlus2, FromRPlus1 };

struct CyclePrediction {
    HomotopyExpr expr;
    std::vector<std::string> base_cases_used;
};

inline std::string family_instance(char family, long n, long r) {
    return std::string(1, family) + "_" + std::to_string(n) + "^" + std::to_string(r);
}

class RecursionEngine {
public:
    explicit RecursionEngine(HomologyOracle& oracle) : oracle_(&oracle) {}

    HomologyOracle& oracle() { return *oracle_; }

    /// One unexpanded level of the path recursion (or the closed form below it).
    HomotopyExpr path_power_step(long n, long r, PathConvention conv = PathConvention::FromRPlus2) const {
        check_radius(r);
        long start = conv == PathConvention::FromRPlus2 ? r + 2 : r + 1;
        if (n < start) return path_closed_form(n);
        std::vector<WedgeTerm> terms;
        for (long a = r + 2; a <= 2 * r + 1; ++a)
            terms.push_back({HomotopyExpr::suspend(1, HomotopyExpr::opaque('P', n - a, r)), 1});
        return HomotopyExpr::wedge(std::move(terms));
    }

    HomotopyExpr predict_path_power(long n, long r, PathConvention conv = PathConvention::FromRPlus2) {
        check_radius(r);
        long start = conv == PathConvention::FromRPlus2 ? r + 2 : r + 1;
        if (n < start) return normalize(path_closed_form(n));
        auto key = std::make_tuple(n, r, static_cast<int>(conv));
        if (auto hit = path_memo_.find(key)) return *hit;
        std::vector<WedgeTerm> terms;
        for (long a = r + 2; a <= 2 * r + 1; ++a)
            terms.push_back({HomotopyExpr::suspend(1, predict_path_power(n - a, r, conv)), 1});
        return path_memo_.insert(key, normalize(HomotopyExpr::wedge(std::move(terms))));
    }

    /// One unexpanded level of the cycle recursion; below 5r+4 the lifted
    /// base-table entry.
    HomotopyExpr cycle_power_step(long n, long r) {
        check_radius(r);
        check_cycle_order(n);
        if (n < 5 * r + 4) return lift_signature(cycle_base(n, r).signature);
        std::vector<WedgeTerm> terms;
        terms.push_back({HomotopyExpr::suspend(2, HomotopyExpr::opaque('C', n - 3 * r - 3, r)), 1});
        for (auto [i, k] : k_table(r).k)
            if (k) terms.push_back({HomotopyExpr::suspend(3, HomotopyExpr::opaque('P', n - i, r)), k});
        return HomotopyExpr::wedge(std::move(terms));
    }

    CyclePrediction predict_cycle_power(long n, long r) {
        check_radius(r);
        check_cycle_order(n);
        auto key = std::make_pair(n, r);
        if (auto hit = cycle_memo_.find(key)) return *hit;
        CyclePrediction out;
        if (n < 5 * r + 4) {
            const auto& entry = cycle_base(n, r);
            out.expr = lift_signature(entry.signature);
            out.base_cases_used.push_back(family_instance('C', n, r));
        } else {
            auto inner = predict_cycle_power(n - 3 * r - 3, r);
            std::vector<WedgeTerm> terms;
            terms.push_back({HomotopyExpr::suspend(2, inner.expr), 1});
            for (auto [i, k] : k_table(r).k)
                if (k) terms.push_back({HomotopyExpr::suspend(3, predict_path_power(n - i, r)), k});
            out.expr = normalize(HomotopyExpr::wedge(std::move(terms)));
            out.base_cases_used = std::move(inner.base_cases_used);
        }
        return cycle_memo_.insert(key, std::move(out));
    }

    /// Replaces every opaque leaf by its full prediction and normalizes.
    HomotopyExpr expand(const HomotopyExpr& e) { return normalize(substitute(e)); }

    BaseEntry cycle_base(long n, long r) {
        auto key = std::make_pair(n, r);
        if (auto hit = base_memo_.find(key)) return *hit;
        return base_memo_.insert(key, base_entry(Family::CyclePower, n, r, *oracle_));
    }

private:
    static void check_radius(long r) {
        if (r < 1) throw Error(ErrorKind::InvalidArgument, "radius must be >= 1");
    }
    static void check_cycle_order(long n) {
        if (n < 3) throw Error(ErrorKind::InvalidArgument, "cycle powers need n >= 3");
    }

    // Negative orders denote the empty graph.
    static HomotopyExpr path_closed_form(long n) {
        if (n <= 0) return HomotopyExpr::sphere(-1);
        return wedge_pow(HomotopyExpr::sphere(0), static_cast<std::uint64_t>(n - 1));
    }

    HomotopyExpr substitute(const HomotopyExpr& e) {
        return std::visit(
            [&](const auto& node) -> HomotopyExpr {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Opaque>) {
                    if (node.family == 'P') return predict_path_power(node.n, node.r);
                    return predict_cycle_power(node.n, node.r).expr;
                } else if constexpr (std::is_same_v<T, Suspension>) {
                    return HomotopyExpr::suspend(node.power, substitute(*node.inner));
                } else if constexpr (std::is_same_v<T, Wedge>) {
                    std::vector<WedgeTerm> terms;
                    for (const auto& t : node.terms) terms.push_back({substitute(t.expr), t.multiplicity});
                    return HomotopyExpr::wedge(std::move(terms));
                } else {
                    return e;
                }
            },
            e.node());
    }

    HomologyOracle* oracle_;
    InsertOnceMemo<std::tuple<long, long, int>, HomotopyExpr> path_memo_;
    InsertOnceMemo<std::pair<long, long>, CyclePrediction> cycle_memo_;
    InsertOnceMemo<std::pair<long, long>, BaseEntry> base_memo_;
};

// ---------------------------------------------------------------------------
// psi(G) = 0 for G empty, +inf for G nonempty edgeless, else
//   max over edges e of min(psi(G - e), psi(G \ N[e]) + 1).

namespace detail {

class PsiSolver {
public:
    static constexpr int kInf = 1 << 20;

    explicit PsiSolver(const Graph& g) : n_(g.order()) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (g.adjacent_at(i, j)) ends_.emplace_back(i, j);
        incident_.assign(n_, 0);
        for (std::size_t e = 0; e < ends_.size(); ++e) {
            incident_[ends_[e].first] |= bit(e);
            incident_[ends_[e].second] |= bit(e);
        }
    }

    int solve_root() {
        std::uint32_t vmask = n_ == 32 ? ~0u : ((1u << n_) - 1);
        EdgeMask emask = 0;
        for (std::size_t e = 0; e < ends_.size(); ++e) emask |= bit(e);
        // Null-window probes psi >= 1, 2, ...; bounds carry over in the memo.
        // A finite value never exceeds n/2, since each +1 removes two vertices.
        int g = 0;
        while (g <= static_cast<int>(n_ / 2)) {
            int r = solve(vmask, emask, g, g + 1);
            if (r <= g) return g;
            g = std::max(g + 1, r);
        }
        return kInf;
    }

private:
    using EdgeMask = unsigned __int128;
    struct Bounds {
        int lo = -1;
        int hi = kInf;
    };
    struct KeyHash {
        std::size_t operator()(const std::pair<std::uint32_t, EdgeMask>& k) const {
            auto lo = static_cast<std::uint64_t>(k.second), hi = static_cast<std::uint64_t>(k.second >> 64);
            std::uint64_t h = k.first * 0x9E3779B97F4A7C15ull;
            h ^= lo + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
            h ^= hi + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
            return static_cast<std::size_t>(h);
        }
    };

    static EdgeMask bit(std::size_t e) { return EdgeMask{1} << e; }

    // Fail-hard alpha-beta: a result <= alpha bounds the value above, a
    // result >= beta bounds it below, anything between is exact.
    template <class F>
    static void for_each_edge(EdgeMask m, F&& f) {
        for (auto lo = static_cast<std::uint64_t>(m); lo; lo &= lo - 1) f(static_cast<std::size_t>(std::countr_zero(lo)));
        for (auto hi = static_cast<std::uint64_t>(m >> 64); hi; hi &= hi - 1)
            f(64 + static_cast<std::size_t>(std::countr_zero(hi)));
    }

    int solve(std::uint32_t vmask, EdgeMask emask, int alpha, int beta) {
        if (vmask == 0) return 0;
        if (emask == 0) return kInf;
        for (std::uint32_t m = vmask; m; m &= m - 1)
            if (!(emask & incident_[static_cast<std::size_t>(std::countr_zero(m))])) return kInf;

        auto key = std::make_pair(vmask, emask);
        {
            const Bounds& b0 = memo_[key];
            if (b0.lo == b0.hi) return b0.lo;
            if (b0.lo >= beta) return b0.lo;
            if (b0.hi <= alpha) return b0.hi;
        }

        std::uint32_t adj[32] = {};
        for_each_edge(emask, [&](std::size_t e) {
            adj[ends_[e].first] |= 1u << ends_[e].second;
            adj[ends_[e].second] |= 1u << ends_[e].first;
        });

        // B_e = psi(G \ N[e]) + 1, resolved only as far as the window needs.
        struct Option {
            std::size_t edge;
            int bound;
        };
        std::vector<Option> opts;
        for_each_edge(emask, [&](std::size_t e) {
            auto [u, v] = ends_[e];
            std::uint32_t removed = (adj[u] | adj[v] | (1u << u) | (1u << v)) & vmask;
            EdgeMask erest = emask;
            for (std::uint32_t m = removed; m; m &= m - 1)
                erest &= ~incident_[static_cast<std::size_t>(std::countr_zero(m))];
            int s = solve(vmask & ~removed, erest, alpha - 1, beta - 1);
            int b = s >= kInf ? kInf : s + 1;
            if (b > alpha) opts.push_back({e, std::min(b, beta)});
        });
        std::stable_sort(opts.begin(), opts.end(), [](const Option& a, const Option& b) { return a.bound > b.bound; });

        int best = -1;
        for (const auto& o : opts) {
            int floor_ = std::max(alpha, best);
            if (o.bound <= floor_) break;
            int a = solve(vmask, emask & ~bit(o.edge), floor_, o.bound);
            int v;
            if (a >= o.bound) v = o.bound;
            else if (a > floor_) v = a;
            else continue;
            best = std::max(best, v);
            if (best >= beta) break;
        }

        Bounds& b = memo_[key];
        if (best >= beta) b.lo = std::max(b.lo, best);
        else if (best > alpha) b.lo = b.hi = best;
        else b.hi = std::min(b.hi, alpha);
        return best > alpha ? best : alpha;
    }

    std::size_t n_;
    std::vector<std::pair<std::size_t, std::size_t>> ends_;
    std::vector<EdgeMask> incident_;
    std::unordered_map<std::pair<std::uint32_t, EdgeMask>, Bounds, KeyHash> memo_;
};

}  // namespace detail

inline ExtInt psi(const Graph& g, std::size_t cap = 12) {
    if (g.order() > cap || g.order() > 32 || g.size() > 128)
        throw Error(ErrorKind::TooLargeForExactSearch,
                    "psi search limited to " + std::to_string(std::min<std::size_t>(cap, 32)) + " vertices, got " +
                        std::to_string(g.order()));
    int v = detail::PsiSolver(g).solve_root();
    return v >= detail::PsiSolver::kInf ? ExtInt::infinity() : ExtInt(v);
}

}  // namespace indtopo
