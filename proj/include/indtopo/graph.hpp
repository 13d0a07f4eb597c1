#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "indtopo/bitset.hpp"
#include "indtopo/errors.hpp"

namespace indtopo {

using Label = std::uint32_t;

struct Edge {
    Label u = 0;
    Label v = 0;

    Edge normalized() const { return u < v ? *this : Edge{v, u}; }
    friend bool operator==(const Edge& a, const Edge& b) {
        auto x = a.normalized(), y = b.normalized();
        return x.u == y.u && x.v == y.v;
    }
};

/// Finite simple graph on labeled vertices. Labels are kept strictly
/// increasing; the position of a label in that order is its vertex index.
class Graph {
public:
    Graph() = default;

    /// Edgeless graph on labels 0..n-1.
    explicit Graph(std::size_t n) : labels_(n), adj_(n, Bitset(n)) {
        std::iota(labels_.begin(), labels_.end(), Label{0});
    }

    /// Edgeless graph on the given labels (sorted and deduplicated).
    explicit Graph(std::vector<Label> labels) : labels_(std::move(labels)) {
        std::sort(labels_.begin(), labels_.end());
        if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
            throw Error(ErrorKind::InvalidArgument, "duplicate vertex label");
        adj_.assign(labels_.size(), Bitset(labels_.size()));
    }

    std::size_t order() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    std::size_t size() const {
        std::size_t twice = 0;
        for (const auto& row : adj_) twice += row.count();
        return twice / 2;
    }

    const std::vector<Label>& labels() const { return labels_; }
    Label label(std::size_t index) const { return labels_[index]; }

    std::optional<std::size_t> index_of(Label l) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
        if (it == labels_.end() || *it != l) return std::nullopt;
        return static_cast<std::size_t>(it - labels_.begin());
    }
    std::size_t require_index(Label l) const {
        auto i = index_of(l);
        if (!i) throw Error(ErrorKind::UnknownVertex, "vertex " + std::to_string(l) + " not in graph");
        return *i;
    }
    bool contains(Label l) const { return index_of(l).has_value(); }

    const Bitset& row(std::size_t index) const { return adj_[index]; }
    bool adjacent_at(std::size_t i, std::size_t j) const { return adj_[i].test(j); }
    bool has_edge(Label u, Label v) const {
        auto i = index_of(u), j = index_of(v);
        return i && j && adj_[*i].test(*j);
    }
    std::size_t degree_at(std::size_t i) const { return adj_[i].count(); }

    void connect_at(std::size_t i, std::size_t j) {
        if (i == j) throw Error(ErrorKind::InvalidArgument, "self-loop");
        adj_[i].set(j);
        adj_[j].set(i);
    }
    void disconnect_at(std::size_t i, std::size_t j) {
        adj_[i].reset(j);
        adj_[j].reset(i);
    }
    void connect(Label u, Label v) { connect_at(require_index(u), require_index(v)); }

    /// Edges as label pairs (u < v) in index-lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (std::size_t i = 0; i < order(); ++i)
            adj_[i].for_each([&](std::size_t j) {
                if (j > i) out.push_back({labels_[i], labels_[j]});
            });
        return out;
    }

    Bitset all() const { return Bitset::full(order()); }

    Bitset to_mask(const std::vector<Label>& ls) const {
        Bitset m(order());
        for (Label l : ls) m.set(require_index(l));
        return m;
    }
    std::vector<Label> to_labels(const Bitset& mask) const {
        std::vector<Label> out;
        mask.for_each([&](std::size_t i) { out.push_back(labels_[i]); });
        return out;
    }

    /// Subgraph induced by the vertex positions in `keep`; label order is preserved.
    Graph induced(const Bitset& keep) const {
        std::vector<std::size_t> idx = keep.indices();
        Graph h;
        h.labels_.reserve(idx.size());
        for (auto i : idx) h.labels_.push_back(labels_[i]);
        h.adj_.assign(idx.size(), Bitset(idx.size()));
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b)
                if (adj_[idx[a]].test(idx[b])) h.connect_at(a, b);
        return h;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.labels_ == b.labels_ && a.adj_ == b.adj_;
    }

    /// Label-free structural key: two graphs with the same key have
    /// isomorphic (index-identical) adjacency.
    std::string structure_key() const {
        std::string key = std::to_string(order()) + ":";
        for (const auto& r : adj_)
            for (std::size_t w = 0; w < r.word_count(); ++w) {
                auto x = r.word(w);
                key.append(reinterpret_cast<const char*>(&x), sizeof x);
            }
        return key;
    }

private:
    std::vector<Label> labels_;
    std::vector<Bitset> adj_;
};

// ---------------------------------------------------------------------------
// Families

inline Graph make_complete(long n) {
    Graph g(static_cast<std::size_t>(std::max(0L, n)));
    for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t j = i + 1; j < g.order(); ++j) g.connect_at(i, j);
    return g;
}

/// C_n^r: i ~ j iff cyclic distance <= r. Complete when n <= 2r+1, empty when n <= 0.
inline Graph make_cycle_power(long n, long r) {
    if (r < 1) throw Error(ErrorKind::InvalidArgument, "radius must be >= 1");
    if (n <= 0) return Graph();
    Graph g(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            long d = std::min(j - i, n - (j - i));
            if (d <= r) g.connect_at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    return g;
}

/// P_n^r: i ~ j iff |i-j| <= r. Empty when n <= 0.
inline Graph make_path_power(long n, long r) {
    if (r < 1) throw Error(ErrorKind::InvalidArgument, "radius must be >= 1");
    if (n <= 0) return Graph();
    Graph g(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n && j - i <= r; ++j)
            g.connect_at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return g;
}

inline Graph make_path(long n) { return make_path_power(n, 1); }
inline Graph make_cycle(long n) { return make_cycle_power(n, 1); }

/// P_m x C_k. Vertex (i, j) carries label i*k + j.
inline Graph make_cylinder(long m, long k) {
    if (m < 1 || k < 3) throw Error(ErrorKind::InvalidArgument, "cylinder needs m >= 1, k >= 3");
    Graph g(static_cast<std::size_t>(m * k));
    auto at = [k](long i, long j) { return static_cast<std::size_t>(i * k + ((j % k) + k) % k); };
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < k; ++j) {
            g.connect_at(at(i, j), at(i, j + 1));
            if (i + 1 < m) g.connect_at(at(i, j), at(i + 1, j));
        }
    return g;
}

enum class SubdivisionMode { AllEdgesInto3Parts, OneEdgeWith3NewVertices };

namespace detail {
inline Label next_free_label(const Graph& g) { return g.empty() ? 0 : g.labels().back() + 1; }

inline Graph rebuild(std::vector<Label> labels, const std::vector<Edge>& edges) {
    Graph h(std::move(labels));
    for (const auto& e : edges) h.connect(e.u, e.v);
    return h;
}
}  // namespace detail

/// AllEdgesInto3Parts gives G_3 (two new vertices per edge);
/// OneEdgeWith3NewVertices replaces `edge` by a path x-a-b-c-y.
/// New vertices get labels above the current maximum, in edge order.
inline Graph subdivide(const Graph& g, SubdivisionMode mode, std::optional<Edge> edge = std::nullopt) {
    std::vector<Label> labels = g.labels();
    std::vector<Edge> edges;
    Label next = detail::next_free_label(g);
    if (mode == SubdivisionMode::AllEdgesInto3Parts) {
        for (const auto& e : g.edges()) {
            Label a = next++, b = next++;
            labels.push_back(a);
            labels.push_back(b);
            edges.push_back({e.u, a});
            edges.push_back({a, b});
            edges.push_back({b, e.v});
        }
        return detail::rebuild(std::move(labels), edges);
    }
    if (!edge || !g.has_edge(edge->u, edge->v))
        throw Error(ErrorKind::MissingEdge, "subdivision edge not present");
    for (const auto& e : g.edges())
        if (!(e == *edge)) edges.push_back(e);
    Label a = next++, b = next++, c = next++;
    labels.insert(labels.end(), {a, b, c});
    edges.insert(edges.end(), {{edge->u, a}, {a, b}, {b, c}, {c, edge->v}});
    return detail::rebuild(std::move(labels), edges);
}

enum class Family { Path, Cycle, Complete, PathPower, CyclePower, CylinderPmCk, Subdiv3All, Subdiv3Edge };

struct FamilySpec {
    Family family = Family::Path;
    long n = 0;
    long r = 1;
    long m = 0;
    long k = 0;
    /// Base graph for the subdivision families; m, k name the edge for Subdiv3Edge.
    std::shared_ptr<const FamilySpec> base;
};

inline Graph make_family(const FamilySpec& spec) {
    switch (spec.family) {
    case Family::Path: return make_path(spec.n);
    case Family::Cycle: return make_cycle(spec.n);
    case Family::Complete: return make_complete(spec.n);
    case Family::PathPower: return make_path_power(spec.n, spec.r);
    case Family::CyclePower: return make_cycle_power(spec.n, spec.r);
    case Family::CylinderPmCk: return make_cylinder(spec.m, spec.k);
    case Family::Subdiv3All:
    case Family::Subdiv3Edge: {
        if (!spec.base) throw Error(ErrorKind::InvalidArgument, "subdivision family needs a base graph");
        Graph b = make_family(*spec.base);
        if (spec.family == Family::Subdiv3All) return subdivide(b, SubdivisionMode::AllEdgesInto3Parts);
        return subdivide(b, SubdivisionMode::OneEdgeWith3NewVertices,
                         Edge{static_cast<Label>(spec.m), static_cast<Label>(spec.k)});
    }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown family");
}

// ---------------------------------------------------------------------------
// Neighbourhoods (index level)

inline Bitset open_nbhd(const Graph& g, std::size_t i) { return g.row(i); }

inline Bitset closed_nbhd(const Graph& g, std::size_t i) {
    Bitset b = g.row(i);
    b.set(i);
    return b;
}

inline Bitset closed_nbhd(const Graph& g, std::size_t i, std::size_t j) {
    return closed_nbhd(g, i) | closed_nbhd(g, j);
}

enum class NbhdKind { Open, Closed };

/// N(v) or N[v] as sorted labels.
inline std::vector<Label> neighborhood(const Graph& g, Label v, NbhdKind kind) {
    std::size_t i = g.require_index(v);
    return g.to_labels(kind == NbhdKind::Open ? open_nbhd(g, i) : closed_nbhd(g, i));
}

/// N[e] as sorted labels; the open edge neighbourhood is not defined.
inline std::vector<Label> neighborhood(const Graph& g, Edge e, NbhdKind kind) {
    if (kind == NbhdKind::Open)
        throw Error(ErrorKind::OpenEdgeNeighborhoodUnsupported, "only N[e] is defined for edges");
    std::size_t i = g.require_index(e.u), j = g.require_index(e.v);
    if (!g.adjacent_at(i, j)) throw Error(ErrorKind::MissingEdge, "edge not in graph");
    return g.to_labels(closed_nbhd(g, i, j));
}

// ---------------------------------------------------------------------------
// Edits. All return new graphs.

inline Graph add_edge(const Graph& g, Edge e) {
    std::size_t i = g.require_index(e.u), j = g.require_index(e.v);
    if (i == j) throw Error(ErrorKind::InvalidArgument, "self-loop");
    if (g.adjacent_at(i, j))
        throw Error(ErrorKind::EdgeAlreadyPresent,
                    "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ") already present");
    Graph h = g;
    h.connect_at(i, j);
    return h;
}

inline Graph remove_edge(const Graph& g, Edge e) {
    std::size_t i = g.require_index(e.u), j = g.require_index(e.v);
    if (!g.adjacent_at(i, j))
        throw Error(ErrorKind::MissingEdge, "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not present");
    Graph h = g;
    h.disconnect_at(i, j);
    return h;
}

inline Graph remove_vertices(const Graph& g, const std::vector<Label>& vs) {
    return g.induced(g.all() - g.to_mask(vs));
}

inline Graph remove_mask(const Graph& g, const Bitset& mask) { return g.induced(g.all() - mask); }

inline Graph induced_subgraph(const Graph& g, const std::vector<Label>& vs) { return g.induced(g.to_mask(vs)); }

struct UnionResult {
    Graph graph;
    /// Label in the second operand -> label in the union.
    std::map<Label, Label> second_label_map;
};

/// G ⊔ H; H's labels are offset past G's largest label.
inline UnionResult disjoint_union(const Graph& g, const Graph& h) {
    Label offset = detail::next_free_label(g);
    UnionResult out;
    std::vector<Label> labels = g.labels();
    for (Label l : h.labels()) {
        labels.push_back(l + offset);
        out.second_label_map[l] = l + offset;
    }
    std::vector<Edge> edges = g.edges();
    for (const auto& e : h.edges()) edges.push_back({e.u + offset, e.v + offset});
    out.graph = detail::rebuild(std::move(labels), edges);
    return out;
}

/// G with every vertex relabeled through `map` (must be injective on V(G)).
inline Graph relabel(const Graph& g, const std::function<Label(Label)>& map) {
    std::vector<Label> labels;
    for (Label l : g.labels()) labels.push_back(map(l));
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) edges.push_back({map(e.u), map(e.v)});
    return detail::rebuild(std::move(labels), edges);
}

// ---------------------------------------------------------------------------
// Structure

inline bool is_clique(const Graph& g, const Bitset& vs) {
    bool ok = true;
    vs.for_each([&](std::size_t i) {
        if (ok && !(vs - closed_nbhd(g, i)).none()) ok = false;
    });
    return ok;
}

inline std::vector<Bitset> connected_components(const Graph& g) {
    std::vector<Bitset> comps;
    Bitset seen(g.order());
    for (std::size_t s = 0; s < g.order(); ++s) {
        if (seen.test(s)) continue;
        Bitset comp(g.order()), frontier(g.order());
        frontier.set(s);
        while (frontier.any()) {
            comp |= frontier;
            Bitset next(g.order());
            frontier.for_each([&](std::size_t i) { next |= g.row(i); });
            frontier = next - comp;
        }
        seen |= comp;
        comps.push_back(comp);
    }
    return comps;
}

/// True when g is a path graph on >= 1 vertices (connected, max degree 2, acyclic).
inline bool is_path_graph(const Graph& g) {
    if (g.empty() || connected_components(g).size() != 1) return false;
    if (g.size() + 1 != g.order()) return false;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (g.degree_at(i) > 2) return false;
    return true;
}

/// Perfect elimination order (labels) when g is chordal, nullopt otherwise.
/// Uses maximum cardinality search and then verifies the reversed order.
inline std::optional<std::vector<Label>> is_chordal(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<std::size_t> weight(n, 0), visit_order;
    Bitset numbered(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!numbered.test(i) && (best == n || weight[i] > weight[best])) best = i;
        numbered.set(best);
        visit_order.push_back(best);
        g.row(best).for_each([&](std::size_t j) {
            if (!numbered.test(j)) ++weight[j];
        });
    }
    std::vector<std::size_t> peo(visit_order.rbegin(), visit_order.rend());
    std::vector<std::size_t> pos(n);
    for (std::size_t k = 0; k < n; ++k) pos[peo[k]] = k;
    for (std::size_t k = 0; k < n; ++k) {
        Bitset later(n);
        g.row(peo[k]).for_each([&](std::size_t j) {
            if (pos[j] > k) later.set(j);
        });
        if (!is_clique(g, later)) return std::nullopt;
    }
    std::vector<Label> out;
    for (auto i : peo) out.push_back(g.label(i));
    return out;
}

namespace detail {
inline void dominate(const Graph& g, const std::vector<Bitset>& closed, Bitset covered, std::size_t chosen,
                     std::size_t& best) {
    if (chosen >= best) return;
    std::size_t u = (g.all() - covered).first();
    if (u == g.order()) {
        best = chosen;
        return;
    }
    // Lower bound: every remaining vertex needs a dominator covering at most max_gain new vertices.
    std::size_t uncovered = g.order() - covered.count(), max_gain = 0;
    for (std::size_t i = 0; i < g.order(); ++i) max_gain = std::max(max_gain, (closed[i] - covered).count());
    if (chosen + (uncovered + max_gain - 1) / max_gain >= best) return;
    closed[u].for_each([&](std::size_t w) { dominate(g, closed, covered | closed[w], chosen + 1, best); });
}
}  // namespace detail

/// Exact domination number by branch and bound: some vertex of N[u] must be
/// chosen for the first undominated u.
inline std::size_t domination_number(const Graph& g, std::size_t cap = 24) {
    if (g.order() > cap)
        throw Error(ErrorKind::TooLargeForExactSearch,
                    "domination search limited to " + std::to_string(cap) + " vertices");
    if (g.empty()) return 0;
    std::vector<Bitset> closed;
    for (std::size_t i = 0; i < g.order(); ++i) closed.push_back(closed_nbhd(g, i));
    std::size_t best = g.order();
    detail::dominate(g, closed, Bitset(g.order()), 0, best);
    return best;
}

// ---------------------------------------------------------------------------
// Text and JSON formats

namespace detail {
inline bool contiguous_labels(const Graph& g) {
    for (std::size_t i = 0; i < g.order(); ++i)
        if (g.label(i) != i) return false;
    return true;
}
}  // namespace detail

/// `n <count>`, an optional `v <labels...>` line when labels are not 0..n-1,
/// then one `e <u> <v>` line per edge.
inline std::string to_text(const Graph& g) {
    std::ostringstream os;
    os << "n " << g.order() << "\n";
    if (!detail::contiguous_labels(g)) {
        os << "v";
        for (Label l : g.labels()) os << ' ' << l;
        os << "\n";
    }
    for (const auto& e : g.edges()) os << "e " << e.u << ' ' << e.v << "\n";
    return os.str();
}

inline Graph graph_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<std::size_t> n;
    std::vector<Label> labels;
    std::vector<Edge> edges;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw LocatedError(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + msg, 0, lineno, 0);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "n") {
            long count;
            if (!(ls >> count) || count < 0) fail("bad vertex count");
            n = static_cast<std::size_t>(count);
        } else if (tag == "v") {
            long l;
            while (ls >> l) {
                if (l < 0) fail("negative label");
                labels.push_back(static_cast<Label>(l));
            }
        } else if (tag == "e") {
            long u, v;
            if (!(ls >> u >> v) || u < 0 || v < 0) fail("bad edge line");
            edges.push_back({static_cast<Label>(u), static_cast<Label>(v)});
        } else {
            fail("unknown record '" + tag + "'");
        }
        std::string extra;
        if (tag != "v" && (ls >> extra)) fail("trailing tokens");
    }
    if (!n) throw Error(ErrorKind::ParseError, "missing 'n' line");
    if (labels.empty()) {
        labels.resize(*n);
        std::iota(labels.begin(), labels.end(), Label{0});
    } else if (labels.size() != *n) {
        throw Error(ErrorKind::ParseError, "label count does not match n");
    }
    Graph g(std::move(labels));
    for (const auto& e : edges) {
        if (e.u == e.v) throw Error(ErrorKind::ParseError, "self-loop");
        g.connect(e.u, e.v);
    }
    return g;
}

inline nlohmann::json to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.order();
    if (!detail::contiguous_labels(g)) j["labels"] = g.labels();
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges()) j["edges"].push_back({e.u, e.v});
    return j;
}

inline Graph graph_from_json(const nlohmann::json& j) {
    try {
        std::size_t n = j.at("n").get<std::size_t>();
        std::vector<Label> labels;
        if (j.contains("labels")) {
            labels = j["labels"].get<std::vector<Label>>();
            if (labels.size() != n) throw Error(ErrorKind::ParseError, "label count does not match n");
        } else {
            labels.resize(n);
            std::iota(labels.begin(), labels.end(), Label{0});
        }
        Graph g(std::move(labels));
        for (const auto& e : j.at("edges")) g.connect(e.at(0).get<Label>(), e.at(1).get<Label>());
        return g;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::ParseError, ex.what());
    }
}

}  // namespace indtopo
