#pragma once

// Certificate-checked reductions. Each check inspects the combinatorial
// hypothesis and, when it holds, returns a SplitClaim: an identity between
// sums of shifted Ind-signatures of derived graphs. verify_claim evaluates
// both sides with the homology oracle.

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "indtopo/errors.hpp"
#include "indtopo/graph.hpp"
#include "indtopo/homology.hpp"

namespace indtopo {

enum class ClaimKind {
    Fold,
    ClosedNbhd,
    IsolatingEdge,
    P4Split,
    GeneralTSplit,
    MayerVietoris,
    CliqueNbhd,
    Degree1,
    Degree2Rewire,
    Subdiv3
};

inline std::string to_string(ClaimKind k) {
    switch (k) {
    case ClaimKind::Fold: return "fold";
    case ClaimKind::ClosedNbhd: return "closed-nbhd";
    case ClaimKind::IsolatingEdge: return "isolating";
    case ClaimKind::P4Split: return "p4-split";
    case ClaimKind::GeneralTSplit: return "general-t-split";
    case ClaimKind::MayerVietoris: return "mayer-vietoris";
    case ClaimKind::CliqueNbhd: return "clique-nbhd";
    case ClaimKind::Degree1: return "degree1";
    case ClaimKind::Degree2Rewire: return "degree2";
    case ClaimKind::Subdiv3: return "subdiv3";
    }
    return "?";
}

/// shift(sig Ind(graph), shift)
struct ClaimTerm {
    Graph graph;
    int shift = 0;
    std::string role;
};

struct SplitClaim {
    ClaimKind kind = ClaimKind::Fold;
    nlohmann::json inputs;
    std::vector<ClaimTerm> left;
    std::vector<ClaimTerm> right;
    /// Caveats carried into the report (e.g. contractibility judged by homology).
    std::vector<std::string> notes;
};

struct ClaimReport {
    ClaimKind kind = ClaimKind::Fold;
    nlohmann::json inputs;
    HomologySignature left;
    HomologySignature right;
    bool pass = false;
    std::vector<std::string> notes;
};

inline nlohmann::json to_json(const ClaimReport& r) {
    return {{"kind", to_string(r.kind)}, {"inputs", r.inputs},     {"left", to_json(r.left)},
            {"right", to_json(r.right)}, {"verdict", r.pass ? "pass" : "fail"}, {"notes", r.notes}};
}

inline HomologySignature evaluate_side(const std::vector<ClaimTerm>& side, HomologyOracle& oracle) {
    HomologySignature s;
    for (const auto& t : side) s += shift(oracle.signature(t.graph), t.shift);
    return s;
}

inline ClaimReport verify_claim(const SplitClaim& c, HomologyOracle& oracle) {
    ClaimReport r;
    r.kind = c.kind;
    r.inputs = c.inputs;
    r.notes = c.notes;
    r.left = evaluate_side(c.left, oracle);
    r.right = evaluate_side(c.right, oracle);
    r.pass = r.left == r.right;
    return r;
}

namespace detail {

inline nlohmann::json edge_json(Edge e) { return nlohmann::json::array({e.u, e.v}); }

inline std::size_t require_edge(const Graph& g, Edge e, std::size_t* j = nullptr) {
    std::size_t i = g.require_index(e.u), k = g.require_index(e.v);
    if (!g.adjacent_at(i, k))
        throw Error(ErrorKind::MissingEdge, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not in graph");
    if (j) *j = k;
    return i;
}

inline Bitset edge_closed_nbhd(const Graph& g, Edge e) {
    std::size_t j = 0;
    std::size_t i = require_edge(g, e, &j);
    return closed_nbhd(g, i, j);
}

inline const char* kContractibleProxy = "contractibility judged by all-zero reduced homology";

}  // namespace detail

/// N(u) ⊆ N(v): Ind(G) ≃ Ind(G \ v).
inline std::optional<SplitClaim> check_fold(const Graph& g, Label u, Label v) {
    std::size_t i = g.require_index(u), j = g.require_index(v);
    if (i == j) return std::nullopt;
    if (!open_nbhd(g, i).is_subset_of(open_nbhd(g, j))) return std::nullopt;
    SplitClaim c;
    c.kind = ClaimKind::Fold;
    c.inputs = {{"u", u}, {"v", v}};
    c.left = {{g, 0, "G"}};
    c.right = {{remove_vertices(g, {v}), 0, "G\\v"}};
    return c;
}

/// N[u] ⊆ N[v]: Ind(G) ≃ Ind(G \ v) ∨ Σ Ind(G \ N[v]).
inline std::optional<SplitClaim> check_closed_nbhd(const Graph& g, Label u, Label v) {
    std::size_t i = g.require_index(u), j = g.require_index(v);
    if (i == j) return std::nullopt;
    if (!closed_nbhd(g, i).is_subset_of(closed_nbhd(g, j))) return std::nullopt;
    SplitClaim c;
    c.kind = ClaimKind::ClosedNbhd;
    c.inputs = {{"u", u}, {"v", v}};
    c.left = {{g, 0, "G"}};
    c.right = {{remove_vertices(g, {v}), 0, "G\\v"}, {remove_mask(g, closed_nbhd(g, j)), 1, "G\\N[v]"}};
    return c;
}

/// Smallest-label isolated vertex of G \ N[e], if any.
inline std::optional<Label> is_isolating(const Graph& g, Edge e) {
    Bitset ne = detail::edge_closed_nbhd(g, e);
    for (std::size_t w = 0; w < g.order(); ++w)
        if (!ne.test(w) && (g.row(w) - ne).none()) return g.label(w);
    return std::nullopt;
}

inline std::optional<SplitClaim> check_isolating(const Graph& g, Edge e) {
    auto w = is_isolating(g, e);
    if (!w) return std::nullopt;
    SplitClaim c;
    c.kind = ClaimKind::IsolatingEdge;
    c.inputs = {{"edge", detail::edge_json(e)}, {"certificate", *w}};
    c.left = {{g, 0, "G"}};
    c.right = {{remove_edge(g, e), 0, "G-e"}};
    return c;
}

/// N[x] ∪ N[y] ⊆ N[e] and G[{x,y} ∪ e] ≅ P_4:
/// Ind(G - e) ≃ Ind(G) ∨ Σ² Ind(G \ N[e]).
inline std::optional<SplitClaim> check_p4_split(const Graph& g, Edge e, Label x, Label y) {
    std::size_t j = 0;
    std::size_t i = detail::require_edge(g, e, &j);
    std::size_t ix = g.require_index(x), iy = g.require_index(y);
    Bitset four(g.order());
    for (auto k : {i, j, ix, iy}) four.set(k);
    if (four.count() != 4) return std::nullopt;
    Bitset ne = closed_nbhd(g, i, j);
    if (!(closed_nbhd(g, ix) | closed_nbhd(g, iy)).is_subset_of(ne)) return std::nullopt;
    if (!is_path_graph(g.induced(four))) return std::nullopt;
    SplitClaim c;
    c.kind = ClaimKind::P4Split;
    c.inputs = {{"edge", detail::edge_json(e)}, {"x", x}, {"y", y}};
    c.left = {{remove_edge(g, e), 0, "G-e"}};
    c.right = {{g, 0, "G"}, {remove_mask(g, ne), 2, "G\\N[e]"}};
    return c;
}

/// e ⊆ T, N[t] ⊆ N[e] for all t in T, Ind(G[T]) contractible: same identity as the P_4 split.
inline std::optional<SplitClaim> check_general_T_split(const Graph& g, Edge e, const std::vector<Label>& t_vertices,
                                                       HomologyOracle& oracle) {
    std::size_t j = 0;
    std::size_t i = detail::require_edge(g, e, &j);
    Bitset t = g.to_mask(t_vertices);
    if (!t.test(i) || !t.test(j)) return std::nullopt;
    Bitset ne = closed_nbhd(g, i, j);
    bool closed = true;
    t.for_each([&](std::size_t k) {
        if (!closed_nbhd(g, k).is_subset_of(ne)) closed = false;
    });
    if (!closed) return std::nullopt;
    if (!oracle.signature(g.induced(t)).is_zero()) return std::nullopt;
    SplitClaim c;
    c.kind = ClaimKind::GeneralTSplit;
    c.inputs = {{"edge", detail::edge_json(e)}, {"T", g.to_labels(t)}};
    c.left = {{remove_edge(g, e), 0, "G-e"}};
    c.right = {{g, 0, "G"}, {remove_mask(g, ne), 2, "G\\N[e]"}};
    c.notes.push_back(detail::kContractibleProxy);
    return c;
}

/// X ∪ Y = V, Ind(G[X ∩ Y]) contractible, X \ Y complete to Y \ X:
/// Ind(G) ≃ Ind(G[X]) ∨ Ind(G[Y]).
inline std::optional<SplitClaim> check_mayer_vietoris(const Graph& g, const std::vector<Label>& x_vertices,
                                                      const std::vector<Label>& y_vertices, HomologyOracle& oracle) {
    Bitset x = g.to_mask(x_vertices), y = g.to_mask(y_vertices);
    if (!((x | y) == g.all())) return std::nullopt;
    Bitset only_x = x - y, only_y = y - x;
    bool complete = true;
    only_x.for_each([&](std::size_t a) {
        if (!only_y.is_subset_of(g.row(a))) complete = false;
    });
    if (!complete) return std::nullopt;
    if (!oracle.signature(g.induced(x & y)).is_zero()) return std::nullopt;
    SplitClaim c;
    c.kind = ClaimKind::MayerVietoris;
    c.inputs = {{"X", g.to_labels(x)}, {"Y", g.to_labels(y)}};
    c.left = {{g, 0, "G"}};
    c.right = {{g.induced(x), 0, "G[X]"}, {g.induced(y), 0, "G[Y]"}};
    c.notes.push_back(detail::kContractibleProxy);
    return c;
}

/// N(u) a nonempty clique: Ind(G) ≃ ⋁_{v ∈ N(u)} Σ Ind(G \ N[v]).
inline std::optional<SplitClaim> check_clique_nbhd(const Graph& g, Label u) {
    std::size_t i = g.require_index(u);
    Bitset nu = open_nbhd(g, i);
    if (nu.none() || !is_clique(g, nu)) return std::nullopt;
    SplitClaim c;
    c.kind = ClaimKind::CliqueNbhd;
    c.inputs = {{"u", u}};
    c.left = {{g, 0, "G"}};
    nu.for_each([&](std::size_t v) {
        c.right.push_back({remove_mask(g, closed_nbhd(g, v)), 1, "G\\N[" + std::to_string(g.label(v)) + "]"});
    });
    return c;
}

/// deg(u) = 1 with neighbour v: Ind(G) ≃ Σ Ind(G \ N[v]).
inline std::optional<SplitClaim> apply_degree1(const Graph& g, Label u) {
    std::size_t i = g.require_index(u);
    if (g.degree_at(i) != 1) return std::nullopt;
    std::size_t v = g.row(i).first();
    SplitClaim c;
    c.kind = ClaimKind::Degree1;
    c.inputs = {{"u", u}, {"v", g.label(v)}};
    c.left = {{g, 0, "G"}};
    c.right = {{remove_mask(g, closed_nbhd(g, v)), 1, "G\\N[v]"}};
    return c;
}

struct RewireResult {
    Graph graph;
    SplitClaim claim;
};

/// v with N(v) = {u, w} and N[u] ∩ N[w] = {v}: drop u, v, w and join
/// N(u)\{v} completely to N(w)\{v}; Ind(G) ≃ Σ Ind(G').
inline std::optional<RewireResult> apply_degree2_rewire(const Graph& g, Label v) {
    std::size_t iv = g.require_index(v);
    if (g.degree_at(iv) != 2) return std::nullopt;
    auto nb = g.row(iv).indices();
    std::size_t iu = nb[0], iw = nb[1];
    Bitset common = closed_nbhd(g, iu) & closed_nbhd(g, iw);
    Bitset only_v(g.order());
    only_v.set(iv);
    if (!(common == only_v)) return std::nullopt;
    Bitset gone(g.order());
    for (auto k : {iu, iv, iw}) gone.set(k);
    std::vector<Label> us = g.to_labels(g.row(iu) - gone), ws = g.to_labels(g.row(iw) - gone);
    Graph h = remove_mask(g, gone);
    for (Label a : us)
        for (Label b : ws)
            if (!h.has_edge(a, b)) h.connect(a, b);
    SplitClaim c;
    c.kind = ClaimKind::Degree2Rewire;
    c.inputs = {{"v", v}, {"u", g.label(iu)}, {"w", g.label(iw)}};
    c.left = {{g, 0, "G"}};
    c.right = {{h, 1, "G'"}};
    return RewireResult{h, c};
}

/// Replacing an edge by a path through three new vertices suspends Ind.
inline SplitClaim subdiv3_claim(const Graph& g, Edge e) {
    detail::require_edge(g, e);
    SplitClaim c;
    c.kind = ClaimKind::Subdiv3;
    c.inputs = {{"edge", detail::edge_json(e)}};
    c.left = {{subdivide(g, SubdivisionMode::OneEdgeWith3NewVertices, e), 0, "G_e"}};
    c.right = {{g, 1, "G"}};
    return c;
}

// ---------------------------------------------------------------------------
// Isolating-edge scripts:  add(u,v)!w ; del(u,v)!w

struct IsolatingOp {
    enum class Action { Add, Del };
    Action action = Action::Add;
    Edge edge;
    Label certificate = 0;
    friend bool operator==(const IsolatingOp& a, const IsolatingOp& b) {
        return a.action == b.action && a.edge.u == b.edge.u && a.edge.v == b.edge.v &&
               a.certificate == b.certificate;
    }
};

struct Script {
    std::vector<IsolatingOp> ops;
    friend bool operator==(const Script&, const Script&) = default;
};

inline std::string render(const IsolatingOp& op) {
    return std::string(op.action == IsolatingOp::Action::Add ? "add" : "del") + "(" + std::to_string(op.edge.u) + "," +
           std::to_string(op.edge.v) + ")!" + std::to_string(op.certificate);
}

inline std::string render(const Script& s) {
    std::string out;
    for (std::size_t i = 0; i < s.ops.size(); ++i) {
        if (i) out += "; ";
        out += render(s.ops[i]);
    }
    return out;
}

namespace detail {

class ScriptParser {
public:
    explicit ScriptParser(const std::string& text) : s_(text) {}

    Script parse() {
        Script out;
        skip_blank();
        while (pos_ < s_.size()) {
            out.ops.push_back(op());
            skip_inline();
            if (pos_ < s_.size() && s_[pos_] == ';') {
                ++pos_;
            } else if (pos_ < s_.size() && s_[pos_] != '\n' && s_[pos_] != '#') {
                fail("expected ';' or end of line");
            }
            skip_blank();
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw LocatedError(ErrorKind::SyntaxError,
                           msg + " at line " + std::to_string(line_) + ", column " + std::to_string(pos_ - line_start_ + 1),
                           pos_, line_, pos_ - line_start_ + 1);
    }
    void skip_inline() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
    }
    void skip_comment() {
        if (pos_ < s_.size() && s_[pos_] == '#')
            while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
    }
    // Whitespace, newlines, stray ';' and comments.
    void skip_blank() {
        for (;;) {
            skip_inline();
            skip_comment();
            if (pos_ < s_.size() && (s_[pos_] == '\n' || s_[pos_] == ';')) {
                if (s_[pos_] == '\n') {
                    ++line_;
                    line_start_ = pos_ + 1;
                }
                ++pos_;
                continue;
            }
            return;
        }
    }
    void expect(char c) {
        skip_inline();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    Label number() {
        skip_inline();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected vertex number");
        return static_cast<Label>(std::stoul(s_.substr(start, pos_ - start)));
    }
    IsolatingOp op() {
        IsolatingOp o;
        if (s_.compare(pos_, 3, "add") == 0) o.action = IsolatingOp::Action::Add;
        else if (s_.compare(pos_, 3, "del") == 0) o.action = IsolatingOp::Action::Del;
        else fail("expected 'add' or 'del'");
        pos_ += 3;
        expect('(');
        o.edge.u = number();
        expect(',');
        o.edge.v = number();
        expect(')');
        expect('!');
        o.certificate = number();
        return o;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t line_start_ = 0;
};

}  // namespace detail

inline Script parse_script(const std::string& text) { return detail::ScriptParser(text).parse(); }

struct ScriptStep {
    std::size_t index = 0;
    IsolatingOp op;
    std::size_t edges_after = 0;
};

struct ScriptResult {
    Graph graph;
    std::vector<ScriptStep> log;
};

/// Applies the ops in order. Each certificate w must be isolated in
/// H \ N[e], where H is the graph that contains e (after an add, before
/// a del). Nothing is returned on failure.
inline ScriptResult run_script(const Graph& g, const Script& s) {
    ScriptResult out{g, {}};
    for (std::size_t k = 0; k < s.ops.size(); ++k) {
        const auto& op = s.ops[k];
        auto where = "op " + std::to_string(k) + " " + render(op);
        Graph& cur = out.graph;
        if (!cur.contains(op.edge.u) || !cur.contains(op.edge.v) || op.edge.u == op.edge.v)
            throw LocatedError(ErrorKind::EdgeConflict, where + ": endpoints not in graph", k);
        bool present = cur.has_edge(op.edge.u, op.edge.v);
        if (op.action == IsolatingOp::Action::Add && present)
            throw LocatedError(ErrorKind::EdgeConflict, where + ": edge already present", k);
        if (op.action == IsolatingOp::Action::Del && !present)
            throw LocatedError(ErrorKind::EdgeConflict, where + ": edge not present", k);

        Graph with = op.action == IsolatingOp::Action::Add ? add_edge(cur, op.edge) : cur;
        auto w = with.index_of(op.certificate);
        bool ok = w && op.certificate != op.edge.u && op.certificate != op.edge.v;
        if (ok) {
            Bitset ne = detail::edge_closed_nbhd(with, op.edge);
            ok = !ne.test(*w) && (with.row(*w) - ne).none();
        }
        if (!ok)
            throw LocatedError(ErrorKind::CertificateInvalid,
                               where + ": vertex " + std::to_string(op.certificate) + " is not isolated in G\\N[e]", k);
        cur = op.action == IsolatingOp::Action::Add ? with : remove_edge(with, op.edge);
        out.log.push_back({k, op, cur.size()});
    }
    return out;
}

inline nlohmann::json to_json(const ScriptResult& r) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& st : r.log)
        steps.push_back({{"index", st.index}, {"op", render(st.op)}, {"certificate", st.op.certificate}, {"edges_after", st.edges_after}});
    return {{"steps", steps}, {"graph", to_json(r.graph)}};
}

}  // namespace indtopo
