#pragma once

// Symbolic wedges of spheres. Expressions are built from spheres S^d
// (d >= -1, S^-1 being the empty complex), the contractible space,
// k-fold suspensions, wedges with multiplicities, and opaque leaves
// Ind(P_n^r) / Ind(C_n^r) awaiting expansion.
//
// Text form:   pt | S^d | Susp^k(e) | Ind(P_n^r) | Ind(C_n^r)
//              Wedge[3 x S^1, S^2]     (bracket form)
//              a v 4xb v 5xc           (infix form)

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "indtopo/errors.hpp"
#include "indtopo/homology.hpp"

namespace indtopo {

class HomotopyExpr;

struct Contractible {
    friend bool operator==(const Contractible&, const Contractible&) { return true; }
};

struct Sphere {
    int dim = 0;
    friend bool operator==(const Sphere&, const Sphere&) = default;
};

struct WedgeTerm;

struct Wedge {
    std::vector<WedgeTerm> terms;
    friend bool operator==(const Wedge& a, const Wedge& b);
};

struct Suspension {
    int power = 1;
    std::shared_ptr<const HomotopyExpr> inner;
    friend bool operator==(const Suspension& a, const Suspension& b);
};

/// Unexpanded Ind(P_n^r) ('P') or Ind(C_n^r) ('C').
struct Opaque {
    char family = 'P';
    long n = 0;
    long r = 1;
    friend bool operator==(const Opaque&, const Opaque&) = default;
};

class HomotopyExpr {
public:
    using Node = std::variant<Contractible, Sphere, Wedge, Suspension, Opaque>;

    HomotopyExpr() : node_(Contractible{}) {}
    HomotopyExpr(Node n) : node_(std::move(n)) {}  // NOLINT: implicit by intent

    static HomotopyExpr point() { return HomotopyExpr(Contractible{}); }
    static HomotopyExpr sphere(int d) {
        if (d < -1) throw Error(ErrorKind::InvalidArgument, "sphere dimension below -1");
        return HomotopyExpr(Sphere{d});
    }
    static HomotopyExpr suspend(int k, HomotopyExpr e) {
        if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative suspension power");
        return HomotopyExpr(Suspension{k, std::make_shared<const HomotopyExpr>(std::move(e))});
    }
    static HomotopyExpr opaque(char family, long n, long r) { return HomotopyExpr(Opaque{family, n, r}); }
    static HomotopyExpr wedge(std::vector<WedgeTerm> terms);

    const Node& node() const { return node_; }
    template <class T>
    bool is() const {
        return std::holds_alternative<T>(node_);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(node_);
    }

    friend bool operator==(const HomotopyExpr& a, const HomotopyExpr& b) { return a.node_ == b.node_; }

private:
    Node node_;
};

struct WedgeTerm {
    HomotopyExpr expr;
    std::uint64_t multiplicity = 1;
    friend bool operator==(const WedgeTerm&, const WedgeTerm&) = default;
};

inline bool operator==(const Wedge& a, const Wedge& b) { return a.terms == b.terms; }
inline bool operator==(const Suspension& a, const Suspension& b) {
    return a.power == b.power && *a.inner == *b.inner;
}

inline HomotopyExpr HomotopyExpr::wedge(std::vector<WedgeTerm> terms) { return HomotopyExpr(Wedge{std::move(terms)}); }

/// k-fold wedge of e; the empty wedge is contractible.
inline HomotopyExpr wedge_pow(const HomotopyExpr& e, std::uint64_t k) {
    if (k == 0) return HomotopyExpr::point();
    return HomotopyExpr::wedge({{e, k}});
}

namespace detail {

// Normal form as sphere multiplicities; dim -1 allowed only alone.
using SphereCounts = std::map<int, std::uint64_t>;

inline void accumulate(const HomotopyExpr& e, int lift, std::uint64_t mult, SphereCounts& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Contractible>) {
            } else if constexpr (std::is_same_v<T, Sphere>) {
                out[n.dim + lift] += mult;
            } else if constexpr (std::is_same_v<T, Suspension>) {
                accumulate(*n.inner, lift + n.power, mult, out);
            } else if constexpr (std::is_same_v<T, Wedge>) {
                // Summands are normalized independently so that a wedge with
                // S^-1 is rejected before any outer suspension hides it.
                SphereCounts inner;
                for (const auto& t : n.terms) {
                    if (t.multiplicity == 0) continue;
                    accumulate(t.expr, 0, t.multiplicity, inner);
                }
                std::uint64_t total = 0;
                for (auto& [d, m] : inner) total += m;
                if (inner.count(-1) && total > 1)
                    throw Error(ErrorKind::NonNormalizable, "wedge with S^-1 alongside other summands");
                for (auto& [d, m] : inner) out[d + lift] += m * mult;
            } else {
                throw Error(ErrorKind::UnresolvedOpaque,
                            std::string("Ind(") + n.family + "_" + std::to_string(n.n) + "^" + std::to_string(n.r) +
                                ") is not expanded");
            }
        },
        e.node());
}

inline HomotopyExpr from_counts(const SphereCounts& counts) {
    std::vector<WedgeTerm> terms;
    std::uint64_t total = 0;
    for (const auto& [d, m] : counts)
        if (m) {
            terms.push_back({HomotopyExpr::sphere(d), m});
            total += m;
        }
    if (total == 0) return HomotopyExpr::point();
    if (total == 1) return terms.front().expr;
    return HomotopyExpr::wedge(std::move(terms));
}

}  // namespace detail

/// Canonical form: pt, a single S^d, or a wedge of distinct-dimension
/// sphere terms with multiplicities, sorted by dimension.
inline HomotopyExpr normalize(const HomotopyExpr& e) {
    detail::SphereCounts counts;
    detail::accumulate(e, 0, 1, counts);
    std::uint64_t total = 0;
    for (auto& [d, m] : counts) total += m;
    if (counts.count(-1) && total > 1)
        throw Error(ErrorKind::NonNormalizable, "wedge with S^-1 alongside other summands");
    return detail::from_counts(counts);
}

inline HomologySignature to_signature(const HomotopyExpr& e) {
    detail::SphereCounts counts;
    detail::accumulate(e, 0, 1, counts);
    HomologySignature s;
    for (auto& [d, m] : counts)
        if (m) s.betti[d] = m;
    return s;
}

/// Sphere wedge with the given reduced homology; torsion or an S^-1 mixed
/// with other classes has no such lift.
inline HomotopyExpr lift_signature(const HomologySignature& sig) {
    if (!sig.torsion_free())
        throw Error(ErrorKind::BaseCaseNotWedgeOfSpheres, "signature " + sig.str() + " has torsion");
    if (sig.betti.count(-1) && (sig.betti.size() > 1 || sig.betti.at(-1) != 1))
        throw Error(ErrorKind::BaseCaseNotWedgeOfSpheres, "signature " + sig.str() + " mixes S^-1 with other classes");
    return detail::from_counts({sig.betti.begin(), sig.betti.end()});
}


inline bool contains_opaque(const HomotopyExpr& e) {
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Opaque>) return true;
            else if constexpr (std::is_same_v<T, Suspension>) return contains_opaque(*n.inner);
            else if constexpr (std::is_same_v<T, Wedge>) {
                return std::any_of(n.terms.begin(), n.terms.end(),
                                   [](const WedgeTerm& t) { return contains_opaque(t.expr); });
            } else return false;
        },
        e.node());
}

// ---------------------------------------------------------------------------
// Rendering

std::string render(const HomotopyExpr& e);

namespace detail {
inline bool all_spheres(const Wedge& w) {
    return std::all_of(w.terms.begin(), w.terms.end(), [](const WedgeTerm& t) { return t.expr.is<Sphere>(); });
}
inline bool infix_wedge(const HomotopyExpr& e) {
    if (!e.is<Wedge>()) return false;
    const auto& w = e.as<Wedge>();
    return w.terms.size() > 1 && !all_spheres(w);
}
}  // namespace detail

inline std::string render(const HomotopyExpr& e) {
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Contractible>) return "pt";
            else if constexpr (std::is_same_v<T, Sphere>) return "S^" + std::to_string(n.dim);
            else if constexpr (std::is_same_v<T, Suspension>)
                return "Susp^" + std::to_string(n.power) + "(" + render(*n.inner) + ")";
            else if constexpr (std::is_same_v<T, Opaque>)
                return std::string("Ind(") + n.family + "_" + std::to_string(n.n) + "^" + std::to_string(n.r) + ")";
            else {
                std::string s;
                if (n.terms.size() > 1 && !detail::all_spheres(n)) {
                    for (std::size_t i = 0; i < n.terms.size(); ++i) {
                        const auto& t = n.terms[i];
                        if (i) s += " v ";
                        if (t.multiplicity != 1) s += std::to_string(t.multiplicity) + "x";
                        s += detail::infix_wedge(t.expr) ? "(" + render(t.expr) + ")" : render(t.expr);
                    }
                    return s;
                }
                s = "Wedge[";
                for (std::size_t i = 0; i < n.terms.size(); ++i) {
                    const auto& t = n.terms[i];
                    if (i) s += ", ";
                    if (t.multiplicity != 1) s += std::to_string(t.multiplicity) + " x ";
                    s += detail::infix_wedge(t.expr) ? "(" + render(t.expr) + ")" : render(t.expr);
                }
                return s + "]";
            }
        },
        e.node());
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : s_(text) {}

    HomotopyExpr parse() {
        auto e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw LocatedError(ErrorKind::SyntaxError, msg + " at column " + std::to_string(pos_ + 1), 0, 1, pos_ + 1);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(const std::string& tok) {
        skip();
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(const std::string& tok) {
        if (!accept(tok)) fail("expected '" + tok + "'");
    }
    long integer() {
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_ || (pos_ - start == 1 && s_[start] == '-')) fail("expected integer");
        return std::stol(s_.substr(start, pos_ - start));
    }
    bool at_digit() {
        skip();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }

    // term := [INT ('x' | ' x ')] atom ; returns (expr, multiplicity, explicit?)
    std::pair<WedgeTerm, bool> term() {
        if (at_digit()) {
            long k = integer();
            if (k < 0) fail("negative multiplicity");
            expect("x");
            return {{atom(), static_cast<std::uint64_t>(k)}, true};
        }
        return {{atom(), 1}, false};
    }

    HomotopyExpr expr() {
        std::vector<WedgeTerm> terms;
        auto [first, explicit_mult] = term();
        terms.push_back(first);
        bool wedge = explicit_mult;
        for (;;) {
            skip();
            // 'v' separates infix wedge terms.
            if (pos_ < s_.size() && s_[pos_] == 'v' &&
                (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
                ++pos_;
                terms.push_back(term().first);
                wedge = true;
            } else {
                break;
            }
        }
        if (!wedge) return terms.front().expr;
        return HomotopyExpr::wedge(std::move(terms));
    }

    HomotopyExpr atom() {
        if (accept("pt")) return HomotopyExpr::point();
        if (accept("Susp^")) {
            long k = integer();
            if (k < 0) fail("negative suspension power");
            expect("(");
            auto inner = expr();
            expect(")");
            return HomotopyExpr::suspend(static_cast<int>(k), inner);
        }
        if (accept("S^")) {
            long d = integer();
            if (d < -1) fail("sphere dimension below -1");
            return HomotopyExpr::sphere(static_cast<int>(d));
        }
        if (accept("Wedge[")) {
            std::vector<WedgeTerm> terms;
            if (!accept("]")) {
                do {
                    terms.push_back(term().first);
                } while (accept(","));
                expect("]");
            }
            return HomotopyExpr::wedge(std::move(terms));
        }
        if (accept("Ind(")) {
            skip();
            if (pos_ >= s_.size() || (s_[pos_] != 'P' && s_[pos_] != 'C')) fail("expected P or C");
            char fam = s_[pos_++];
            expect("_");
            long n = integer();
            expect("^");
            long r = integer();
            expect(")");
            return HomotopyExpr::opaque(fam, n, r);
        }
        if (accept("(")) {
            auto e = expr();
            expect(")");
            return e;
        }
        fail("expected expression");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline HomotopyExpr parse_expr(const std::string& text) { return detail::ExprParser(text).parse(); }

}  // namespace indtopo
