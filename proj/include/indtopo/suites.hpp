#pragma once

// Named verification suites. Each case is evaluated on a worker pool and
// reported in submission order.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "indtopo/cnr.hpp"
#include "indtopo/homology.hpp"
#include "indtopo/homotopy.hpp"
#include "indtopo/recursion.hpp"
#include "indtopo/rewrite.hpp"

namespace indtopo {

enum class Verdict { Pass, Fail, SkippedBudget };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::SkippedBudget: return "skipped-budget";
    }
    return "?";
}

struct SuiteCase {
    std::string id;
    nlohmann::json inputs;
    nlohmann::json expected;
    nlohmann::json actual;
    Verdict verdict = Verdict::Fail;
    double runtime_ms = 0;
};

struct SuiteReport {
    std::string suite;
    nlohmann::json params;
    std::vector<SuiteCase> cases;

    std::size_t count(Verdict v) const {
        return static_cast<std::size_t>(
            std::count_if(cases.begin(), cases.end(), [v](const SuiteCase& c) { return c.verdict == v; }));
    }
    bool ok() const { return count(Verdict::Fail) == 0; }
};

inline nlohmann::json to_json(const SuiteReport& rep) {
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : rep.cases)
        cases.push_back({{"id", c.id},
                         {"inputs", c.inputs},
                         {"expected", c.expected},
                         {"actual", c.actual},
                         {"verdict", to_string(c.verdict)},
                         {"runtime_ms", c.runtime_ms}});
    return {{"suite", rep.suite},
            {"params", rep.params},
            {"cases", cases},
            {"summary",
             {{"total", rep.cases.size()},
              {"pass", rep.count(Verdict::Pass)},
              {"fail", rep.count(Verdict::Fail)},
              {"skipped-budget", rep.count(Verdict::SkippedBudget)}}}};
}

struct SuiteParams {
    long r = 2;
    long r_min = 1;
    long r_max = 8;
    long n_min = -1;  // -1: suite default
    long n_max = -1;
    std::size_t count = 0;  // 0: suite default
    std::uint64_t seed = 7;
    unsigned workers = 0;  // 0: hardware concurrency
    HomologyOptions homology{};

    nlohmann::json to_json() const {
        return {{"r", r}, {"r_min", r_min}, {"r_max", r_max}, {"n_min", n_min}, {"n_max", n_max},
                {"count", count}, {"seed", seed}};
    }
};

struct CaseOutcome {
    nlohmann::json expected;
    nlohmann::json actual;
    bool pass = false;
};

struct CaseTask {
    std::string id;
    nlohmann::json inputs;
    std::function<CaseOutcome()> run;
};

inline std::vector<SuiteCase> run_cases(std::vector<CaseTask> tasks, unsigned workers) {
    std::vector<SuiteCase> out(tasks.size());
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < tasks.size();) {
            auto& t = tasks[i];
            SuiteCase c;
            c.id = t.id;
            c.inputs = t.inputs;
            auto t0 = std::chrono::steady_clock::now();
            try {
                auto o = t.run();
                c.expected = std::move(o.expected);
                c.actual = std::move(o.actual);
                c.verdict = o.pass ? Verdict::Pass : Verdict::Fail;
            } catch (const Error& e) {
                c.actual = {{"error", to_string(e.kind())}, {"message", e.what()}};
                c.verdict = e.is_budget() ? Verdict::SkippedBudget : Verdict::Fail;
            } catch (const std::exception& e) {
                c.actual = {{"error", "exception"}, {"message", e.what()}};
                c.verdict = Verdict::Fail;
            }
            c.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            out[i] = std::move(c);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < workers; ++k) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return out;
}

// ---------------------------------------------------------------------------
// Generators

/// Connected chordal graph on n vertices: vertex v joins a clique
/// containing a random earlier vertex.
inline Graph random_connected_chordal(std::mt19937_64& rng, std::size_t n) {
    Graph g(n);
    for (std::size_t v = 1; v < n; ++v) {
        std::size_t anchor = rng() % v;
        Bitset clique(n);
        clique.set(anchor);
        for (std::size_t u = 0; u < v; ++u) {
            if (u == anchor || !g.adjacent_at(u, anchor) || rng() % 2) continue;
            auto trial = clique;
            trial.set(u);
            if (is_clique(g, trial)) clique = trial;
        }
        clique.for_each([&](std::size_t u) { g.connect_at(v, u); });
    }
    return g;
}

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double density) {
    Graph g(n);
    std::bernoulli_distribution coin(density);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng)) g.connect_at(i, j);
    return g;
}

inline const char* kExkozlovScript = "add(0,4)!2; del(0,1)!3; del(3,4)!1";
inline const char* kExkozlovSwapped = "del(0,1)!3; add(0,4)!2; del(3,4)!1";

namespace suites {

inline nlohmann::json sig_json(const HomologySignature& s) { return to_json(s); }

inline SuiteReport theorem1(const SuiteParams& p, HomologyOracle& oracle) {
    long r = p.r;
    long lo = p.n_min >= 0 ? p.n_min : 5 * r + 4;
    long hi = p.n_max >= 0 ? p.n_max : 5 * r + 9;
    lo = std::max(lo, 5 * r + 4);
    std::vector<CaseTask> tasks;
    for (long n = lo; n <= hi; ++n)
        tasks.push_back({family_instance('C', n, r), {{"n", n}, {"r", r}}, [n, r, &oracle] {
                             HomologySignature right = shift(oracle.signature(make_cycle_power(n - 3 * r - 3, r)), 2);
                             for (auto [i, k] : k_table(r).k)
                                 if (k) right += shift(oracle.signature(make_path_power(n - i, r)), 3).scaled(k);
                             auto left = oracle.signature(make_cycle_power(n, r));
                             return CaseOutcome{sig_json(right), sig_json(left),
                                                left == right && left.torsion_free() && right.torsion_free()};
                         }});
    return {"theorem1", p.to_json(), run_cases(std::move(tasks), p.workers)};
}

inline SuiteReport engstrom(const SuiteParams& p, HomologyOracle& oracle) {
    long hi = p.n_max >= 0 ? p.n_max : 16;
    long lo = std::max(0L, p.n_min);
    auto engine = std::make_shared<RecursionEngine>(oracle);
    std::vector<CaseTask> tasks;
    for (long r = p.r_min; r <= p.r_max; ++r)
        for (long n = lo; n <= hi; ++n)
            tasks.push_back({family_instance('P', n, r), {{"n", n}, {"r", r}}, [n, r, engine, &oracle] {
                                 auto predicted = to_signature(engine->predict_path_power(n, r));
                                 auto actual = oracle.signature(make_path_power(n, r));
                                 return CaseOutcome{sig_json(predicted), sig_json(actual), predicted == actual};
                             }});
    return {"engstrom", p.to_json(), run_cases(std::move(tasks), p.workers)};
}

inline SuiteReport kozlov(const SuiteParams& p, HomologyOracle& oracle) {
    long lo = std::max(3L, p.n_min);
    long hi = p.n_max >= 0 ? p.n_max : 18;
    auto engine = std::make_shared<RecursionEngine>(oracle);
    std::vector<CaseTask> tasks;
    for (long n = lo; n <= hi; ++n)
        tasks.push_back({family_instance('C', n, 1), {{"n", n}, {"r", 1}}, [n, engine, &oracle] {
                             auto pred = engine->predict_cycle_power(n, 1);
                             auto predicted = to_signature(pred.expr);
                             auto actual = oracle.signature(make_cycle(n));
                             return CaseOutcome{{{"signature", sig_json(predicted)},
                                                 {"expr", render(pred.expr)},
                                                 {"base_cases_used", pred.base_cases_used}},
                                                sig_json(actual), predicted == actual};
                         }});
    return {"kozlov", p.to_json(), run_cases(std::move(tasks), p.workers)};
}

inline SuiteReport lemma61(const SuiteParams& p, HomologyOracle& oracle) {
    std::vector<CaseTask> tasks;
    for (long r = p.r_min; r <= p.r_max; ++r) {
        long n = p.n_min >= 0 ? std::max(p.n_min, 5 * r + 4) : 5 * r + 4;
        auto rep = std::make_shared<std::optional<LemmaReport>>();
        auto mu = std::make_shared<std::mutex>();
        for (const char* item : {"a", "b", "c", "d", "e", "f"})
            tasks.push_back({"r=" + std::to_string(r) + " item " + item,
                             {{"r", r}, {"n", n}, {"item", item}},
                             [r, n, item = std::string(item), rep, mu, &oracle] {
                                 {
                                     std::lock_guard lock(*mu);
                                     if (!*rep) *rep = verify_technical_lemma(r, n, oracle);
                                 }
                                 for (const auto& it : (*rep)->items)
                                     if (it.item == item) return CaseOutcome{"holds", it.detail, it.pass};
                                 return CaseOutcome{"holds", "missing", false};
                             }});
    }
    return {"lemma61", p.to_json(), run_cases(std::move(tasks), p.workers)};
}

inline SuiteReport model(const SuiteParams& p, HomologyOracle& oracle) {
    std::vector<std::pair<long, long>> cases;
    if (p.n_max >= 0) {
        for (long n = std::max(5 * p.r + 4, p.n_min); n <= p.n_max; ++n) cases.push_back({p.r, n});
    } else {
        for (auto [r, lo, hi] : {std::tuple{1L, 9L, 12L}, {2L, 14L, 17L}, {3L, 19L, 21L}})
            for (long n = lo; n <= hi; ++n) cases.push_back({r, n});
    }
    std::vector<CaseTask> tasks;
    for (auto [r, n] : cases)
        tasks.push_back({"n=" + std::to_string(n) + " r=" + std::to_string(r), {{"n", n}, {"r", r}}, [r = r, n = n, &oracle] {
                             auto m = verify_model_equivalence(n, r, oracle);
                             auto j = to_json(m);
                             return CaseOutcome{j["right"], j, m.signatures_match};
                         }});
    return {"model", p.to_json(), run_cases(std::move(tasks), p.workers)};
}

inline SuiteReport reconcile(const SuiteParams& p, HomologyOracle&) {
    std::vector<CaseTask> tasks;
    for (long r = p.r_min; r <= p.r_max; ++r)
        tasks.push_back({"r=" + std::to_string(r), {{"r", r}}, [r] {
                             auto rep = reconcile_with_closed_form(r);
                             auto j = to_json(rep);
                             return CaseOutcome{j["closed_form"], j["ledger"], rep.match};
                         }});
    return {"reconcile", p.to_json(), run_cases(std::move(tasks), p.workers)};
}

inline SuiteReport scripts(const SuiteParams& p, HomologyOracle& oracle) {
    long lo = std::max(9L, p.n_min);
    long hi = p.n_max >= 0 ? p.n_max : 15;
    std::vector<CaseTask> tasks;
    for (long n = lo; n <= hi; ++n) {
        tasks.push_back({"exkozlov C_" + std::to_string(n), {{"n", n}, {"script", kExkozlovScript}}, [n, &oracle] {
                             auto g = make_cycle(n);
                             auto res = run_script(g, parse_script(kExkozlovScript));
                             bool ok = res.log.size() == 3;
                             auto comps = connected_components(res.graph);
                             std::vector<std::vector<Label>> parts;
                             for (const auto& c : comps) parts.push_back(res.graph.to_labels(c));
                             ok = ok && comps.size() == 2;
                             if (ok) {
                                 std::size_t pi = comps[0].test(*res.graph.index_of(1)) ? 0 : 1;
                                 Graph path = res.graph.induced(comps[pi]);
                                 Graph cyc = res.graph.induced(comps[1 - pi]);
                                 ok = path.labels() == std::vector<Label>{1, 2, 3} && is_path_graph(path) &&
                                      static_cast<long>(cyc.order()) == n - 3 && cyc.size() == cyc.order();
                                 for (std::size_t i = 0; ok && i < cyc.order(); ++i) ok = cyc.degree_at(i) == 2;
                             }
                             auto lhs = oracle.signature(g);
                             auto rhs = shift(oracle.signature(make_cycle(n - 3)), 1);
                             ok = ok && lhs == rhs;
                             return CaseOutcome{{{"components", {"P_3", "C_" + std::to_string(n - 3)}},
                                                 {"signature", sig_json(rhs)}},
                                                {{"components", parts}, {"signature", sig_json(lhs)}},
                                                ok};
                         }});
        tasks.push_back({"swapped C_" + std::to_string(n), {{"n", n}, {"script", kExkozlovSwapped}}, [n] {
                             try {
                                 run_script(make_cycle(n), parse_script(kExkozlovSwapped));
                             } catch (const LocatedError& e) {
                                 bool ok = e.kind() == ErrorKind::CertificateInvalid;
                                 return CaseOutcome{"CertificateInvalid",
                                                    {{"error", to_string(e.kind())}, {"op", e.index()}}, ok};
                             }
                             return CaseOutcome{"CertificateInvalid", "accepted", false};
                         }});
    }
    return {"scripts", p.to_json(), run_cases(std::move(tasks), p.workers)};
}

inline SuiteReport chordal(const SuiteParams& p, HomologyOracle& oracle) {
    std::size_t count = p.count ? p.count : 100;
    long hi = p.n_max >= 0 ? p.n_max : 11;
    long lo = std::max(1L, p.n_min >= 0 ? p.n_min : 2L);
    std::mt19937_64 rng(p.seed);
    std::vector<CaseTask> tasks;
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t n = static_cast<std::size_t>(lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)));
        auto g = std::make_shared<Graph>(random_connected_chordal(rng, n));
        char id[32];
        std::snprintf(id, sizeof id, "chordal-%04zu", c);
        tasks.push_back({id, {{"graph", to_text(*g)}}, [g, hi, &oracle] {
                             auto s = oracle.signature(*g);
                             auto gamma = domination_number(*g);
                             auto conn = homology_connectivity(s);
                             auto ps = psi(*g, static_cast<std::size_t>(std::max(hi, 1L)));
                             bool dim_ok = true;
                             if (!s.is_zero()) dim_ok = s.betti.begin()->first >= static_cast<int>(gamma) - 1;
                             bool ok = s.torsion_free() && dim_ok && ps == conn + 2;
                             return CaseOutcome{{{"torsion", "none"},
                                                 {"min_degree_at_least", static_cast<long>(gamma) - 1},
                                                 {"psi", (conn + 2).str()}},
                                                {{"signature", sig_json(s)}, {"gamma", gamma}, {"psi", ps.str()}},
                                                ok};
                         }});
    }
    return {"chordal", p.to_json(), run_cases(std::move(tasks), p.workers)};
}

inline SuiteReport examples55_56(const SuiteParams& p, HomologyOracle& oracle) {
    std::vector<CaseTask> tasks;
    for (auto [name, g] : {std::pair{std::string("C_3"), make_cycle(3)}, {"C_4", make_cycle(4)}, {"K_4", make_complete(4)}})
        tasks.push_back({name + " G_3", {{"graph", name}}, [g = g, &oracle] {
                             long n = static_cast<long>(g.order()), m = static_cast<long>(g.size());
                             HomologySignature want = HomologySignature::sphere(static_cast<int>(n - 1));
                             want += HomologySignature::sphere(static_cast<int>(m - 1));
                             auto got = oracle.signature(subdivide(g, SubdivisionMode::AllEdgesInto3Parts));
                             return CaseOutcome{sig_json(want), sig_json(got), got == want};
                         }});
    tasks.push_back({"P_2xC_5", {{"m", 2}, {"k", 5}}, [&oracle] {
                         auto got = oracle.signature(make_cylinder(2, 5));
                         auto want = HomologySignature::sphere(1);
                         return CaseOutcome{sig_json(want), sig_json(got), got == want};
                     }});
    for (long n : {3L, 4L})
        tasks.push_back({"P_" + std::to_string(n) + "xC_5", {{"m", n}, {"k", 5}}, [n, &oracle] {
                             auto want = shift(oracle.signature(make_cylinder(n - 2, 5)), 2);
                             auto got = oracle.signature(make_cylinder(n, 5));
                             return CaseOutcome{sig_json(want), sig_json(got), got == want};
                         }});
    return {"examples55-56", p.to_json(), run_cases(std::move(tasks), p.workers)};
}

/// Every applicable instance of every rule on one graph.
inline std::vector<SplitClaim> applicable_claims(const Graph& g, HomologyOracle& oracle) {
    std::vector<SplitClaim> out;
    auto take = [&](std::optional<SplitClaim> c) {
        if (c) out.push_back(std::move(*c));
    };
    for (Label u : g.labels()) {
        for (Label v : g.labels())
            if (u != v) {
                take(check_fold(g, u, v));
                take(check_closed_nbhd(g, u, v));
            }
        take(check_clique_nbhd(g, u));
        take(apply_degree1(g, u));
        if (auto rw = apply_degree2_rewire(g, u)) out.push_back(rw->claim);
        // X = V - u, Y = V - N(u): X\Y = N(u) is complete to Y\X = {u}
        std::size_t iu = g.require_index(u);
        if (g.degree_at(iu) > 0) {
            Bitset nu = open_nbhd(g, iu);
            Bitset self(g.order());
            self.set(iu);
            take(check_mayer_vietoris(g, g.to_labels(g.all() - self), g.to_labels(g.all() - nu), oracle));
        }
    }
    for (auto e : g.edges()) {
        take(check_isolating(g, e));
        for (Label x : g.labels())
            for (Label y : g.labels()) take(check_p4_split(g, e, x, y));
        std::size_t i = g.require_index(e.u), j = g.require_index(e.v);
        Bitset ne = closed_nbhd(g, i, j);
        Bitset t(g.order());
        for (std::size_t k = 0; k < g.order(); ++k)
            if (closed_nbhd(g, k).is_subset_of(ne)) t.set(k);
        take(check_general_T_split(g, e, g.to_labels(t), oracle));
        // X = V - v, Y = V - u for the edge uv
        Bitset only_i(g.order()), only_j(g.order());
        only_i.set(i);
        only_j.set(j);
        take(check_mayer_vietoris(g, g.to_labels(g.all() - only_j), g.to_labels(g.all() - only_i), oracle));
        out.push_back(subdiv3_claim(g, e));
    }
    return out;
}

inline SuiteReport rules_sweep(const SuiteParams& p, HomologyOracle& oracle) {
    std::size_t count = p.count ? p.count : 500;
    long hi = p.n_max >= 0 ? p.n_max : 10;
    std::mt19937_64 rng(p.seed);
    std::vector<CaseTask> tasks;
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t n = 1 + rng() % static_cast<std::uint64_t>(hi);
        double density = 0.15 + 0.1 * static_cast<double>(rng() % 6);
        auto g = std::make_shared<Graph>(random_graph(rng, n, density));
        char id[32];
        std::snprintf(id, sizeof id, "graph-%04zu", c);
        tasks.push_back({id, {{"graph", to_text(*g)}}, [g, &oracle] {
                             std::map<std::string, std::size_t> applied, failed;
                             nlohmann::json failures = nlohmann::json::array();
                             for (const auto& claim : applicable_claims(*g, oracle)) {
                                 auto rep = verify_claim(claim, oracle);
                                 ++applied[to_string(claim.kind)];
                                 if (!rep.pass) {
                                     ++failed[to_string(claim.kind)];
                                     failures.push_back(to_json(rep));
                                 }
                             }
                             return CaseOutcome{{{"failures", 0}},
                                                {{"applied", applied}, {"failures", failures.size()}, {"failed", failures}},
                                                failures.empty()};
                         }});
    }
    return {"rules-sweep", p.to_json(), run_cases(std::move(tasks), p.workers)};
}

}  // namespace suites

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"theorem1", "engstrom",      "kozlov",      "lemma61", "model",
                                                "reconcile", "scripts",      "chordal",     "examples55-56",
                                                "rules-sweep"};
    return names;
}

inline SuiteReport run_suite(const std::string& name, const SuiteParams& p, HomologyOracle& oracle) {
    if (name == "theorem1") return suites::theorem1(p, oracle);
    if (name == "engstrom") return suites::engstrom(p, oracle);
    if (name == "kozlov") return suites::kozlov(p, oracle);
    if (name == "lemma61") return suites::lemma61(p, oracle);
    if (name == "model") return suites::model(p, oracle);
    if (name == "reconcile") return suites::reconcile(p, oracle);
    if (name == "scripts") return suites::scripts(p, oracle);
    if (name == "chordal") return suites::chordal(p, oracle);
    if (name == "examples55-56") return suites::examples55_56(p, oracle);
    if (name == "rules-sweep") return suites::rules_sweep(p, oracle);
    throw Error(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace indtopo
