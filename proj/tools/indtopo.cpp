#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "indtopo/cnr.hpp"
#include "indtopo/complex.hpp"
#include "indtopo/homology.hpp"
#include "indtopo/homotopy.hpp"
#include "indtopo/recursion.hpp"
#include "indtopo/rewrite.hpp"
#include "indtopo/suites.hpp"

using namespace indtopo;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kBudget = 3 };

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw Error(ErrorKind::IoError, "cannot write " + out);
    f << text;
}

void emit(const nlohmann::json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

Family parse_family(const std::string& name) {
    static const std::map<std::string, Family> names{
        {"path", Family::Path},         {"cycle", Family::Cycle},
        {"complete", Family::Complete}, {"path-power", Family::PathPower},
        {"cycle-power", Family::CyclePower}, {"cylinder", Family::CylinderPmCk},
        {"subdiv3-all", Family::Subdiv3All}, {"subdiv3-edge", Family::Subdiv3Edge}};
    auto it = names.find(name);
    if (it == names.end()) throw Error(ErrorKind::InvalidArgument, "unknown family '" + name + "'");
    return it->second;
}

struct Globals {
    std::optional<std::size_t> budget_faces;
    std::optional<std::size_t> budget_matrix;

    HomologyOptions options() const {
        HomologyOptions opt;
        opt.budget = Budget::from_env();
        if (budget_faces) opt.budget.max_faces = *budget_faces;
        if (budget_matrix) opt.budget.max_matrix_entries = *budget_matrix;
        return opt;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Independence complexes of graphs: homology, recursions and rewrite certificates"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--budget-faces", g.budget_faces, "face budget (overrides INDTOPO_BUDGET_FACES)");
    app.add_option("--budget-matrix", g.budget_matrix, "matrix entry budget (overrides INDTOPO_BUDGET_MATRIX)");

    // gen
    std::string fam_name, base_name, gen_out;
    long n = 0, r = 1, m = 0, k = 0, eu = 0, ev = 1;
    auto* gen = app.add_subcommand("gen", "write a graph from a family");
    gen->add_option("family", fam_name, "path | cycle | complete | path-power | cycle-power | cylinder | subdiv3-all | subdiv3-edge")
        ->required();
    gen->add_option("--n", n);
    gen->add_option("--r", r);
    gen->add_option("--m", m);
    gen->add_option("--k", k);
    gen->add_option("--base", base_name, "base family for subdiv3-*; takes --n/--r/--m/--k");
    gen->add_option("--u", eu, "edge endpoint for subdiv3-edge");
    gen->add_option("--v", ev, "edge endpoint for subdiv3-edge");
    gen->add_option("-o,--out", gen_out);

    // homology / complex
    std::string graph_path;
    auto* hom = app.add_subcommand("homology", "reduced homology of Ind(G)");
    hom->add_option("graph", graph_path)->required();
    auto* cpx = app.add_subcommand("complex", "export Ind(G) as facet-ordered faces");
    cpx->add_option("graph", graph_path)->required();

    // predict
    std::string pred_family, expand = "full", convention = "r+2";
    auto* pred = app.add_subcommand("predict", "homotopy type from the recursions");
    pred->add_option("family", pred_family, "path | cycle")->required()->check(CLI::IsMember({"path", "cycle"}));
    pred->add_option("--n", n)->required();
    pred->add_option("--r", r)->required();
    pred->add_option("--expand", expand)->check(CLI::IsMember({"full", "partial"}));
    pred->add_option("--convention", convention, "path recursion lower bound")->check(CLI::IsMember({"r+2", "r+1"}));

    // verify
    std::string suite, report_out;
    SuiteParams sp;
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
    ver->add_option("--r", sp.r);
    ver->add_option("--r-min", sp.r_min);
    ver->add_option("--r-max", sp.r_max);
    ver->add_option("--n-min", sp.n_min);
    ver->add_option("--n-max", sp.n_max);
    ver->add_option("--count", sp.count);
    ver->add_option("--seed", sp.seed);
    ver->add_option("--workers", sp.workers);
    ver->add_option("-o,--out", report_out);

    // script
    std::string script_path;
    bool check_betti = false;
    auto* scr = app.add_subcommand("script", "run an isolating add/del script");
    scr->add_option("graph", graph_path)->required();
    scr->add_option("script", script_path)->required();
    scr->add_flag("--check-betti", check_betti, "report signatures of the start and end graphs");

    // cnr
    std::string cnr_what;
    auto* cnr = app.add_subcommand("cnr", "augmented cycle power construction");
    cnr->add_option("what", cnr_what, "log | ledger | lemma | model | reconcile")
        ->required()
        ->check(CLI::IsMember({"log", "ledger", "lemma", "model", "reconcile"}));
    cnr->add_option("--n", n);
    cnr->add_option("--r", r);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        HomologyOracle oracle(g.options());
        if (*gen) {
            FamilySpec spec;
            spec.family = parse_family(fam_name);
            spec.n = n;
            spec.r = r;
            spec.m = m;
            spec.k = k;
            if (spec.family == Family::Subdiv3All || spec.family == Family::Subdiv3Edge) {
                if (base_name.empty()) throw Error(ErrorKind::InvalidArgument, "subdivision families need --base");
                auto base = std::make_shared<FamilySpec>(spec);
                base->family = parse_family(base_name);
                spec.base = base;
                spec.m = eu;
                spec.k = ev;
            }
            emit(to_text(make_family(spec)), gen_out);
            return kPass;
        }
        if (*hom) {
            emit(to_json(oracle.signature(graph_from_text(slurp(graph_path)))), "");
            return kPass;
        }
        if (*cpx) {
            emit(to_text(independence_complex(graph_from_text(slurp(graph_path)), g.options().budget)), "");
            return kPass;
        }
        if (*pred) {
            RecursionEngine engine(oracle);
            auto conv = convention == "r+1" ? PathConvention::FromRPlus1 : PathConvention::FromRPlus2;
            nlohmann::json out = {{"family", pred_family}, {"n", n}, {"r", r}, {"expand", expand}};
            if (pred_family == "path") {
                auto e = expand == "full" ? engine.predict_path_power(n, r, conv) : engine.path_power_step(n, r, conv);
                out["expr"] = render(e);
                out["signature"] = to_json(to_signature(engine.expand(e)));
                out["base_cases_used"] = nlohmann::json::array();
            } else {
                auto full = engine.predict_cycle_power(n, r);
                auto e = expand == "full" ? full.expr : engine.cycle_power_step(n, r);
                out["expr"] = render(e);
                out["signature"] = to_json(to_signature(full.expr));
                out["base_cases_used"] = full.base_cases_used;
            }
            emit(out, "");
            return kPass;
        }
        if (*ver) {
            sp.homology = g.options();
            auto rep = run_suite(suite, sp, oracle);
            emit(to_json(rep), report_out);
            if (!rep.ok()) return kFail;
            return rep.count(Verdict::SkippedBudget) ? kBudget : kPass;
        }
        if (*scr) {
            auto graph = graph_from_text(slurp(graph_path));
            auto res = run_script(graph, parse_script(slurp(script_path)));
            auto out = to_json(res);
            if (check_betti) {
                out["start_signature"] = to_json(oracle.signature(graph));
                out["end_signature"] = to_json(oracle.signature(res.graph));
            }
            emit(out, "");
            return kPass;
        }
        if (*cnr) {
            if (cnr_what == "log") {
                emit(to_json(build_overline(n, r)), "");
            } else if (cnr_what == "ledger") {
                emit(to_json(enumerate_summands(r)), "");
            } else if (cnr_what == "lemma") {
                auto rep = verify_technical_lemma(r, n ? n : 5 * r + 4, oracle);
                emit(to_json(rep), "");
                return rep.all_pass() ? kPass : kFail;
            } else if (cnr_what == "model") {
                auto rep = verify_model_equivalence(n, r, oracle);
                emit(to_json(rep), "");
                return rep.signatures_match ? kPass : kFail;
            } else {
                auto rep = reconcile_with_closed_form(r);
                emit(to_json(rep), "");
                if (!rep.match) {
                    std::cerr << to_string(ErrorKind::MismatchReported) << ": ledger differs from closed form\n";
                    return kFail;
                }
            }
            return kPass;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.is_budget() ? kBudget : kUsage;
    }
    return kUsage;
}
