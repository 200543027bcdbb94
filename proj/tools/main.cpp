// wolffpot: Wolff/Riesz potential evaluation, the sublinear integral-system
// solver, and the hypothesis checks, driven by JSON scenario files.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wolffpot/conditions.hpp"
#include "wolffpot/errors.hpp"
#include "wolffpot/exponents.hpp"
#include "wolffpot/potential.hpp"
#include "wolffpot/registry.hpp"
#include "wolffpot/scenario.hpp"
#include "wolffpot/solver.hpp"

using nlohmann::json;
using namespace wolffpot;

namespace {

std::string diag(const char* kind, const std::string& msg) {
    json j;
    j["error"] = kind;
    j["message"] = msg;
    return "wolffpot: " + j.dump();
}

MeasurePtr measure_from_spec(const std::string& spec, int dim) {
    if (spec == "dirac")
        return make_atomic(dim, {Atom{Point(dim, 0.0), 1.0}});
    if (spec == "ball")
        return make_ball_lebesgue(Point(dim, 0.0), 1.0, 1.0);
    if (spec == "zero")
        return make_atomic(dim, {});
    json j;
    if (!spec.empty() && spec.front() == '{') {
        j = json::parse(spec);
    } else {
        std::string path = spec;
        if (!path.empty() && path.front() == '@') path.erase(0, 1);
        std::ifstream is(path);
        if (!is) throw std::invalid_argument("cannot open measure file: " + path);
        j = json::parse(is);
    }
    return measure_from_json(j, dim);
}

bool parse_grid_spec(const std::string& s, GridSpec& g) {
    const auto a = s.find(':');
    const auto b = s.rfind(':');
    if (a == std::string::npos || b == a) return false;
    try {
        g.r_min = std::stod(s.substr(0, a));
        g.r_max = std::stod(s.substr(a + 1, b - a - 1));
        g.points = std::stoi(s.substr(b + 1));
    } catch (...) {
        return false;
    }
    return true;
}

Scenario load_scenario(const std::string& ref) {
    std::ifstream is(ref);
    json doc;
    if (is) {
        doc = json::parse(is);
    } else if (const RegistryEntry* e = find_scenario(ref)) {
        doc = json::parse(e->json_text);
    } else {
        throw std::invalid_argument("scenario not found (neither a file nor a bundled name): " +
                                    ref);
    }
    return scenario_from_json(doc);
}

int cmd_potential(const std::string& measure_spec, int n, double p, double alpha,
                  const std::vector<double>& at, double riesz_order, double tol,
                  bool as_json) {
    Params params;
    params.n = n;
    params.p = p;
    params.alpha = alpha;
    QuadratureConfig qc;
    qc.rel_tol = tol;
    qc.abs_tol = tol * 1e-3;
    const MeasurePtr m = measure_from_spec(measure_spec, n);

    json out = json::array();
    for (double r : at) {
        const Point x = radial_point(r, n);
        const double value = riesz_order > 0.0 ? riesz(*m, riesz_order, n, x, qc)
                                               : wolff(params, *m, x, qc);
        if (as_json) {
            json row;
            row["r"] = r;
            row["value"] = std::isfinite(value) ? json(value) : json("inf");
            out.push_back(row);
        } else {
            std::cout.precision(12);
            std::cout << value << "\n";
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_exponents(double p, double q1, double q2, double kappa, double c1, int J,
                  bool as_json) {
    const Exponents e = gamma_exponents(p, q1, q2);
    const LowerBoundSequence seq = lower_bound_sequence(p, q1, q2, kappa, c1, J);
    const double l1 = subsolution_scale(p, q1, q2, kappa);
    if (as_json) {
        json j;
        j["gamma1"] = e.gamma1;
        j["gamma2"] = e.gamma2;
        j["denom"] = e.denom;
        j["contraction_ratio"] = e.contraction_ratio;
        j["lambda1"] = l1;
        j["deltas"] = seq.deltas;
        j["consts"] = seq.consts;
        j["delta_limit"] = seq.gamma1_limit;
        j["const_limit"] = seq.const_limit;
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    std::cout.precision(12);
    std::cout << "gamma1 = " << e.gamma1 << "\n";
    std::cout << "gamma2 = " << e.gamma2 << "\n";
    std::cout << "denom  = " << e.denom << " (contraction ratio " << e.contraction_ratio
              << ")\n";
    std::cout << "lambda1(kappa=" << kappa << ") = " << l1 << "\n";
    std::cout << "delta_j (j=1.." << seq.deltas.size() << "), limit " << seq.gamma1_limit
              << ":\n";
    const size_t show = std::min<size_t>(seq.deltas.size(), 8);
    for (size_t i = 0; i < show; ++i)
        std::cout << "  delta_" << (i + 1) << " = " << seq.deltas[i]
                  << "   c_" << (i + 1) << " = " << seq.consts[i] << "\n";
    if (seq.deltas.size() > show) std::cout << "  ...\n";
    std::cout << "  delta_" << seq.deltas.size() << " = " << seq.deltas.back()
              << "   c_" << seq.consts.size() << " = " << seq.consts.back() << "\n";
    std::cout << "c_j limit (closed form) = " << seq.const_limit << "\n";
    return kExitOk;
}

int cmd_check(const std::vector<std::string>& ids, const std::string& measure_spec, int n,
              double p, double alpha, double q1, double q2, double s_exp, double radius,
              bool as_json) {
    Params params;
    params.n = n;
    params.p = p;
    params.alpha = alpha;
    params.q1 = q1;
    params.q2 = q2;
    const MeasurePtr m = measure_from_spec(measure_spec, n);
    const std::vector<double> grid = make_log_grid(0.01, 100.0, 64);

    bool all = true;
    json out = json::array();
    for (const std::string& id : ids) {
        ConditionReport rep;
        if (id == "finiteness") {
            rep = finiteness_condition(m, params);
        } else if (id == "weaker_condition") {
            rep = weaker_condition_lambda(m, params, grid);
        } else if (id == "kappa") {
            const Exponents e = gamma_exponents(p, q1, q2);
            rep = kappa_estimate(m, params, q1 * e.gamma2, grid);
        } else if (id == "local_integrability") {
            rep = local_integrability(m, params, s_exp, radius);
        } else if (id == "capacity_ball_scaling") {
            rep = capacity_ball_scaling(m, params, make_log_grid(0.01, radius, 16));
        } else {
            throw std::invalid_argument("unknown condition id: " + id);
        }
        all = all && rep.pass;
        if (as_json) {
            out.push_back(to_json(rep));
        } else {
            std::cout << rep.condition << ": " << (rep.pass ? "pass" : "fail")
                      << " (constant " << rep.constant << ")";
            if (!rep.detail.empty()) std::cout << " - " << rep.detail;
            std::cout << "\n";
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return all ? kExitOk : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wolff potentials and the sublinear integral system"};
    app.require_subcommand(1);

    // potential
    auto* pot = app.add_subcommand("potential", "evaluate Wolff/Riesz potentials at radii");
    std::string pot_measure = "dirac";
    int pot_n = 3;
    double pot_p = 2.0, pot_alpha = 1.0, pot_riesz = 0.0, pot_tol = 1e-9;
    std::vector<double> pot_at;
    bool pot_json = false;
    pot->add_option("--measure", pot_measure, "dirac | ball | zero | @file.json | inline JSON");
    pot->add_option("--n", pot_n, "dimension");
    pot->add_option("--p", pot_p, "p in (1, inf)");
    pot->add_option("--alpha", pot_alpha, "alpha in (0, n/p)");
    pot->add_option("--at", pot_at, "probe radii |x|")->required();
    pot->add_option("--riesz", pot_riesz, "evaluate the Riesz potential of this order instead");
    pot->add_option("--tol", pot_tol, "relative quadrature tolerance");
    pot->add_flag("--json", pot_json, "JSON output");

    // exponents
    auto* expo = app.add_subcommand("exponents", "gamma1/gamma2, delta_j/c_j table, lambda1");
    double ex_p = 2.0, ex_q1 = 0.5, ex_q2 = 0.5, ex_kappa = 1.0, ex_c1 = 1.0;
    int ex_J = 200;
    bool ex_json = false;
    expo->add_option("--p", ex_p, "p in (1, inf)");
    expo->add_option("--q1", ex_q1, "q1 in (0, p-1)");
    expo->add_option("--q2", ex_q2, "q2 in (0, p-1)");
    expo->add_option("--kappa", ex_kappa, "kappa constant (default 1)");
    expo->add_option("--c1", ex_c1, "seed constant c_1");
    expo->add_option("--J", ex_J, "iteration count");
    expo->add_flag("--json", ex_json, "JSON output");

    // check
    auto* chk = app.add_subcommand("check", "run condition checks on a measure");
    std::vector<std::string> chk_ids;
    std::string chk_measure = "dirac";
    int chk_n = 3;
    double chk_p = 2.0, chk_alpha = 1.0, chk_q1 = 0.5, chk_q2 = 0.5, chk_s = 1.0,
           chk_radius = 2.0;
    bool chk_json = false;
    chk->add_option("ids", chk_ids,
                    "finiteness | weaker_condition | kappa | local_integrability | "
                    "capacity_ball_scaling")
        ->required();
    chk->add_option("--measure", chk_measure, "dirac | ball | zero | @file.json | inline JSON");
    chk->add_option("--n", chk_n, "dimension");
    chk->add_option("--p", chk_p, "p");
    chk->add_option("--alpha", chk_alpha, "alpha");
    chk->add_option("--q1", chk_q1, "q1");
    chk->add_option("--q2", chk_q2, "q2");
    chk->add_option("--s", chk_s, "integrability exponent s");
    chk->add_option("--radius", chk_radius, "ball radius for local integrability");
    chk->add_flag("--json", chk_json, "JSON output");

    // solve / run
    auto* slv = app.add_subcommand("solve", "run the full pipeline on a scenario");
    auto* run = app.add_subcommand("run", "run a scenario file or the bundled suite");
    std::string sc_ref, sc_out, run_grid;
    double sc_tol = 0.0;
    bool run_all = false;
    for (auto* cmd : {slv, run}) {
        cmd->add_option("--scenario", cmd == slv ? sc_ref : sc_ref,
                        "scenario file path or bundled scenario name");
        cmd->add_option("--out", sc_out, "output directory (overrides the scenario)");
        cmd->add_option("--tol", sc_tol, "override solver tolerance");
        cmd->add_option("--grid", run_grid, "override grid as min:max:points");
    }
    run->add_flag("--all-acceptance", run_all, "run every bundled scenario");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitParseError;
    }

    try {
        if (pot->parsed())
            return cmd_potential(pot_measure, pot_n, pot_p, pot_alpha, pot_at, pot_riesz,
                                 pot_tol, pot_json);
        if (expo->parsed())
            return cmd_exponents(ex_p, ex_q1, ex_q2, ex_kappa, ex_c1, ex_J, ex_json);
        if (chk->parsed())
            return cmd_check(chk_ids, chk_measure, chk_n, chk_p, chk_alpha, chk_q1, chk_q2,
                             chk_s, chk_radius, chk_json);
        if (slv->parsed() || run->parsed()) {
            if (run->parsed() && run_all) {
                bool ok = true;
                for (const RegistryEntry& e : scenario_registry()) {
                    std::ostringstream sink;
                    Scenario sc;
                    int code;
                    try {
                        sc = scenario_from_json(json::parse(e.json_text));
                        code = run_scenario(sc, sc_out.empty() ? "" : sc_out + "/" + e.name)
                                   .exit_code;
                    } catch (const std::invalid_argument&) {
                        code = kExitValidationError;
                    } catch (const AccuracyError&) {
                        code = kExitNumericError;
                    } catch (const SolverError&) {
                        code = kExitNumericError;
                    }
                    const bool match = code == e.expected_exit;
                    ok = ok && match;
                    std::cout << (match ? "[ok]   " : "[FAIL] ") << e.name << " (exit "
                              << code << ", expected " << e.expected_exit << ")\n";
                }
                return ok ? kExitOk : kExitChecksFailed;
            }
            if (sc_ref.empty()) {
                std::cerr << diag("parse", "--scenario is required") << "\n";
                return kExitParseError;
            }
            Scenario sc;
            try {
                sc = load_scenario(sc_ref);
            } catch (const json::exception& e) {
                std::cerr << diag("parse", e.what()) << "\n";
                return kExitParseError;
            }
            if (sc_tol > 0.0) sc.solver.tol = sc_tol;
            if (!run_grid.empty() && !parse_grid_spec(run_grid, sc.grid)) {
                std::cerr << diag("parse", "bad --grid, expected min:max:points") << "\n";
                return kExitParseError;
            }
            const RunOutcome out = run_scenario(sc, sc_out);
            if (out.exit_code != kExitOk)
                std::cerr << diag("checks", "scenario did not pass; see " + out.output_dir)
                          << "\n";
            else
                std::cout << "ok: artifacts in " << out.output_dir << "\n";
            return out.exit_code;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << diag("validation", e.what()) << "\n";
        return kExitValidationError;
    } catch (const AccuracyError& e) {
        std::cerr << diag("numeric", e.what()) << "\n";
        return kExitNumericError;
    } catch (const SolverError& e) {
        std::cerr << diag("numeric", e.what()) << "\n";
        return kExitNumericError;
    }
    return kExitParseError;
}
