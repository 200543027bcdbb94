#include "wolffpot/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "wolffpot/errors.hpp"

namespace wolffpot {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> kKnownChecks = {
    "finiteness", "weaker_condition", "kappa", "local_integrability",
    "capacity_ball_scaling"};

// 17 significant digits, '.' decimal point, no separators.
std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_atomic(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string());
        os << content;
    }
    fs::rename(tmp, path);
}

std::string diag_line(const char* kind, const std::string& msg) {
    json j;
    j["error"] = kind;
    j["message"] = msg;
    return "wolffpot: " + j.dump();
}

}  // namespace

json to_json(const ConditionReport& rep) {
    json j;
    j["condition"] = rep.condition;
    j["pass"] = rep.pass;
    j["constant"] = std::isfinite(rep.constant) ? json(rep.constant) : json("inf");
    j["probes"] = rep.probes;
    j["worst_node"] = rep.worst_node;
    if (!rep.detail.empty()) j["detail"] = rep.detail;
    if (rep.indeterminate) j["indeterminate"] = true;
    return j;
}

RadialFunction radial_function_from_json(const json& j) {
    std::vector<double> radii, values;
    if (j.contains("grid")) {  // array of [r, value] pairs
        for (const auto& pair : j.at("grid")) {
            radii.push_back(pair.at(0).get<double>());
            values.push_back(pair.at(1).get<double>());
        }
    } else {
        radii = j.at("radii").get<std::vector<double>>();
        values = j.at("values").get<std::vector<double>>();
    }
    return RadialFunction(radii, values, j.at("inner_exponent").get<double>(),
                          j.at("tail_exponent").get<double>());
}

MeasurePtr measure_from_json(const json& j, int dim) {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "atomic") {
        std::vector<Atom> atoms;
        for (const auto& a : j.value("atoms", json::array())) {
            Atom atom;
            atom.location = a.at("location").get<std::vector<double>>();
            atom.weight = a.at("weight").get<double>();
            atoms.push_back(std::move(atom));
        }
        return make_atomic(dim, std::move(atoms));
    }
    if (variant == "ball_lebesgue") {
        Point center = j.contains("center") ? j.at("center").get<std::vector<double>>()
                                            : Point(dim, 0.0);
        return make_ball_lebesgue(std::move(center), j.at("radius").get<double>(),
                                  j.at("density").get<double>());
    }
    if (variant == "radial_density") {
        const double support = j.contains("support_radius") && !j.at("support_radius").is_null()
                                   ? j.at("support_radius").get<double>()
                                   : std::numeric_limits<double>::infinity();
        return make_radial_density(dim, radial_function_from_json(j), support);
    }
    if (variant == "weighted") {
        return weight_measure(measure_from_json(j.at("base"), dim),
                              radial_function_from_json(j.at("weight")),
                              j.at("exponent").get<double>());
    }
    if (variant == "scaled") {
        return scale_measure(measure_from_json(j.at("base"), dim),
                             j.at("factor").get<double>());
    }
    throw std::invalid_argument("unknown measure variant: " + variant);
}

Params params_from_json(const json& j) {
    Params p;
    p.n = j.at("n").get<int>();
    p.p = j.at("p").get<double>();
    p.alpha = j.at("alpha").get<double>();
    p.q1 = j.at("q1").get<double>();
    p.q2 = j.at("q2").get<double>();
    const std::string mode = j.value("mode", "integral");
    if (mode == "integral")
        p.mode = Params::Mode::integral;
    else if (mode == "pde_equivalent")
        p.mode = Params::Mode::pde_equivalent;
    else
        throw std::invalid_argument("unknown mode: " + mode);
    p.K = j.value("K", 1.0);
    return p;
}

Scenario scenario_from_json(const json& j) {
    Scenario sc;
    sc.name = j.at("name").get<std::string>();
    sc.params = params_from_json(j.at("params"));

    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        sc.grid.r_min = g.value("r_min", sc.grid.r_min);
        sc.grid.r_max = g.value("r_max", sc.grid.r_max);
        sc.grid.points = g.value("points", sc.grid.points);
        sc.grid.spacing = g.value("spacing", sc.grid.spacing);
    }
    if (!(sc.grid.r_min > 0.0) || !(sc.grid.r_max > sc.grid.r_min))
        throw std::invalid_argument("grid: need 0 < r_min < r_max");
    if (sc.grid.points < 16) throw std::invalid_argument("grid: points must be >= 16");
    if (sc.grid.spacing != "log")
        throw std::invalid_argument("grid: only log spacing is supported");

    if (j.contains("solver")) {
        const auto& s = j.at("solver");
        sc.solver.tol = s.value("tol", sc.solver.tol);
        sc.solver.max_steps = s.value("max_steps", sc.solver.max_steps);
        sc.solver.kappa_hint = s.value("kappa_hint", sc.solver.kappa_hint);
        if (s.contains("rel_tol")) sc.solver.quad.rel_tol = s.at("rel_tol").get<double>();
    }
    if (!(sc.solver.tol > 0.0) || sc.solver.max_steps < 1 || !(sc.solver.kappa_hint > 0.0))
        throw std::invalid_argument("solver: invalid tol/max_steps/kappa_hint");

    sc.checks = j.value("checks", std::vector<std::string>{});
    for (const auto& c : sc.checks)
        if (!kKnownChecks.count(c))
            throw std::invalid_argument("unknown condition id in checks: " + c);

    sc.measure = measure_from_json(j.at("measure"), sc.params.n);
    sc.measure_tag = j.at("measure").at("variant").get<std::string>();
    sc.output_dir = j.value("output_dir", std::string{});
    return sc;
}

namespace {

std::string profiles_csv(const SolveResult& s, const std::vector<double>& grid) {
    std::ostringstream os;
    os << "r,wolff_sigma,under_u,under_v,over_u,over_v,u,v,lower_bound_u,lower_bound_v\n";
    for (size_t i = 0; i < grid.size(); ++i) {
        os << num17(grid[i]) << ',' << num17(s.barriers.wolff_sigma.values()[i]) << ','
           << num17(s.barriers.under_u.values()[i]) << ','
           << num17(s.barriers.under_v.values()[i]) << ','
           << num17(s.barriers.over_u.values()[i]) << ','
           << num17(s.barriers.over_v.values()[i]) << ',' << num17(s.pair.u.values()[i])
           << ',' << num17(s.pair.v.values()[i]) << ','
           << num17(s.lower_bound_u.values()[i]) << ','
           << num17(s.lower_bound_v.values()[i]) << '\n';
    }
    return os.str();
}

std::string trace_csv(const IterationTrace& t) {
    std::ostringstream os;
    os << "step,sup_increment_u,sup_increment_v,residual_u,residual_v\n";
    for (const auto& st : t.steps)
        os << st.step << ',' << num17(st.sup_increment_u) << ','
           << num17(st.sup_increment_v) << ',' << num17(st.residual_u) << ','
           << num17(st.residual_v) << '\n';
    return os.str();
}

json params_to_json(const Params& p) {
    json j;
    j["n"] = p.n;
    j["p"] = p.p;
    j["alpha"] = p.alpha;
    j["q1"] = p.q1;
    j["q2"] = p.q2;
    j["mode"] = to_string(p.mode);
    if (p.mode == Params::Mode::pde_equivalent) j["K"] = p.K;
    return j;
}

}  // namespace

RunOutcome run_scenario(const Scenario& sc, const std::string& out_override) {
    RunOutcome out;
    validate(sc.params);

    std::string outdir = out_override;
    if (outdir.empty()) outdir = sc.output_dir;
    if (outdir.empty()) {
        if (const char* env = std::getenv("WOLFFPOT_OUT_DIR"))
            outdir = std::string(env) + "/" + sc.name;
        else
            outdir = "out/" + sc.name;
    }
    out.output_dir = outdir;

    const std::vector<double> grid = make_log_grid(sc.grid.r_min, sc.grid.r_max, sc.grid.points);

    json report;
    report["scenario"] = sc.name;
    report["params"] = params_to_json(sc.params);
    report["grid"] = {{"r_min", sc.grid.r_min}, {"r_max", sc.grid.r_max},
                      {"points", sc.grid.points}, {"spacing", sc.grid.spacing}};
    report["measure"] = sc.measure_tag;

    // In pde_equivalent mode every check and estimate refers to the scaled
    // measure K^{p-1} sigma (the system the solver actually fixes).
    const MeasurePtr sigma = sc.params.mode == Params::Mode::pde_equivalent
                                 ? scale_measure(sc.measure, std::pow(sc.params.K, sc.params.p - 1.0))
                                 : sc.measure;

    bool all_pass = true;
    json conditions = json::array();
    const Exponents ex = gamma_exponents(sc.params.p, sc.params.q1, sc.params.q2);
    for (const std::string& id : sc.checks) {
        ConditionReport rep;
        if (id == "finiteness") {
            rep = finiteness_condition(sigma, sc.params, sc.solver.quad);
        } else if (id == "weaker_condition") {
            rep = weaker_condition_lambda(sigma, sc.params, grid, sc.solver.quad);
        } else if (id == "kappa") {
            rep = kappa_estimate(sigma, sc.params, sc.params.q1 * ex.gamma2, grid,
                                 sc.solver.quad);
        } else if (id == "local_integrability") {
            const MassTail mt = sigma->tail();
            const double radius = std::min(
                grid.back(), mt.compact() ? 2.0 * std::max(mt.support_radius, grid.front())
                                          : grid.back());
            rep = local_integrability(sigma, sc.params, 1.0, radius, sc.solver.quad);
        } else if (id == "capacity_ball_scaling") {
            rep = capacity_ball_scaling(sigma, sc.params, make_log_grid(grid.front(), grid.back(), 16));
        }
        all_pass = all_pass && rep.pass;
        conditions.push_back(to_json(rep));
    }

    // Solve (refusal by a precondition is recorded, not fatal).
    SolveResult solve_result;
    bool solved = false;
    try {
        solve_result = solve(sc.params, sc.measure, grid, sc.solver);
        solved = true;
    } catch (const SolverError& e) {
        if (e.kind() != SolverError::Kind::condition_failure) throw;
        out.solve_refused = true;
        all_pass = false;
        json sj;
        sj["attempted"] = true;
        sj["refused"] = true;
        sj["diagnostic"] = e.what();
        report["solve"] = sj;
    }

    if (solved) {
        for (const auto& rep : solve_result.reports) {
            all_pass = all_pass && rep.pass;
            conditions.push_back(to_json(rep));
        }
        all_pass = all_pass && solve_result.pair.converged;
        json sj;
        sj["attempted"] = true;
        sj["refused"] = false;
        sj["converged"] = solve_result.pair.converged;
        sj["steps"] = solve_result.trace.steps.size();
        sj["residual_u"] = solve_result.pair.residual_u;
        sj["residual_v"] = solve_result.pair.residual_v;
        sj["monotone_ok"] = solve_result.trace.monotone_ok;
        sj["barrier_ok"] = solve_result.trace.barrier_ok;
        sj["lambda1"] = solve_result.barriers.lambda1;
        sj["lambda2"] = solve_result.barriers.lambda2;
        sj["kappa_emp"] = solve_result.kappa_emp;
        sj["lower_const_u"] = solve_result.lower_const_u;
        sj["lower_const_v"] = solve_result.lower_const_v;
        sj["sandwich"] = {{"lower_u", solve_result.sandwich.lower_u},
                          {"upper_u", solve_result.sandwich.upper_u},
                          {"lower_v", solve_result.sandwich.lower_v},
                          {"upper_v", solve_result.sandwich.upper_v},
                          {"overall", solve_result.sandwich.overall()}};
        report["solve"] = sj;
    }

    report["conditions"] = conditions;
    report["all_pass"] = all_pass;
    out.all_checks_passed = all_pass;
    out.report = report;
    out.exit_code = all_pass ? kExitOk : kExitChecksFailed;

    if (solved) {
        write_atomic(fs::path(outdir) / "profiles.csv", profiles_csv(solve_result, grid));
        write_atomic(fs::path(outdir) / "trace.csv", trace_csv(solve_result.trace));
    }
    write_atomic(fs::path(outdir) / "report.json", report.dump(2) + "\n");

    json meta;
    meta["scenario"] = sc.name;
    meta["tool"] = "wolffpot";
    meta["version"] = "0.1.0";
    std::time_t now = std::time(nullptr);
    char ts[32];
    std::strftime(ts, sizeof ts, "%FT%TZ", std::gmtime(&now));
    meta["generated_at"] = ts;
    write_atomic(fs::path(outdir) / "meta.json", meta.dump(2) + "\n");
    return out;
}

int run_scenario_file(const std::string& path, const std::string& out_override,
                      std::ostream& diag) {
    json doc;
    try {
        std::ifstream is(path);
        if (!is) {
            diag << diag_line("parse", "cannot open scenario file: " + path) << "\n";
            return kExitParseError;
        }
        doc = json::parse(is);
    } catch (const json::exception& e) {
        diag << diag_line("parse", e.what()) << "\n";
        return kExitParseError;
    }
    try {
        Scenario sc;
        try {
            sc = scenario_from_json(doc);
        } catch (const json::exception& e) {
            diag << diag_line("parse", e.what()) << "\n";
            return kExitParseError;
        }
        const RunOutcome out = run_scenario(sc, out_override);
        if (out.exit_code != kExitOk)
            diag << diag_line("checks", "scenario checks failed; see report.json in " +
                                            out.output_dir)
                 << "\n";
        return out.exit_code;
    } catch (const std::invalid_argument& e) {
        diag << diag_line("validation", e.what()) << "\n";
        return kExitValidationError;
    } catch (const AccuracyError& e) {
        diag << diag_line("numeric", e.what()) << "\n";
        return kExitNumericError;
    } catch (const SolverError& e) {
        diag << diag_line("numeric", e.what()) << "\n";
        return kExitNumericError;
    }
}

}  // namespace wolffpot
