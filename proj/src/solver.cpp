#include "wolffpot/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wolffpot/errors.hpp"

namespace wolffpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

RadialFunction zero_like(const std::vector<double>& grid) {
    return RadialFunction(grid, std::vector<double>(grid.size(), 0.0), 0.0, 0.0);
}

// Smallest ratio rhs_i / lhs_i over nodes with lhs_i > 0 (+inf if none).
double min_ratio(const RadialFunction& rhs, const RadialFunction& lhs) {
    double r = kInf;
    for (size_t i = 0; i < lhs.size(); ++i)
        if (lhs.values()[i] > 0.0) r = std::min(r, rhs.values()[i] / lhs.values()[i]);
    return r;
}

double max_ratio(const RadialFunction& num, const RadialFunction& den, size_t* at = nullptr) {
    double r = 0.0;
    for (size_t i = 0; i < den.size(); ++i) {
        if (den.values()[i] > 0.0) {
            const double q = num.values()[i] / den.values()[i];
            if (q > r) {
                r = q;
                if (at) *at = i;
            }
        } else if (num.values()[i] > 0.0) {
            if (at) *at = i;
            return kInf;
        }
    }
    return r;
}

}  // namespace

double SandwichConstants::overall() const {
    return std::max({1.0, lower_u, upper_u, lower_v, upper_v});
}

Barriers build_barriers(const Params& params, const MeasurePtr& m, double kappa_hint,
                        const std::vector<double>& grid, const SolverConfig& config) {
    validate(params);
    if (!(kappa_hint > 0.0)) throw std::invalid_argument("kappa_hint must be > 0");

    Barriers b;
    b.wolff_sigma = wolff_profile(params, *m, grid, config.quad);
    if (b.wolff_sigma.is_zero()) {
        b.under_u = b.under_v = b.over_u = b.over_v = zero_like(grid);
        b.lambda1 = subsolution_scale(params.p, params.q1, params.q2, kappa_hint);
        b.lambda2 = 1.0;
        return b;
    }

    const Exponents ex = gamma_exponents(params.p, params.q1, params.q2);
    const double pm = params.p - 1.0;
    const RadialFunction base_u = b.wolff_sigma.pow(ex.gamma1);
    const RadialFunction base_v = b.wolff_sigma.pow(ex.gamma2);

    // Subsolution scale: with under = lambda (base_u, base_v), both sides of
    // the Claim-2 inequalities are exact powers of lambda, so one potential
    // evaluation per component suffices for the whole search.
    const RadialFunction Pu =
        wolff_profile(params, *weight_measure(m, base_v, params.q1), grid, config.quad);
    const RadialFunction Pv =
        wolff_profile(params, *weight_measure(m, base_u, params.q2), grid, config.quad);
    const double ru = min_ratio(Pu, base_u);  // need lambda^{1-q1/(p-1)} <= ru
    const double rv = min_ratio(Pv, base_v);

    double lambda1 = subsolution_scale(params.p, params.q1, params.q2, kappa_hint);
    const double eu = 1.0 - params.q1 / pm, ev = 1.0 - params.q2 / pm;
    while (std::pow(lambda1, eu) > ru || std::pow(lambda1, ev) > rv) {
        lambda1 *= 0.5;
        if (lambda1 < 1e-280)
            throw SolverError(SolverError::Kind::degenerate_measure,
                              "build_barriers: lambda1 underflow (degenerate measure)");
    }

    const RadialFunction Fu = b.wolff_sigma + base_u;
    const RadialFunction Fv = b.wolff_sigma + base_v;
    const RadialFunction Qu =
        wolff_profile(params, *weight_measure(m, Fv, params.q1), grid, config.quad);
    const RadialFunction Qv =
        wolff_profile(params, *weight_measure(m, Fu, params.q2), grid, config.quad);
    const double su = max_ratio(Qu, Fu);  // need lambda^{1-q1/(p-1)} >= su
    const double sv = max_ratio(Qv, Fv);
    if (!std::isfinite(su) || !std::isfinite(sv))
        throw SolverError(SolverError::Kind::supersolution_failure,
                          "build_barriers: supersolution ratio unbounded");

    double lambda2 = 1.0;
    while (std::pow(lambda2, eu) < su || std::pow(lambda2, ev) < sv || lambda2 < lambda1) {
        lambda2 *= 2.0;
        if (lambda2 > config.lambda2_cap)
            throw SolverError(
                SolverError::Kind::supersolution_failure,
                "build_barriers: lambda2 exceeded its cap; the measure likely violates "
                "the capacity/weaker growth conditions");
    }

    b.lambda1 = lambda1;
    b.lambda2 = lambda2;
    b.under_u = base_u.scaled(lambda1);
    b.under_v = base_v.scaled(lambda1);
    b.over_u = Fu.scaled(lambda2);
    b.over_v = Fv.scaled(lambda2);
    return b;
}

std::pair<SolutionPair, IterationTrace> iterate(const Params& params, const MeasurePtr& m,
                                                const Barriers& barriers,
                                                const std::vector<double>& grid,
                                                const SolverConfig& config) {
    validate(params);
    if (!(config.tol > 0.0) || config.max_steps < 1)
        throw std::invalid_argument("iterate: need tol > 0 and max_steps >= 1");

    IterationTrace trace;
    SolutionPair pair;
    pair.params = params;

    RadialFunction u = barriers.under_u;
    RadialFunction v = barriers.under_v;
    trace.u_iterates.push_back(u);
    trace.v_iterates.push_back(v);

    auto step_profile = [&](const RadialFunction& w, double q) {
        return wolff_profile(params, *weight_measure(m, w, q), grid, config.quad);
    };
    auto check_monotone = [&](const RadialFunction& next, const RadialFunction& prev,
                              int step, const char* which) {
        const double slack = config.grid_abs_tol + config.grid_rel_tol * next.max_value();
        for (size_t i = 0; i < next.size(); ++i) {
            const double incr = next.values()[i] - prev.values()[i];
            if (incr < -slack)
                throw SolverError(SolverError::Kind::monotonicity_failure,
                                  std::string("iterate: ") + which + " decreased by " +
                                      fmt(-incr) + " at r=" + fmt(grid[i]) + ", step " +
                                      std::to_string(step));
        }
    };
    auto within_barriers = [&](const RadialFunction& f, const RadialFunction& lo,
                               const RadialFunction& hi) {
        const double slack = config.grid_abs_tol + config.grid_rel_tol * hi.max_value();
        for (size_t i = 0; i < f.size(); ++i) {
            if (f.values()[i] > hi.values()[i] + slack) return false;
            if (f.values()[i] < lo.values()[i] - slack) return false;
        }
        return true;
    };

    bool converged = false;
    for (int j = 1; j <= config.max_steps; ++j) {
        RadialFunction u_next = step_profile(v, params.q1);
        RadialFunction v_next = step_profile(u, params.q2);
        check_monotone(u_next, u, j, "u");
        check_monotone(v_next, v, j, "v");
        if (!within_barriers(u_next, barriers.under_u, barriers.over_u) ||
            !within_barriers(v_next, barriers.under_v, barriers.over_v))
            trace.barrier_ok = false;

        IterationStep st;
        st.step = j;
        st.sup_increment_u = RadialFunction::sup_rel_diff(u_next, u);
        st.sup_increment_v = RadialFunction::sup_rel_diff(v_next, v);
        trace.steps.push_back(st);
        u = std::move(u_next);
        v = std::move(v_next);
        trace.u_iterates.push_back(u);
        trace.v_iterates.push_back(v);

        if (std::max(st.sup_increment_u, st.sup_increment_v) < config.tol) {
            converged = true;
            break;
        }
    }

    // Fixed-point residual of the returned pair (one extra half-step).
    const RadialFunction u_fix = step_profile(v, params.q1);
    const RadialFunction v_fix = step_profile(u, params.q2);
    pair.residual_u = RadialFunction::sup_rel_diff(u_fix, u);
    pair.residual_v = RadialFunction::sup_rel_diff(v_fix, v);

    // Per-step residuals: the fixed-point residual after step j equals the
    // sup increment of step j+1; the last row uses the extra evaluation.
    for (size_t i = 0; i + 1 < trace.steps.size(); ++i) {
        trace.steps[i].residual_u = trace.steps[i + 1].sup_increment_u;
        trace.steps[i].residual_v = trace.steps[i + 1].sup_increment_v;
    }
    if (!trace.steps.empty()) {
        trace.steps.back().residual_u = pair.residual_u;
        trace.steps.back().residual_v = pair.residual_v;
    }

    pair.u = std::move(u);
    pair.v = std::move(v);
    pair.converged = converged;
    return {std::move(pair), std::move(trace)};
}

ConditionReport verify_sandwich(const SolutionPair& pair, const MeasurePtr& m,
                                const Params& params, bool constants_search,
                                SandwichConstants* constants,
                                const RadialFunction* wolff_sigma,
                                const QuadratureConfig& qc) {
    ConditionReport rep;
    rep.condition = "sandwich";
    const Exponents ex = gamma_exponents(params.p, params.q1, params.q2);

    RadialFunction ws_local;
    if (!wolff_sigma) {
        ws_local = wolff_profile(params, *m, pair.u.radii(), qc);
        wolff_sigma = &ws_local;
    }
    const RadialFunction& ws = *wolff_sigma;
    rep.probes = std::to_string(ws.size()) + " grid nodes";

    SandwichConstants c;
    if (ws.is_zero() && pair.u.is_zero() && pair.v.is_zero()) {
        rep.pass = true;
        rep.constant = 1.0;
        rep.detail = "zero measure";
        if (constants) *constants = c;
        return rep;
    }

    const RadialFunction pow_u = ws.pow(ex.gamma1);
    const RadialFunction pow_v = ws.pow(ex.gamma2);
    const RadialFunction brk_u = ws + pow_u;
    const RadialFunction brk_v = ws + pow_v;

    // Symbolic divergence screening at the grid ends.
    const double slack = 1e-9;
    auto divergent = [&](const RadialFunction& num, const RadialFunction& den,
                         const char* side) {
        if (num.tail_exponent() > den.tail_exponent() + slack)
            throw SolverError(SolverError::Kind::sandwich_failure,
                              std::string("sandwich constant diverges (") + side +
                                  ") toward r -> inf");
        if (num.inner_exponent() < den.inner_exponent() - slack)
            throw SolverError(SolverError::Kind::sandwich_failure,
                              std::string("sandwich constant diverges (") + side +
                                  ") toward r -> 0");
    };
    divergent(pow_u, pair.u, "lower u");
    divergent(pair.u, brk_u, "upper u");
    divergent(pow_v, pair.v, "lower v");
    divergent(pair.v, brk_v, "upper v");

    size_t at = 0, worst = 0;
    c.lower_u = max_ratio(pow_u, pair.u, &at);
    worst = at;
    c.upper_u = max_ratio(pair.u, brk_u, &at);
    if (c.upper_u > c.lower_u) worst = at;
    c.lower_v = max_ratio(pow_v, pair.v, &at);
    c.upper_v = max_ratio(pair.v, brk_v, &at);

    if (!std::isfinite(c.lower_u) || !std::isfinite(c.upper_u) || !std::isfinite(c.lower_v) ||
        !std::isfinite(c.upper_v))
        throw SolverError(SolverError::Kind::sandwich_failure,
                          "sandwich constant unbounded on the grid");

    rep.constant = c.overall();
    rep.worst_node = pair.u.radii()[worst];
    rep.pass = true;
    if (constants_search)
        rep.detail = "lower_u=" + fmt(c.lower_u) + " upper_u=" + fmt(c.upper_u) +
                     " lower_v=" + fmt(c.lower_v) + " upper_v=" + fmt(c.upper_v);
    if (constants) *constants = c;
    return rep;
}

SolveResult solve(const Params& params, const MeasurePtr& m,
                  const std::vector<double>& grid, const SolverConfig& config) {
    validate(params);
    SolveResult out;
    out.effective_measure = params.mode == Params::Mode::pde_equivalent
                                ? scale_measure(m, std::pow(params.K, params.p - 1.0))
                                : m;
    const MeasurePtr& sigma = out.effective_measure;
    if (!sigma->radial())
        throw std::invalid_argument("solve: system solving requires a radially symmetric measure");

    // Precondition checks (Dirac-like data is refused here).
    ConditionReport fin = finiteness_condition(sigma, params, config.quad);
    out.reports.push_back(fin);
    std::vector<double> cap_radii;
    for (double r : make_log_grid(grid.front(), grid.back(), 16)) cap_radii.push_back(r);
    ConditionReport cap = capacity_ball_scaling(sigma, params, cap_radii);
    out.reports.push_back(cap);
    const MassTail mt = sigma->tail();
    const double li_radius =
        std::min(grid.back(), mt.compact() ? 2.0 * std::max(mt.support_radius, grid.front())
                                           : grid.back());
    ConditionReport li = local_integrability(sigma, params, 1.0, li_radius, config.quad);
    out.reports.push_back(li);
    if (!fin.pass || !cap.pass || !li.pass) {
        std::string failed;
        for (const auto& r : {fin, cap, li})
            if (!r.pass) failed += (failed.empty() ? "" : ", ") + r.condition;
        throw SolverError(SolverError::Kind::condition_failure,
                          "solve: precondition check failed: " + failed);
    }

    out.barriers = build_barriers(params, sigma, config.kappa_hint, grid, config);
    auto [pair, trace] = iterate(params, sigma, out.barriers, grid, config);
    out.pair = std::move(pair);
    out.trace = std::move(trace);

    ConditionReport sw = verify_sandwich(out.pair, sigma, params, true, &out.sandwich,
                                         &out.barriers.wolff_sigma, config.quad);
    out.reports.push_back(sw);

    // Lemma-3.2-style lower bound at the empirical kappa: sample the
    // composition exponents the bootstrap actually uses and take the worst.
    const Exponents ex = gamma_exponents(params.p, params.q1, params.q2);
    const double pm = params.p - 1.0;
    if (out.barriers.wolff_sigma.is_zero()) {
        ConditionReport lb;
        lb.condition = "lower_bound";
        lb.pass = true;
        lb.detail = "zero measure";
        out.reports.push_back(lb);
        out.lower_bound_u = zero_like(grid);
        out.lower_bound_v = zero_like(grid);
        return out;
    }
    std::vector<double> rset = {params.q1,
                                params.q2,
                                params.q1 * ex.gamma2,
                                params.q2 * ex.gamma1,
                                params.q1 * (params.q2 / pm + 1.0),
                                params.q2 * (params.q1 / pm + 1.0)};
    const double rlo = *std::min_element(rset.begin(), rset.end());
    const double rhi = *std::max_element(rset.begin(), rset.end());
    rset.push_back(rlo + (rhi - rlo) / 3.0);
    rset.push_back(rlo + 2.0 * (rhi - rlo) / 3.0);
    std::sort(rset.begin(), rset.end());
    rset.erase(std::unique(rset.begin(), rset.end()), rset.end());

    double kappa_emp = kInf;
    std::string kappa_detail;
    for (double r : rset) {
        const ConditionReport kr = kappa_estimate(sigma, params, r, grid, config.quad);
        if (!kr.pass)
            throw SolverError(SolverError::Kind::condition_failure,
                              "solve: kappa estimate failed at r=" + fmt(r));
        kappa_emp = std::min(kappa_emp, kr.constant);
        kappa_detail += (kappa_detail.empty() ? "" : " ") + fmt(kr.constant) + "@r=" + fmt(r);
    }
    out.kappa_emp = kappa_emp;
    const double D = ex.denom;
    out.lower_const_u = std::pow(
        kappa_emp, params.q1 * pm * (pm * pm + 2.0 * pm * params.q2 + params.q1 * params.q2) /
                       (D * D));
    out.lower_const_v = std::pow(
        kappa_emp, params.q2 * pm * (pm * pm + 2.0 * pm * params.q1 + params.q1 * params.q2) /
                       (D * D));
    out.lower_bound_u = out.barriers.wolff_sigma.pow(ex.gamma1).scaled(out.lower_const_u);
    out.lower_bound_v = out.barriers.wolff_sigma.pow(ex.gamma2).scaled(out.lower_const_v);

    ConditionReport lb;
    lb.condition = "lower_bound";
    lb.probes = "kappa samples: " + kappa_detail;
    const double lb_slack = 1e-6;
    lb.pass = true;
    double worst_margin = kInf;
    for (size_t i = 0; i < grid.size(); ++i) {
        const double bu = out.lower_bound_u.values()[i];
        const double bv = out.lower_bound_v.values()[i];
        const double mu = bu > 0.0 ? out.pair.u.values()[i] / bu : kInf;
        const double mv = bv > 0.0 ? out.pair.v.values()[i] / bv : kInf;
        const double margin = std::min(mu, mv);
        if (margin < worst_margin) {
            worst_margin = margin;
            lb.worst_node = grid[i];
        }
        if (margin < 1.0 - lb_slack) lb.pass = false;
    }
    lb.constant = out.lower_const_u;
    lb.detail = "kappa_emp=" + fmt(kappa_emp) + " min(u/C(Wsigma)^g1, v/C~(Wsigma)^g2)=" +
                fmt(worst_margin);
    out.reports.push_back(lb);
    return out;
}

}  // namespace wolffpot
