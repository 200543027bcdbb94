#pragma once

#include <string>
#include <vector>

#include "wolffpot/conditions.hpp"
#include "wolffpot/exponents.hpp"
#include "wolffpot/measure.hpp"
#include "wolffpot/potential.hpp"
#include "wolffpot/radial_function.hpp"

namespace wolffpot {

/*
 * Monotone successive approximation for the sublinear integral system
 *
 *   u = W_{a,p}(v^{q1} dsigma),   v = W_{a,p}(u^{q2} dsigma),
 *
 * run between numerically certified sub/supersolution barriers
 *
 *   under = lambda1 ((W sigma)^{gamma1}, (W sigma)^{gamma2}),
 *   over  = lambda2 (W sigma + (W sigma)^{gamma1}, W sigma + (W sigma)^{gamma2}).
 *
 * lambda1 is seeded from the closed-form subsolution scale and halved until
 * the subsolution inequalities hold at every grid node; lambda2 starts at 1
 * and doubles until the supersolution inequalities hold.  The iteration
 * starts at the subsolution and increases monotonically toward the minimal
 * fixed point; monotonicity and barrier confinement are recorded at every
 * step, not assumed.
 *
 * In pde_equivalent mode the system is solved with K^{p-1} sigma in place of
 * sigma, which by the homogeneity W(a mu) = a^{1/(p-1)} W(mu) is the same as
 * multiplying both right-hand sides by K; all reported estimates then refer
 * to W(K^{p-1} sigma) = K W(sigma).
 */

struct SolverConfig {
    double tol = 1e-8;            // relative sup-increment convergence threshold
    int max_steps = 500;
    double kappa_hint = 1.0;      // seed for the lambda1 search
    double grid_abs_tol = 1e-12;  // monotonicity slack (absolute)
    double grid_rel_tol = 1e-10;  // monotonicity slack (relative to sup u)
    double lambda2_cap = 1152921504606846976.0;  // 2^60
    QuadratureConfig quad;
};

struct Barriers {
    RadialFunction under_u, under_v, over_u, over_v;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    RadialFunction wolff_sigma;  // base potential on the same grid
};

struct IterationStep {
    int step = 0;
    double sup_increment_u = 0.0;  // relative sup increment of this step
    double sup_increment_v = 0.0;
    double residual_u = 0.0;       // fixed-point residual after this step
    double residual_v = 0.0;
};

struct IterationTrace {
    std::vector<IterationStep> steps;
    std::vector<RadialFunction> u_iterates;  // u_0 .. u_J
    std::vector<RadialFunction> v_iterates;
    bool monotone_ok = true;
    bool barrier_ok = true;
};

struct SolutionPair {
    RadialFunction u, v;
    Params params;
    std::string measure_tag;
    bool converged = false;
    double residual_u = 0.0;  // sup |u - W(v^{q1} dsigma)| / sup u over the grid
    double residual_v = 0.0;
};

struct SandwichConstants {
    double lower_u = 1.0;  // smallest c with u >= c^{-1} (W sigma)^{gamma1}
    double upper_u = 1.0;  // smallest c with u <= c (W sigma + (W sigma)^{gamma1})
    double lower_v = 1.0;
    double upper_v = 1.0;
    double overall() const;
};

struct SolveResult {
    SolutionPair pair;
    IterationTrace trace;
    Barriers barriers;
    SandwichConstants sandwich;
    std::vector<ConditionReport> reports;  // gates, sandwich, lower bound
    double kappa_emp = 0.0;                // min over the sampled r-exponents
    double lower_const_u = 0.0;            // C from the recursion limit at kappa_emp
    double lower_const_v = 0.0;
    RadialFunction lower_bound_u, lower_bound_v;
    MeasurePtr effective_measure;          // K^{p-1} sigma in pde mode
};

/// Builds numerically verified barriers (throws SolverError on failure).
Barriers build_barriers(const Params& params, const MeasurePtr& m, double kappa_hint,
                        const std::vector<double>& grid, const SolverConfig& config = {});

/// Runs the monotone iteration from the subsolution.  Non-convergence is
/// reported via converged = false, monotonicity violations beyond grid_tol
/// throw SolverError.
std::pair<SolutionPair, IterationTrace> iterate(const Params& params, const MeasurePtr& m,
                                                const Barriers& barriers,
                                                const std::vector<double>& grid,
                                                const SolverConfig& config = {});

/// Smallest sandwich constants for a converged pair (Brezis-Kamin style
/// two-sided estimates against powers of W sigma).
ConditionReport verify_sandwich(const SolutionPair& pair, const MeasurePtr& m,
                                const Params& params, bool constants_search,
                                SandwichConstants* constants = nullptr,
                                const RadialFunction* wolff_sigma = nullptr,
                                const QuadratureConfig& qc = {});

/// Full pipeline: precondition checks, barriers, iteration, sandwich and
/// lower-bound verification.
SolveResult solve(const Params& params, const MeasurePtr& m,
                  const std::vector<double>& grid, const SolverConfig& config = {});

}  // namespace wolffpot
