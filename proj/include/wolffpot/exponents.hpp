#pragma once

#include <vector>

#include "wolffpot/potential.hpp"

namespace wolffpot {

/*
 * Closed-form exponent algebra of the sublinear system
 *   u = W_{a,p}(v^{q1} dsigma),  v = W_{a,p}(u^{q2} dsigma),  0 < q_i < p-1.
 *
 * The sandwich exponents are
 *   gamma1 = (p-1)(p-1+q1) / ((p-1)^2 - q1 q2),
 *   gamma2 = (p-1)(p-1+q2) / ((p-1)^2 - q1 q2),
 * equivalently gamma1 = (q1/(p-1)) gamma2 + 1 and gamma2 = (q2/(p-1)) gamma1 + 1.
 *
 * The lower-bound recursion (bootstrapping u >= c (W sigma)^delta) is
 *   delta_1 = 1,  delta_j = (q1/(p-1)) ((q2/(p-1)) delta_{j-1} + 1) + 1,
 *   c_j = c_{j-1}^{q1 q2/(p-1)^2} kappa^{q1 (p-1 + 2 q2 delta_{j-1})/(p-1)^2},
 * contracting at ratio q1 q2/(p-1)^2 < 1 toward delta_j -> gamma1 and
 *   c_j -> C = kappa^{ q1 (p-1) [(p-1)^2 + 2(p-1) q2 + q1 q2] / [(p-1)^2 - q1 q2]^2 }.
 */

struct Exponents {
    double gamma1;
    double gamma2;
    double denom;  // (p-1)^2 - q1 q2
    double contraction_ratio;  // q1 q2 / (p-1)^2
};

struct LowerBoundSequence {
    std::vector<double> deltas;  // delta_1 .. delta_J (or until the early exit)
    std::vector<double> consts;  // c_1 .. c_J
    double kappa;
    double c1;
    double gamma1_limit;         // closed-form limit of delta_j
    double const_limit;          // closed-form limit of c_j (seed-independent)
};

Exponents gamma_exponents(double p, double q1, double q2);

/// Runs the recursion for J steps (early exit when both increments fall
/// below early_exit_tol; pass 0 to disable).
LowerBoundSequence lower_bound_sequence(double p, double q1, double q2,
                                        double kappa, double c1, int J,
                                        double early_exit_tol = 1e-14);

/// The subsolution scale lambda1 = min{ kappa^{q1 gamma2/(p-1-q1)},
/// kappa^{q2 gamma2/(p-1-q2)} } seeding the barrier search.
double subsolution_scale(double p, double q1, double q2, double kappa);

/// Checks every Params constraint; returns its argument unchanged on
/// success, throws std::invalid_argument with a distinct diagnostic per
/// violated constraint.  pde_equivalent mode additionally requires
/// alpha = 1 and p < n (no nontrivial solutions exist for p >= n).
const Params& validate(const Params& params);

}  // namespace wolffpot
