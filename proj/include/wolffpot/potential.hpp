#pragma once

#include <string>
#include <vector>

#include "wolffpot/measure.hpp"
#include "wolffpot/radial_function.hpp"

namespace wolffpot {

/*
 * Wolff and Riesz potentials of a nonnegative Radon measure sigma on R^n:
 *
 *   W_{a,p} sigma(x) = int_0^inf ( sigma(B(x,t)) / t^{n-ap} )^{1/(p-1)} dt/t,
 *   I_a sigma(x)     = int |x-y|^{a-n} dsigma(y)
 *                    = (n-a) int_0^inf sigma(B(x,t)) t^{a-n-1} dt,
 *
 * with 1 < p < inf and 0 < a < n/p (resp. 0 < a < n).  The two are linked by
 * I_{2a} sigma = (n-2a) W_{a,2} sigma.
 *
 * Both integrals are evaluated in log coordinates t = e^s.  For atomic
 * measures sigma(B(x,t)) is a step function of t and the integral is
 * assembled from closed-form pieces.  Otherwise the active t-range is
 * integrated adaptively, the range below the first support contact is exact
 * (zero) or bounded analytically, and beyond the support (or beyond the
 * declared power-law regime) the integrand is a known power of t and the
 * remainder is added in closed form.  +infinity is returned as a first-class
 * value whenever the declared tail or an atom at x makes the integral
 * diverge; the classification is symbolic, not a numeric overflow.
 */

/// Problem parameters: the quintuple (n, p, alpha, q1, q2) plus the solve
/// mode.  In pde_equivalent mode the integral system is scaled by the
/// two-sided-estimate constant K (unknown in closed form; configurable).
struct Params {
    enum class Mode { integral, pde_equivalent };

    int n = 3;
    double p = 2.0;
    double alpha = 1.0;
    double q1 = 0.5;
    double q2 = 0.5;
    Mode mode = Mode::integral;
    double K = 1.0;

    double chi() const { return n - alpha * p; }  // the t-exponent n - alpha p
};

std::string to_string(Params::Mode mode);

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double t_min_factor = 1e-6;  // head start relative to the measure/probe scale
    double t_max_factor = 1e8;   // analytic-tail switchover factor
    int max_subdivisions = 2000;

    void validate() const;
};

/// W_{alpha,p} sigma(x).  Returns +infinity when the potential diverges.
double wolff(const Params& params, const Measure& m, const Point& x,
             const QuadratureConfig& qc = {});

/// Riesz potential I_order sigma(x), 0 < order < n.
double riesz(const Measure& m, double order, int n, const Point& x,
             const QuadratureConfig& qc = {});

/// W_{alpha,p} sigma on a radial grid (measure must be radially symmetric).
/// The returned profile carries the analytic decay exponent of the far field
/// and the analytic blow-up exponent (if any) toward the origin.
RadialFunction wolff_profile(const Params& params, const Measure& m,
                             const std::vector<double>& grid,
                             const QuadratureConfig& qc = {});

}  // namespace wolffpot
