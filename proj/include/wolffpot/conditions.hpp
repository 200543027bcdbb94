#pragma once

#include <string>
#include <vector>

#include "wolffpot/measure.hpp"
#include "wolffpot/potential.hpp"

namespace wolffpot {

/// Outcome of one hypothesis check.  pass = true means the defining
/// inequality held at every probe within tolerance; the empirical constant
/// is the lambda / kappa / proxy / integral value the check produced.
struct ConditionReport {
    std::string condition;
    bool pass = false;
    double constant = 0.0;
    std::string probes;
    double worst_node = 0.0;
    std::string detail;
    bool indeterminate = false;
};

/// Finiteness of int_1^inf (sigma(B(0,t)) t^{-(n-alpha p)})^{1/(p-1)} dt/t.
/// Decided symbolically from the declared mass-growth exponent (no finite
/// computation can certify divergence); the numeric value of the integral
/// is recorded as the constant when finite.
ConditionReport finiteness_condition(const MeasurePtr& m, const Params& params,
                                     const QuadratureConfig& qc = {});

/// Smallest lambda with
///   W((W sigma)^{gamma2 q1} dsigma) <= lambda (W sigma + (W sigma)^{gamma1}),
///   W((W sigma)^{gamma1 q2} dsigma) <= lambda (W sigma + (W sigma)^{gamma2})
/// over the grid; fails when the ratio diverges toward either end.
ConditionReport weaker_condition_lambda(const MeasurePtr& m, const Params& params,
                                        const std::vector<double>& grid,
                                        const QuadratureConfig& qc = {});

/// Empirical constant of the composed-potential lower bound
///   W((W sigma)^r dsigma) >= kappa^{r/(p-1)} (W sigma)^{r/(p-1)+1}:
/// kappa_emp = (min over the grid of the ratio of the two sides)^{(p-1)/r}.
ConditionReport kappa_estimate(const MeasurePtr& m, const Params& params,
                               double r_exponent, const std::vector<double>& grid,
                               const QuadratureConfig& qc = {});

/// Local sigma-integrability of (W sigma)^s over B(0, ball_radius).
ConditionReport local_integrability(const MeasurePtr& m, const Params& params, double s,
                                    double ball_radius, const QuadratureConfig& qc = {});

/// Ball-scaling capacity proxy: sup_r sigma(B(0,r)) / r^{n - alpha p} over the
/// radii list, with symbolic divergence screening toward r -> 0 and r -> inf.
/// A pass is necessary-flavored only; the capacity condition over all compact
/// sets is not computable.
ConditionReport capacity_ball_scaling(const MeasurePtr& m, const Params& params,
                                      const std::vector<double>& radii);

}  // namespace wolffpot
