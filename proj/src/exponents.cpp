#include "wolffpot/exponents.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wolffpot {

namespace {

void check_pq(double p, double q1, double q2) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("p must lie in (1, inf)");
    if (!(q1 > 0.0) || !(q1 < p - 1.0))
        throw std::invalid_argument("q1 must lie in (0, p-1)");
    if (!(q2 > 0.0) || !(q2 < p - 1.0))
        throw std::invalid_argument("q2 must lie in (0, p-1)");
}

}  // namespace

Exponents gamma_exponents(double p, double q1, double q2) {
    check_pq(p, q1, q2);
    const double pm = p - 1.0;
    Exponents e;
    e.denom = pm * pm - q1 * q2;
    e.gamma1 = pm * (pm + q1) / e.denom;
    e.gamma2 = pm * (pm + q2) / e.denom;
    e.contraction_ratio = q1 * q2 / (pm * pm);
    return e;
}

LowerBoundSequence lower_bound_sequence(double p, double q1, double q2,
                                        double kappa, double c1, int J,
                                        double early_exit_tol) {
    check_pq(p, q1, q2);
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("kappa must be a positive real");
    if (!(c1 > 0.0) || !std::isfinite(c1))
        throw std::invalid_argument("c1 must be a positive real");
    if (J < 1) throw std::invalid_argument("J must be >= 1");

    const double pm = p - 1.0;
    const double ratio = q1 * q2 / (pm * pm);
    const double log_kappa = std::log(kappa);
    const Exponents e = gamma_exponents(p, q1, q2);

    LowerBoundSequence seq;
    seq.kappa = kappa;
    seq.c1 = c1;
    seq.gamma1_limit = e.gamma1;
    seq.const_limit = std::exp(
        log_kappa * q1 * pm * (pm * pm + 2.0 * pm * q2 + q1 * q2) / (e.denom * e.denom));

    double delta = 1.0;
    double log_c = std::log(c1);
    seq.deltas.push_back(delta);
    seq.consts.push_back(c1);
    for (int j = 2; j <= J; ++j) {
        const double log_c_next =
            ratio * log_c + log_kappa * q1 * (pm + 2.0 * q2 * delta) / (pm * pm);
        const double delta_next = (q1 / pm) * ((q2 / pm) * delta + 1.0) + 1.0;
        const bool settled = std::abs(delta_next - delta) < early_exit_tol &&
                             std::abs(log_c_next - log_c) < early_exit_tol &&
                             early_exit_tol > 0.0;
        delta = delta_next;
        log_c = log_c_next;
        seq.deltas.push_back(delta);
        seq.consts.push_back(std::exp(log_c));
        if (settled) break;
    }
    return seq;
}

double subsolution_scale(double p, double q1, double q2, double kappa) {
    check_pq(p, q1, q2);
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("kappa must be a positive real");
    const double g2 = gamma_exponents(p, q1, q2).gamma2;
    const double pm = p - 1.0;
    return std::min(std::pow(kappa, q1 * g2 / (pm - q1)),
                    std::pow(kappa, q2 * g2 / (pm - q2)));
}

const Params& validate(const Params& params) {
    if (params.n < 2)
        throw std::invalid_argument("n must be an integer >= 2");
    if (!(params.p > 1.0) || !std::isfinite(params.p))
        throw std::invalid_argument("p must lie in (1, inf)");
    if (!(params.q1 > 0.0) || !(params.q1 < params.p - 1.0))
        throw std::invalid_argument("q1 out of range (0, p-1)");
    if (!(params.q2 > 0.0) || !(params.q2 < params.p - 1.0))
        throw std::invalid_argument("q2 out of range (0, p-1)");
    if (params.mode == Params::Mode::pde_equivalent) {
        if (params.p >= static_cast<double>(params.n))
            throw std::invalid_argument("p >= n: nonexistence");
        if (params.alpha != 1.0)
            throw std::invalid_argument("pde_equivalent mode requires alpha = 1");
        if (!(params.K > 0.0) || !std::isfinite(params.K))
            throw std::invalid_argument("K must be a positive real");
    }
    if (!(params.alpha > 0.0))
        throw std::invalid_argument("alpha must be > 0");
    if (!(params.alpha < static_cast<double>(params.n) / params.p))
        throw std::invalid_argument("alpha >= n/p");
    return params;
}

}  // namespace wolffpot
