#include "wolffpot/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wolffpot/exponents.hpp"
#include "wolffpot/geometry.hpp"
#include "wolffpot/quadrature.hpp"

namespace wolffpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace

ConditionReport finiteness_condition(const MeasurePtr& mp, const Params& params,
                                     const QuadratureConfig& qc) {
    const Measure& m = *mp;
    ConditionReport rep;
    rep.condition = "finiteness";
    const double chi = params.chi();
    const double kexp = 1.0 / (params.p - 1.0);
    const MassTail tail = m.tail();

    if (m.total_mass() == 0.0) {
        rep.pass = true;
        rep.probes = "zero measure";
        return rep;
    }

    const bool growing = !tail.compact() && tail.coeff > 0.0 && tail.growth_exponent > 0.0;
    const double beta = growing ? tail.growth_exponent : 0.0;
    rep.probes = "tail exponent " + fmt(beta) + " vs n-alpha*p = " + fmt(chi);
    if (beta >= chi) {
        rep.pass = false;
        rep.constant = kInf;
        rep.detail = beta > chi ? "mass growth exponent >= n - alpha p: divergent tail"
                                : "borderline growth: logarithmically divergent tail";
        rep.worst_node = tail.power_radius;
        return rep;
    }
    rep.pass = true;

    // Numeric value of the tail integral on [1, T] plus the closed-form
    // remainder, recorded as a diagnostic.
    const Point origin(m.dim(), 0.0);
    const double T = std::max(2.0, tail.power_radius * 4.0);
    quad::Options opt;
    opt.rel_tol = qc.rel_tol;
    opt.abs_tol = qc.abs_tol;
    const auto res = quad::integrate(
        [&](double s) {
            const double t = std::exp(s);
            const double mass = m.ball_mass(origin, t, qc.rel_tol);
            return mass <= 0.0 ? 0.0 : std::pow(mass * std::pow(t, -chi), kexp);
        },
        0.0, std::log(T), opt);
    double remainder;
    if (tail.compact() || tail.coeff == 0.0) {
        const double e = chi * kexp;
        remainder = std::pow(tail.total(), kexp) * std::pow(std::max(T, tail.support_radius), -e) / e;
        if (T < tail.support_radius) {
            // between T and the support edge: bound by total mass (recorded, not asserted)
            remainder += std::pow(tail.total(), kexp) *
                         (std::pow(T, -e) - std::pow(tail.support_radius, -e)) / e;
        }
    } else {
        const double e = (chi - beta) * kexp;
        remainder = std::pow(tail.mass_at(T) / std::pow(T, beta), kexp) * std::pow(T, -e) / e;
    }
    rep.constant = res.value + remainder;
    return rep;
}

ConditionReport weaker_condition_lambda(const MeasurePtr& mp, const Params& params,
                                        const std::vector<double>& grid,
                                        const QuadratureConfig& qc) {
    const Measure& m = *mp;
    validate(params);
    ConditionReport rep;
    rep.condition = "weaker_condition";
    rep.probes = std::to_string(grid.size()) + " grid nodes in [" + fmt(grid.front()) +
                 ", " + fmt(grid.back()) + "]";

    if (m.total_mass() == 0.0) {
        rep.pass = true;
        rep.constant = 0.0;
        rep.detail = "zero measure";
        return rep;
    }

    const Exponents ex = gamma_exponents(params.p, params.q1, params.q2);
    const RadialFunction ws = wolff_profile(params, m, grid, qc);

    const RadialFunction lhs1 =
        wolff_profile(params, *weight_measure(mp, ws, ex.gamma2 * params.q1),
                      grid, qc);
    const RadialFunction lhs2 =
        wolff_profile(params, *weight_measure(mp, ws, ex.gamma1 * params.q2),
                      grid, qc);
    const RadialFunction rhs1 = ws + ws.pow(ex.gamma1);
    const RadialFunction rhs2 = ws + ws.pow(ex.gamma2);

    double lambda = 0.0, worst = grid.front();
    for (size_t i = 0; i < grid.size(); ++i) {
        for (const auto& [lhs, rhs] : {std::pair{&lhs1, &rhs1}, std::pair{&lhs2, &rhs2}}) {
            const double num = lhs->values()[i], den = rhs->values()[i];
            if (den <= 0.0) {
                if (num > 0.0) {
                    rep.pass = false;
                    rep.constant = kInf;
                    rep.worst_node = grid[i];
                    rep.detail = "ratio undefined: zero bracket with positive left side";
                    return rep;
                }
                continue;
            }
            const double ratio = num / den;
            if (ratio > lambda) {
                lambda = ratio;
                worst = grid[i];
            }
        }
    }

    // Symbolic divergence beyond the grid: compare decay/blow-up exponents.
    const double slack = 1e-9;
    const bool tail_div = lhs1.tail_exponent() > rhs1.tail_exponent() + slack ||
                          lhs2.tail_exponent() > rhs2.tail_exponent() + slack;
    const bool inner_div = lhs1.inner_exponent() < rhs1.inner_exponent() - slack ||
                           lhs2.inner_exponent() < rhs2.inner_exponent() - slack;

    rep.constant = lambda;
    rep.worst_node = worst;
    if (tail_div || inner_div) {
        rep.pass = false;
        rep.detail = std::string("ratio diverges toward ") +
                     (tail_div ? "r -> inf" : "r -> 0") + " (exponent comparison)";
        return rep;
    }
    rep.pass = std::isfinite(lambda);
    return rep;
}

ConditionReport kappa_estimate(const MeasurePtr& mp, const Params& params, double r_exponent,
                               const std::vector<double>& grid, const QuadratureConfig& qc) {
    const Measure& m = *mp;
    if (!(r_exponent > 0.0)) throw std::invalid_argument("kappa_estimate: r_exponent must be > 0");
    ConditionReport rep;
    rep.condition = "kappa";
    rep.probes = "r = " + fmt(r_exponent) + ", " + std::to_string(grid.size()) + " grid nodes";

    if (m.total_mass() == 0.0) {
        rep.pass = true;
        rep.constant = 0.0;
        rep.detail = "zero measure: both sides vanish";
        return rep;
    }
    if (!m.radial()) throw std::invalid_argument("kappa_estimate: measure must be radial");

    const double pm = params.p - 1.0;
    const RadialFunction ws = wolff_profile(params, m, grid, qc);
    const RadialFunction composed =
        wolff_profile(params, *weight_measure(mp, ws, r_exponent), grid, qc);

    double min_ratio = kInf, worst = grid.front();
    for (size_t i = 0; i < grid.size(); ++i) {
        const double den = std::pow(ws.values()[i], r_exponent / pm + 1.0);
        if (den <= 0.0) continue;
        const double ratio = composed.values()[i] / den;
        if (ratio < min_ratio) {
            min_ratio = ratio;
            worst = grid[i];
        }
    }
    rep.worst_node = worst;
    if (!std::isfinite(min_ratio)) {
        rep.pass = false;
        rep.detail = "no positive probe";
        return rep;
    }
    rep.constant = std::pow(min_ratio, pm / r_exponent);
    rep.pass = rep.constant > 0.0;
    return rep;
}

ConditionReport local_integrability(const MeasurePtr& mp, const Params& params, double s,
                                    double ball_radius, const QuadratureConfig& qc) {
    const Measure& m = *mp;
    if (!(s > 0.0)) throw std::invalid_argument("local_integrability: s must be > 0");
    if (!(ball_radius > 0.0))
        throw std::invalid_argument("local_integrability: ball_radius must be > 0");
    ConditionReport rep;
    rep.condition = "local_integrability";
    rep.probes = "s = " + fmt(s) + ", ball radius " + fmt(ball_radius);

    if (m.total_mass() == 0.0) {
        rep.pass = true;
        rep.constant = 0.0;
        rep.detail = "zero measure";
        return rep;
    }

    if (const auto* atoms = m.atoms()) {
        double total = 0.0;
        for (const Atom& a : *atoms) {
            if (a.weight <= 0.0 || norm(a.location) >= ball_radius) continue;
            const double w = wolff(params, m, a.location, qc);
            if (!std::isfinite(w)) {
                rep.pass = false;
                rep.constant = kInf;
                rep.worst_node = norm(a.location);
                rep.detail = "Wolff potential infinite at an atom of positive mass";
                return rep;
            }
            total += a.weight * std::pow(w, s);
        }
        rep.pass = true;
        rep.constant = total;
        return rep;
    }

    if (!m.has_shell_density())
        throw std::invalid_argument("local_integrability: measure must be radial or atomic");

    // Radial reduction: int_0^R g(rho) area(rho) W(rho)^s drho, with the
    // piece below the grid handled by the power laws of both factors.
    const MassTail tail = m.tail();
    const double upper = std::min(ball_radius, tail.support_radius);
    std::vector<double> kinks = m.density_kinks();
    const double lo_grid = kinks.empty() ? upper * 1e-6
                                         : *std::min_element(kinks.begin(), kinks.end());
    const double lo = std::min(lo_grid, upper);

    const double e0 = m.inner_mass_exponent();  // mass exponent: n + density inner exp
    const std::vector<double> wgrid =
        make_log_grid(std::max(lo * 1e-2, upper * 1e-9), upper, 96);
    const RadialFunction ws = wolff_profile(params, m, wgrid, qc);

    // Symbolic head: integrand ~ rho^{e0 - 1 + s * inner_exp(W)}.
    const double head_exp = (std::isfinite(e0) ? e0 : 1.0) + s * ws.inner_exponent();
    if (std::isfinite(e0) && head_exp <= 0.0) {
        rep.pass = false;
        rep.constant = kInf;
        rep.worst_node = 0.0;
        rep.detail = "integrand not integrable at the origin (exponent " + fmt(head_exp) + ")";
        return rep;
    }

    std::vector<double> pts = {lo, upper};
    for (double k : kinks)
        if (k > lo && k < upper) pts.push_back(k);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    quad::Options opt;
    opt.rel_tol = std::max(qc.rel_tol, 1e-10);
    opt.abs_tol = qc.abs_tol;
    const double surf = m.dim() * geom::unit_ball_volume(m.dim());
    quad::Result res = quad::integrate_segments(
        [&](double rho) {
            const double g = m.shell_density(rho);
            if (g <= 0.0) return 0.0;
            return g * surf * std::pow(rho, m.dim() - 1) * std::pow(ws(rho), s);
        },
        pts, opt);
    // Analytic head below lo (both factors are pure powers there).
    const double g_lo = m.shell_density(lo);
    double head = 0.0;
    if (g_lo > 0.0 && head_exp > 0.0)
        head = g_lo * surf * std::pow(lo, m.dim() - 1) * std::pow(ws(lo), s) * lo / head_exp;

    rep.constant = res.value + head;
    rep.pass = res.converged && std::isfinite(rep.constant);
    if (!res.converged) rep.detail = "quadrature did not converge";
    return rep;
}

ConditionReport capacity_ball_scaling(const MeasurePtr& mp, const Params& params,
                                      const std::vector<double>& radii) {
    const Measure& m = *mp;
    if (radii.empty() || *std::min_element(radii.begin(), radii.end()) <= 0.0)
        throw std::invalid_argument("capacity_ball_scaling: radii must be positive");
    ConditionReport rep;
    rep.condition = "capacity_ball_scaling";
    const double chi = params.chi();
    rep.probes = std::to_string(radii.size()) + " radii in [" +
                 fmt(*std::min_element(radii.begin(), radii.end())) + ", " +
                 fmt(*std::max_element(radii.begin(), radii.end())) + "]";

    const Point origin(m.dim(), 0.0);
    double sup = 0.0, worst = radii.front();
    for (double r : radii) {
        const double proxy = m.ball_mass(origin, r, 1e-8) / std::pow(r, chi);
        if (proxy > sup) {
            sup = proxy;
            worst = r;
        }
    }
    rep.constant = sup;
    rep.worst_node = worst;

    if (m.total_mass() == 0.0) {
        rep.pass = true;
        rep.detail = "zero measure";
        return rep;
    }

    // Symbolic screening of both ends of the scaling law.
    if (m.point_mass(origin) > 0.0) {
        rep.pass = false;
        rep.detail = "atom at the origin: proxy diverges like r^{-(n-alpha p)} as r -> 0";
        return rep;
    }
    if (const auto* atoms = m.atoms()) {
        for (const Atom& a : *atoms)
            if (a.weight > 0.0) {
                rep.pass = false;
                rep.worst_node = norm(a.location);
                rep.detail = "positive atomic mass: points have zero (alpha,p)-capacity";
                return rep;
            }
    }
    const double e0 = m.inner_mass_exponent();
    if (e0 < chi) {
        rep.pass = false;
        rep.detail = "mass near the origin grows like r^" + fmt(e0) +
                     " < r^{n-alpha p}: proxy diverges as r -> 0";
        return rep;
    }
    const MassTail tail = m.tail();
    const bool growing = !tail.compact() && tail.coeff > 0.0 && tail.growth_exponent > 0.0;
    if (growing && tail.growth_exponent > chi) {
        rep.pass = false;
        rep.detail = "mass growth exponent exceeds n - alpha p: proxy diverges as r -> inf";
        return rep;
    }
    rep.pass = true;
    return rep;
}

}  // namespace wolffpot
