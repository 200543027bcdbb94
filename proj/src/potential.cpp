#include "wolffpot/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wolffpot/errors.hpp"
#include "wolffpot/parallel.hpp"
#include "wolffpot/quadrature.hpp"

namespace wolffpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Integrand family shared by Wolff and Riesz potentials:
//   prefactor * int_0^inf (mass(B(x,t)) / t^chi)^kexp dt/t .
struct CoreSpec {
    double chi;        // t-exponent, in (0, n)
    double kexp;       // outer power: 1/(p-1) for Wolff, 1 for Riesz
    double prefactor;  // 1 for Wolff, (n - order) for Riesz
};

// int_T^inf (M t^-chi)^k dt/t for constant mass M.
double constant_mass_tail(double M, double T, const CoreSpec& cs) {
    if (M <= 0.0) return 0.0;
    const double e = cs.chi * cs.kexp;
    return std::pow(M, cs.kexp) * std::pow(T, -e) / e;
}

// int_T^inf ((shift + coeff t^beta) t^-chi)^k dt/t, first order in the
// subdominant term; T must be far enough that the ratio of the two terms
// is <= ~1e-8 (the caller arranges this).
double power_mass_tail(double shift, double coeff, double beta, double T,
                       const CoreSpec& cs) {
    const double k = cs.kexp, chi = cs.chi;
    if (coeff == 0.0) return constant_mass_tail(shift, T, cs);
    if (beta > 0.0) {
        const double lead = std::pow(coeff, k) * std::pow(T, (beta - chi) * k) /
                            ((chi - beta) * k);
        const double corr = shift == 0.0
                                ? 0.0
                                : k * std::pow(coeff, k - 1.0) * shift *
                                      std::pow(T, (beta - chi) * k - beta) /
                                      ((chi - beta) * k + beta);
        return lead + corr;
    }
    const double lead = constant_mass_tail(shift, T, cs);
    const double corr = k * std::pow(shift, k - 1.0) * coeff *
                        std::pow(T, beta - chi * k) / (chi * k - beta);
    return lead + corr;
}

// Exact assembly for purely atomic measures: the ball mass is a step
// function of t, so each stair contributes a closed-form power integral.
double atomic_core(const std::vector<Atom>& atoms, const Point& x, const CoreSpec& cs) {
    std::vector<std::pair<double, double>> jumps;  // (distance, weight)
    jumps.reserve(atoms.size());
    for (const Atom& a : atoms)
        if (a.weight > 0.0) jumps.emplace_back(distance(a.location, x), a.weight);
    if (jumps.empty()) return 0.0;
    std::sort(jumps.begin(), jumps.end());

    const double e = cs.chi * cs.kexp;
    auto G = [&](double t) { return std::pow(t, -e) / e; };

    double acc = 0.0, mass = 0.0;
    for (size_t i = 0; i < jumps.size(); ++i) {
        mass += jumps[i].second;
        // merge coincident distances
        while (i + 1 < jumps.size() && jumps[i + 1].first == jumps[i].first)
            mass += jumps[++i].second;
        const double t0 = jumps[i].first;
        const double Gnext = (i + 1 < jumps.size()) ? G(jumps[i + 1].first) : 0.0;
        acc += std::pow(mass, cs.kexp) * (G(t0) - Gnext);
    }
    return cs.prefactor * acc;
}

double potential_core(const Measure& m, const Point& x, const CoreSpec& cs,
                      const QuadratureConfig& qc) {
    qc.validate();
    if (m.total_mass() == 0.0) return 0.0;
    if (m.point_mass(x) > 0.0) return kInf;  // integrand ~ t^{-chi k - 1} at 0

    const MassTail tail = m.tail();
    const bool growing = !tail.compact() && tail.coeff > 0.0 && tail.growth_exponent > 0.0;
    if (growing && tail.growth_exponent >= cs.chi) return kInf;

    const double d = norm(x);
    if (d == 0.0 && m.inner_mass_exponent() <= cs.chi) return kInf;

    if (const auto* atoms = m.atoms()) return atomic_core(*atoms, x, cs);

    const double dn = m.nearest_support_distance(x);
    const double df = m.farthest_support_distance(x);
    const double scale = std::max({d, tail.power_radius, 1e-300});

    // End of the numeric range and the analytic tail beyond it.
    double T_end;
    if (tail.compact()) {
        T_end = df;
    } else {
        // Far enough that (a) the off-center ball mass matches the
        // origin-centered power form and (b) the subdominant tail term is
        // negligible relative to the dominant one.
        double T = (d + tail.power_radius) * qc.t_max_factor;
        if (tail.coeff != 0.0 && tail.shift != 0.0) {
            const double ratio_log =
                std::log(std::abs(tail.shift) / std::abs(tail.coeff)) + std::log(1e8);
            const double T_ratio = std::exp(ratio_log / std::abs(tail.growth_exponent));
            T = std::max(T, std::min(T_ratio, 1e200));
        }
        T_end = T;
    }

    // Start of the numeric range.
    const bool touching = !(dn > 0.0);
    double t_start = touching ? scale * qc.t_min_factor : dn;
    if (t_start >= T_end) t_start = T_end * 1e-3;

    // Decay rate of the integrand (in log t) toward t -> 0, used to bound
    // the omitted head when the probe touches the support.
    const double local_exp = d == 0.0 ? m.inner_mass_exponent() : static_cast<double>(m.dim());
    const double head_rate = (std::isfinite(local_exp) ? local_exp - cs.chi : 1.0) * cs.kexp;

    // Breakpoints where the ball mass is non-smooth in t.
    std::vector<double> crit = {t_start, T_end};
    auto add_crit = [&](double t) {
        if (t > t_start && t < T_end) crit.push_back(t);
    };
    add_crit(dn);
    add_crit(df);
    add_crit(d);
    for (double k : m.density_kinks()) {
        add_crit(std::abs(d - k));
        add_crit(d + k);
    }
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());

    // Work in s = log t; split long spans so the global refinement has seeds.
    std::vector<double> pts;
    for (size_t i = 0; i < crit.size(); ++i) {
        const double s = std::log(crit[i]);
        if (i > 0) {
            const double prev = pts.back();
            const int extra = static_cast<int>((s - prev) / 1.5);
            for (int j = 1; j <= extra; ++j)
                pts.push_back(prev + (s - prev) * j / (extra + 1));
        }
        pts.push_back(s);
    }

    const double inner_tol = qc.rel_tol * 0.3;
    auto integrand = [&](double s) {
        const double t = std::exp(s);
        const double mass = m.ball_mass(x, t, inner_tol);
        if (mass <= 0.0) return 0.0;
        return std::pow(mass * std::pow(t, -cs.chi), cs.kexp);
    };

    // The closed-form tail is known up front; granting its share of the
    // error budget to the numeric piece avoids over-resolving probes whose
    // value is tail-dominated (|x| far outside the support).
    double tail_val;
    if (tail.compact())
        tail_val = constant_mass_tail(tail.total(), T_end, cs);
    else
        tail_val = power_mass_tail(tail.shift, tail.coeff, tail.growth_exponent, T_end, cs);

    quad::Options opt;
    opt.rel_tol = qc.rel_tol * 0.5;
    opt.abs_tol = 0.25 * qc.rel_tol * tail_val;
    opt.max_segments = qc.max_subdivisions;
    quad::Result main = quad::integrate_segments(integrand, pts, opt);

    // Extend the head downward until its bound is negligible.
    double head_bound = 0.0;
    if (touching && head_rate > 0.0) {
        double lo = std::log(t_start);
        for (int rounds = 0; rounds < 40; ++rounds) {
            head_bound = integrand(lo) / head_rate;
            const double budget = 0.1 * qc.rel_tol * (std::abs(main.value) + tail_val) +
                                  0.1 * qc.abs_tol;
            if (head_bound <= budget) break;
            const double lo2 = lo - 4.0;
            const quad::Result ext = quad::integrate_segments(integrand, {lo2, lo}, opt);
            main.value += ext.value;
            main.error += ext.error;
            lo = lo2;
        }
    }

    const double value = cs.prefactor * (main.value + tail_val);
    const double err = cs.prefactor * (main.error + head_bound);
    const double target = std::max(qc.rel_tol * std::abs(value), qc.abs_tol);
    if (!(err <= std::max(target, 4.0 * std::abs(value) * 1e-15)))
        throw AccuracyError("potential: quadrature did not converge", target, err);
    return value;
}

void check_wolff_params(const Params& p) {
    if (p.n < 2) throw std::invalid_argument("n must be an integer >= 2");
    if (!(p.p > 1.0) || !std::isfinite(p.p))
        throw std::invalid_argument("p must lie in (1, inf)");
    if (!(p.alpha > 0.0) || !(p.alpha < static_cast<double>(p.n) / p.p))
        throw std::invalid_argument("alpha must lie in (0, n/p)");
}

}  // namespace

std::string to_string(Params::Mode mode) {
    return mode == Params::Mode::integral ? "integral" : "pde_equivalent";
}

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("quadrature tolerances must be > 0");
    if (!(t_min_factor > 0.0) || !(t_max_factor > 0.0) || !(t_min_factor < t_max_factor))
        throw std::invalid_argument("need 0 < t_min_factor < t_max_factor");
    if (max_subdivisions < 1)
        throw std::invalid_argument("max_subdivisions must be >= 1");
}

double wolff(const Params& params, const Measure& m, const Point& x,
             const QuadratureConfig& qc) {
    check_wolff_params(params);
    if (m.dim() != params.n)
        throw std::invalid_argument("wolff: measure dimension differs from n");
    CoreSpec cs{params.chi(), 1.0 / (params.p - 1.0), 1.0};
    return potential_core(m, x, cs, qc);
}

double riesz(const Measure& m, double order, int n, const Point& x,
             const QuadratureConfig& qc) {
    if (n < 2) throw std::invalid_argument("n must be an integer >= 2");
    if (!(order > 0.0) || !(order < static_cast<double>(n)))
        throw std::invalid_argument("riesz: order must lie in (0, n)");
    if (m.dim() != n)
        throw std::invalid_argument("riesz: measure dimension differs from n");
    CoreSpec cs{n - order, 1.0, n - order};
    return potential_core(m, x, cs, qc);
}

RadialFunction wolff_profile(const Params& params, const Measure& m,
                             const std::vector<double>& grid,
                             const QuadratureConfig& qc) {
    check_wolff_params(params);
    if (!m.radial())
        throw std::invalid_argument("wolff_profile: measure must be radially symmetric");
    if (grid.empty()) throw std::invalid_argument("wolff_profile: empty grid");

    std::vector<double> values(grid.size());
    parallel_for(grid.size(), [&](size_t i) {
        values[i] = wolff(params, m, radial_point(grid[i], params.n), qc);
    });
    for (size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("wolff_profile: potential is infinite at r=" +
                                        std::to_string(grid[i]));

    const double chi = params.chi();
    const double kexp = 1.0 / (params.p - 1.0);
    const MassTail tail = m.tail();
    const bool growing = !tail.compact() && tail.coeff > 0.0 && tail.growth_exponent > 0.0;
    const double growth = growing ? tail.growth_exponent : 0.0;
    const double tail_exp = (growth - chi) * kexp;
    const double e0 = m.inner_mass_exponent();
    const double inner_exp = std::min(0.0, (e0 - chi) * kexp);
    return RadialFunction(grid, std::move(values), inner_exp, tail_exp);
}

}  // namespace wolffpot
