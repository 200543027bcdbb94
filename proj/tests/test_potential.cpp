#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "wolffpot/measure.hpp"
#include "wolffpot/potential.hpp"

using namespace wolffpot;

namespace {

Params make_params(int n, double p, double alpha) {
    Params pr;
    pr.n = n;
    pr.p = p;
    pr.alpha = alpha;
    return pr;
}

double dirac_closed_form(int n, double p, double alpha, double r) {
    const double chi = n - alpha * p;
    return (p - 1.0) / chi * std::pow(r, -chi / (p - 1.0));
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("Dirac closed forms across parameter sets") {
    const MeasurePtr dirac3 = make_atomic(3, {Atom{{0, 0, 0}, 1.0}});
    CHECK(wolff(make_params(3, 2.0, 1.0), *dirac3, radial_point(2.0, 3)) ==
          doctest::Approx(0.5).epsilon(1e-14));
    const MeasurePtr dirac5 = make_atomic(5, {Atom{Point(5, 0.0), 1.0}});
    CHECK(wolff(make_params(5, 3.0, 1.0), *dirac5, radial_point(4.0, 5)) ==
          doctest::Approx(0.25).epsilon(1e-14));
    const MeasurePtr dirac4 = make_atomic(4, {Atom{Point(4, 0.0), 1.0}});
    for (double r : {0.3, 1.0, 7.0})
        CHECK(wolff(make_params(4, 2.0, 1.5), *dirac4, radial_point(r, 4)) ==
              doctest::Approx(dirac_closed_form(4, 2.0, 1.5, r)).epsilon(1e-14));
}

TEST_CASE("Dirac weight scales by w^{1/(p-1)}") {
    const MeasurePtr d = make_atomic(3, {Atom{{0, 0, 0}, 8.0}});
    CHECK(wolff(make_params(3, 3.0, 0.5), *d, radial_point(1.0, 3)) ==
          doctest::Approx(std::sqrt(8.0) * dirac_closed_form(3, 3.0, 0.5, 1.0))
              .epsilon(1e-13));
}

TEST_CASE("multi-atom stairs agree with the direct sum for p = 2") {
    // For p = 2 the Wolff potential is additive over atoms.
    const MeasurePtr m =
        make_atomic(3, {Atom{{0, 0, 0}, 1.0}, Atom{{1, 1, 0}, 2.0}, Atom{{0, 0, -2}, 0.7}});
    const Params pr = make_params(3, 2.0, 1.0);
    const Point x = {0.4, -0.3, 0.9};
    double direct = 0.0;
    for (const Atom& a : *m->atoms()) direct += a.weight / distance(a.location, x);
    CHECK(wolff(pr, *m, x) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("ball-Lebesgue at the origin: 2 pi closed form") {
    const MeasurePtr ball = make_ball_lebesgue({0, 0, 0}, 1.0, 1.0);
    const double got = wolff(make_params(3, 2.0, 1.0), *ball, Point{0, 0, 0});
    CHECK(got == doctest::Approx(2.0 * M_PI).epsilon(1e-9));
}

TEST_CASE("zero measure gives zero potential") {
    const MeasurePtr z = make_atomic(3, {});
    CHECK(wolff(make_params(3, 2.0, 1.0), *z, radial_point(1.0, 3)) == 0.0);
    CHECK(riesz(*z, 2.0, 3, radial_point(1.0, 3)) == 0.0);
}

TEST_CASE("infinite potentials are detected symbolically") {
    // atom at the probe
    const MeasurePtr d = make_atomic(3, {Atom{{0, 0, 0}, 1.0}});
    CHECK(wolff(make_params(3, 2.0, 1.0), *d, Point{0, 0, 0}) == kInf);
    // growing tail: sigma(B(0,t)) ~ t^3 vs chi = 1
    auto grid = make_log_grid(0.1, 10.0, 24);
    std::vector<double> ones(grid.size(), 1.0);
    const MeasurePtr grow = make_radial_density(3, RadialFunction(grid, ones, 0.0, 0.0),
                                                kInf);
    CHECK(wolff(make_params(3, 2.0, 1.0), *grow, radial_point(1.0, 3)) == kInf);
}

TEST_CASE("Riesz potential: Dirac and layer-cake consistency") {
    const MeasurePtr d = make_atomic(3, {Atom{{0, 0, 0}, 1.0}});
    CHECK(riesz(*d, 2.0, 3, radial_point(2.0, 3)) == doctest::Approx(0.5).epsilon(1e-14));
    // direct convolution for a two-atom measure
    const MeasurePtr two = make_atomic(4, {Atom{Point(4, 0.0), 1.5}, Atom{{1, 0, 0, 0}, 0.5}});
    const Point x = {0.2, 0.7, 0, 0};
    double direct = 0.0;
    for (const Atom& a : *two->atoms())
        direct += a.weight * std::pow(distance(a.location, x), 2.5 - 4.0);
    CHECK(riesz(*two, 2.5, 4, x) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("Riesz-Wolff identity on atomic and ball measures") {
    QuadratureConfig qc;
    qc.rel_tol = 1e-11;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.05, 4.0);
    const MeasurePtr measures[] = {
        make_atomic(3, {Atom{{0, 0, 0}, 1.0}, Atom{{0.5, 0.5, 0}, 2.0}}),
        make_ball_lebesgue({0, 0, 0}, 1.0, 1.0),
        make_ball_lebesgue({0.4, 0, 0}, 0.8, 2.0),
    };
    for (const auto& m : measures) {
        for (double alpha : {0.7, 1.0, 1.3}) {
            Params pr = make_params(3, 2.0, alpha);
            for (int i = 0; i < 6; ++i) {
                const Point x = {unif(rng), 0.3, -0.2};
                if (m->point_mass(x) > 0.0) continue;
                const double lhs = riesz(*m, 2.0 * alpha, 3, x, qc);
                const double rhs = (3.0 - 2.0 * alpha) * wolff(pr, *m, x, qc);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("homogeneity: wolff(a sigma) = a^{1/(p-1)} wolff(sigma)") {
    QuadratureConfig qc;
    qc.rel_tol = 1e-12;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    const MeasurePtr base = make_ball_lebesgue({0, 0, 0}, 1.0, 1.0);
    const Params pr = make_params(3, 2.5, 1.0);
    const Point x = radial_point(1.7, 3);
    const double w0 = wolff(pr, *base, x, qc);
    for (int i = 0; i < 20; ++i) {
        const double a = std::pow(10.0, logu(rng));
        const double got = wolff(pr, *scale_measure(base, a), x, qc);
        CHECK(got == doctest::Approx(std::pow(a, 1.0 / 1.5) * w0).epsilon(1e-10));
    }
}

TEST_CASE("monotonicity in the measure") {
    const Params pr = make_params(3, 2.0, 1.0);
    const MeasurePtr small = make_ball_lebesgue({0, 0, 0}, 1.0, 1.0);
    const MeasurePtr bigger_density = make_ball_lebesgue({0, 0, 0}, 1.0, 2.0);
    const MeasurePtr bigger_ball = make_ball_lebesgue({0, 0, 0}, 1.5, 1.0);
    for (double r : {0.0, 0.5, 1.0, 2.0, 10.0}) {
        const Point x = radial_point(r, 3);
        const double w = wolff(pr, *small, x);
        CHECK(wolff(pr, *bigger_density, x) >= w);
        CHECK(wolff(pr, *bigger_ball, x) >= w);
    }
}

TEST_CASE("far-field decay constant") {
    // wolff(x) |x|^{chi/(p-1)} -> ((p-1)/chi) sigma(R^n)^{1/(p-1)}
    const MeasurePtr m = make_ball_lebesgue({0, 0, 0}, 1.0, 2.0);
    for (auto [p, alpha] : {std::pair{2.0, 1.0}, std::pair{3.0, 0.6}}) {
        const Params pr = make_params(3, p, alpha);
        const double chi = pr.chi();
        const double r = 1e3;
        const double want =
            (p - 1.0) / chi * std::pow(m->total_mass(), 1.0 / (p - 1.0));
        const double got =
            wolff(pr, *m, radial_point(r, 3)) * std::pow(r, chi / (p - 1.0));
        CHECK(got == doctest::Approx(want).epsilon(1e-3));
    }
}

TEST_CASE("off-center ball value against the nested-quadrature oracle") {
    // spec example: BallLebesgue(0,1,1), n=3, p=2, alpha=1 probed at r=2
    const MeasurePtr m = make_ball_lebesgue({0, 0, 0}, 1.0, 1.0);
    const Params pr = make_params(3, 2.0, 1.0);
    auto g = [](double s) { return s <= 1.0 ? 1.0 : 0.0; };
    for (double r : {0.5, 1.0, 2.0}) {
        const double want = oracle::radial_potential(g, 3, 1.0, r, pr.chi(), 1.0, 1.0);
        const double got = wolff(pr, *m, radial_point(r, 3));
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("profile equals pointwise values and carries the analytic decay") {
    const MeasurePtr d = make_atomic(3, {Atom{{0, 0, 0}, 1.0}});
    const Params pr = make_params(3, 2.0, 1.0);
    const auto grid = make_log_grid(0.1, 50.0, 20);
    const RadialFunction prof = wolff_profile(pr, *d, grid);
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(prof.values()[i] ==
              doctest::Approx(dirac_closed_form(3, 2.0, 1.0, grid[i])).epsilon(1e-8));
    CHECK(prof.tail_exponent() == doctest::Approx(-1.0));
    CHECK(prof.inner_exponent() == doctest::Approx(-1.0));
    // extrapolation matches the closed form well beyond the grid
    CHECK(prof(5000.0) == doctest::Approx(dirac_closed_form(3, 2.0, 1.0, 5000.0))
                              .epsilon(1e-8));
}

TEST_CASE("profile homogeneity: scaled measure lifts the profile by a^{1/(p-1)}") {
    const MeasurePtr m = make_ball_lebesgue({0, 0, 0}, 1.0, 1.0);
    const Params pr = make_params(3, 2.0, 1.0);
    const auto grid = make_log_grid(0.1, 10.0, 16);
    const RadialFunction base = wolff_profile(pr, *m, grid);
    const RadialFunction lifted = wolff_profile(pr, *scale_measure(m, 9.0), grid);
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(lifted.values()[i] == doctest::Approx(9.0 * base.values()[i]).epsilon(1e-11));
}

TEST_CASE("profile of a weighted measure against the oracle") {
    const MeasurePtr ball = make_ball_lebesgue({0, 0, 0}, 1.0, 1.0);
    auto wgrid = make_log_grid(0.01, 100.0, 48);
    std::vector<double> wv(wgrid.size());
    for (size_t i = 0; i < wgrid.size(); ++i) wv[i] = 1.0 / (1.0 + wgrid[i]);
    const RadialFunction w(wgrid, wv, 0.0, -1.0);
    const MeasurePtr wm = weight_measure(ball, w, 0.5);
    const Params pr = make_params(3, 2.0, 1.0);
    auto g = [&](double s) { return s <= 1.0 ? std::sqrt(w(s)) : 0.0; };
    for (double r : {0.3, 1.0, 3.0}) {
        const double want = oracle::radial_potential(g, 3, 1.0, r, 1.0, 1.0, 1.0);
        CHECK(wolff(pr, *wm, radial_point(r, 3)) == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("invalid parameters are rejected") {
    const MeasurePtr m = make_ball_lebesgue({0, 0, 0}, 1.0, 1.0);
    CHECK_THROWS_AS(wolff(make_params(3, 1.0, 0.5), *m, radial_point(1, 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(wolff(make_params(3, 2.0, 2.0), *m, radial_point(1, 3)),
                    std::invalid_argument);  // alpha >= n/p
    CHECK_THROWS_AS(riesz(*m, 3.5, 3, radial_point(1, 3)), std::invalid_argument);
    CHECK_THROWS_AS(riesz(*m, 0.0, 3, radial_point(1, 3)), std::invalid_argument);
    Params bad = make_params(3, 2.0, 1.0);
    QuadratureConfig qc;
    qc.rel_tol = -1.0;
    CHECK_THROWS_AS(wolff(bad, *m, radial_point(1, 3), qc), std::invalid_argument);
}

TEST_CASE("non-radial measures are rejected by wolff_profile") {
    const MeasurePtr off = make_ball_lebesgue({1, 0, 0}, 1.0, 1.0);
    CHECK_THROWS_AS(wolff_profile(make_params(3, 2.0, 1.0), *off, make_log_grid(0.1, 10, 16)),
                    std::invalid_argument);
}
