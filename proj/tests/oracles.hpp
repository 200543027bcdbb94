#pragma once

// Independent brute-force oracles used by the tests.  These deliberately
// avoid the library's evaluation paths: spherical caps are integrated as
// sin^{n-2} theta quadratures (no incomplete beta), masses by Monte Carlo in
// Cartesian coordinates, and potentials by fixed composite Gauss-Legendre
// panels (no adaptivity, no cumulative-mass tables).

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

/// Fraction of the unit sphere S^{n-1} with polar angle <= theta, by direct
/// quadrature of sin^{n-2}.
double cap_fraction(int n, double cos_theta);

/// Fraction of { |y| = s } inside B(x, t), |x| = d, via cap_fraction.
double sphere_in_ball_fraction(int n, double s, double d, double t);

/// Monte-Carlo integral of f(|y|) over the open ball B(x, t) in R^n.
/// Returns the estimate; *stderr_out (if given) receives the standard error.
double ball_mass_mc(const std::function<double(double)>& density, int n,
                    const std::vector<double>& x, double t, std::uint64_t samples,
                    std::uint64_t seed, double* stderr_out = nullptr);

/// Monte-Carlo volume of the intersection of B(0, r1) and B(x, r2) with
/// |x| = d.
double lens_volume_mc(int n, double r1, double r2, double d, std::uint64_t samples,
                      std::uint64_t seed, double* stderr_out = nullptr);

/// sigma(B(x,t)) for a radial shell density g supported in [0, s_out],
/// |x| = d, by composite Gauss-Legendre panels.  `kinks` lists radii where
/// g is not smooth (panel boundaries are placed there).
double radial_ball_mass(const std::function<double(double)>& g, int n, double s_out,
                        double d, double t, const std::vector<double>& kinks = {});

/// Nested-quadrature potential
///   prefactor * int_0^inf (sigma(B(x,t)) t^{-chi})^{kexp} dt/t
/// for the radial shell density g supported in [0, s_out], probed at |x| = d.
double radial_potential(const std::function<double(double)>& g, int n, double s_out,
                        double d, double chi, double kexp, double prefactor,
                        const std::vector<double>& kinks = {});

}  // namespace oracle
