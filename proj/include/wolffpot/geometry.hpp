#pragma once

namespace wolffpot::geom {

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Surface area of the sphere of radius r in R^n (the boundary of B(0,r)).
double sphere_area(int n, double r);

/// Fraction of the unit sphere S^{n-1} covered by the polar cap
/// { polar angle <= theta }, given c = cos(theta) in [-1, 1].
///
/// n = 2 reduces to theta/pi; n = 3 to (1 - c)/2; general n uses the
/// regularized incomplete beta function I_{sin^2 theta}((n-1)/2, 1/2).
double cap_area_fraction(int n, double cos_theta);

/// Fraction of the sphere { |y| = s } lying inside the open ball B(x, t)
/// with d = |x|.  Piecewise: 1 when the sphere is contained in the ball,
/// 0 when disjoint, a cap fraction with
///   cos(theta*) = (s^2 + d^2 - t^2) / (2 s d)
/// in between.  The degenerate cases s = 0 and d = 0 are containment tests.
double sphere_in_ball_fraction(int n, double s, double d, double t);

/// Same fraction parameterized by the offset u = s - d from the probe
/// radius.  The factors (t - d + s) = (t + u) and (t + d - s) = (t - u) are
/// then exact, which matters when t is many orders of magnitude below d.
double sphere_in_ball_fraction_offset(int n, double u, double d, double t);

/// Volume of the cap of height h (0 <= h <= 2R) cut from the ball of
/// radius R in R^n.
double ball_cap_volume(int n, double R, double h);

/// Volume of the intersection of two balls of radii r1, r2 in R^n whose
/// centers are a distance d apart (the "lens" volume).
double ball_intersection_volume(int n, double r1, double r2, double d);

}  // namespace wolffpot::geom
