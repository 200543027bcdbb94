#pragma once

#include <functional>
#include <vector>

namespace wolffpot::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;   // estimated absolute error bound
    int evaluations = 0;
    bool converged = true;
};

struct Options {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;       // extra absolute budget, on top of rel_tol * |value|
    int max_segments = 2000;    // total number of G7-K15 panels allowed
};

/// Globally adaptive Gauss-Kronrod (G7-K15) integration of f over the
/// union of segments [pts[0], pts[1]], [pts[1], pts[2]], ...
///
/// The worst panel (by error estimate) is bisected until
///   sum(err) <= max(rel_tol * |sum(value)|, abs_tol)
/// or the panel budget runs out.  Termination is driven by the relative
/// criterion, so results scale exactly when the integrand is scaled.
Result integrate_segments(const std::function<double(double)>& f,
                          const std::vector<double>& pts, const Options& opt);

/// Single-interval convenience wrapper.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt);

/// As integrate_segments, but throws AccuracyError when not converged.
double integrate_or_throw(const std::function<double(double)>& f,
                          const std::vector<double>& pts, const Options& opt,
                          const char* context);

}  // namespace wolffpot::quad
