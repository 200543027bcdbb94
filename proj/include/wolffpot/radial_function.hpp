#pragma once

#include <cstddef>
#include <vector>

namespace wolffpot {

/// A nonnegative function of the radius, tabulated on a strictly increasing
/// grid (log-spaced by default) and interpolated in log-log coordinates.
/// Outside the grid it follows declared power laws:
///   f(r) = f(r_0)   * (r/r_0)^inner_exponent   for r < r_0,
///   f(r) = f(r_M)   * (r/r_M)^tail_exponent    for r > r_M.
///
/// Interpolation uses a local cubic through four neighboring nodes in
/// (log r, log f); segments touching a zero value fall back to linear
/// interpolation of the raw values, so f stays >= 0 everywhere.
class RadialFunction {
public:
    RadialFunction() = default;
    RadialFunction(std::vector<double> radii, std::vector<double> values,
                   double inner_exponent, double tail_exponent);

    double operator()(double r) const;

    const std::vector<double>& radii() const { return r_; }
    const std::vector<double>& values() const { return v_; }
    double inner_exponent() const { return inner_exp_; }
    double tail_exponent() const { return tail_exp_; }
    size_t size() const { return r_.size(); }
    bool empty() const { return r_.empty(); }

    /// True when every tabulated value is zero.
    bool is_zero() const;

    /// Nodewise power f^q (exponents scale by q); q = 0 gives the constant 1.
    RadialFunction pow(double q) const;

    /// Nodewise scaling a*f.
    RadialFunction scaled(double a) const;

    /// Nodewise sum; requires identical grids.  Near 0 the slower-vanishing
    /// power dominates, at infinity the slower-decaying one.
    RadialFunction operator+(const RadialFunction& other) const;

    double max_value() const;

    /// sup_i |a_i - b_i| / max(sup |a|, floor)
    static double sup_rel_diff(const RadialFunction& a, const RadialFunction& b);

private:
    struct Segment {
        bool linear = false;
        double x0 = 0.0;                 // log r_i (raw r_i for linear segments)
        double c[4] = {0, 0, 0, 0};      // polynomial in (x - x0)
    };

    void build_segments();

    std::vector<double> r_, v_;
    std::vector<double> lr_;  // log radii
    std::vector<Segment> seg_;
    double inner_exp_ = 0.0, tail_exp_ = 0.0;
};

/// Log-spaced grid with `points` nodes covering [r_min, r_max].
std::vector<double> make_log_grid(double r_min, double r_max, int points);

}  // namespace wolffpot
