#include "wolffpot/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

namespace wolffpot::geom {

namespace {

void require_dim(int n) {
    if (n < 2) throw std::invalid_argument("dimension must be >= 2");
}

// Regularized incomplete beta for x <= 0.5 via the hypergeometric series
//   I_x(a,b) = x^a (1-x)^b / (a B(a,b)) * sum_k ((a+b)_k / (a+1)_k) x^k,
// which converges geometrically (ratio <= x).  The cap-fraction evaluations
// sit in the innermost quadrature loops, where boost's general-purpose
// routine costs too much.
double ibeta_lower_half(double a, double b, double x, double log_beta_ab) {
    if (x <= 0.0) return 0.0;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 200; ++k) {
        term *= (a + b + k) / (a + 1.0 + k) * x;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    const double log_pre =
        a * std::log(x) + b * std::log1p(-x) - std::log(a) - log_beta_ab;
    return std::exp(log_pre) * sum;
}

// log B((n-1)/2, 1/2) and log B(1/2, (n-1)/2), cached per dimension.
double log_beta_half(int n) {
    static constexpr int kMax = 64;
    static const auto table = [] {
        std::array<double, kMax> t{};
        for (int i = 2; i < kMax; ++i)
            t[i] = std::lgamma(0.5 * (i - 1)) + std::lgamma(0.5) - std::lgamma(0.5 * i);
        return t;
    }();
    if (n < kMax) return table[n];
    return std::lgamma(0.5 * (n - 1)) + std::lgamma(0.5) - std::lgamma(0.5 * n);
}

// Cap fraction from cos(theta*) with precomputed stable 1 -+ c.  Near the
// hemisphere (c ~ 0) the direct incomplete beta sits at x ~ 1 where it loses
// digits; the complement identity I_x(a,b) = 1 - I_{1-x}(b,a) with
// 1 - x = c^2 keeps full precision there.
double cap_fraction_from_cos(int n, double c, double one_minus_c, double one_plus_c) {
    // Emptiness/fullness must be decided from the stable products: for tiny
    // caps c rounds to exactly 1 while one_minus_c still carries the answer.
    if (one_minus_c <= 0.0) return 0.0;
    if (one_plus_c <= 0.0) return 1.0;
    if (n == 2) {
        // theta = 2 asin(sqrt((1-c)/2)), complemented past the hemisphere
        if (one_minus_c <= 1.0)
            return 2.0 * std::asin(std::sqrt(0.5 * one_minus_c)) / M_PI;
        return 1.0 - 2.0 * std::asin(std::sqrt(std::max(0.0, 0.5 * one_plus_c))) / M_PI;
    }
    if (n == 3) return 0.5 * std::clamp(one_minus_c, 0.0, 2.0);
    const double s2 = std::clamp(one_minus_c * one_plus_c, 0.0, 1.0);  // sin^2(theta)
    const double lb = log_beta_half(n);
    double half;
    if (s2 <= 0.5)
        half = 0.5 * ibeta_lower_half(0.5 * (n - 1), 0.5, s2, lb);
    else
        half = 0.5 * (1.0 - ibeta_lower_half(0.5, 0.5 * (n - 1),
                                             std::clamp(c * c, 0.0, 1.0), lb));
    return c >= 0.0 ? half : 1.0 - half;
}

}  // namespace

double unit_ball_volume(int n) {
    require_dim(n);
    // pi^{n/2} / Gamma(n/2 + 1)
    return std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0));
}

double sphere_area(int n, double r) {
    require_dim(n);
    if (!(r >= 0.0)) throw std::invalid_argument("sphere radius must be >= 0");
    return n * unit_ball_volume(n) * std::pow(r, n - 1);
}

double cap_area_fraction(int n, double cos_theta) {
    require_dim(n);
    const double c = std::clamp(cos_theta, -1.0, 1.0);
    return cap_fraction_from_cos(n, c, 1.0 - c, 1.0 + c);
}

double sphere_in_ball_fraction(int n, double s, double d, double t) {
    require_dim(n);
    if (!(s >= 0.0 && d >= 0.0 && t > 0.0))
        throw std::invalid_argument("sphere_in_ball_fraction: need s,d >= 0 and t > 0");
    if (s == 0.0) return d < t ? 1.0 : 0.0;
    if (d == 0.0) return s < t ? 1.0 : 0.0;
    if (s + d <= t) return 1.0;       // sphere inside the ball
    if (s >= d + t) return 0.0;       // sphere outside
    if (d >= s + t) return 0.0;       // ball too far to reach the sphere
    // Stable cos(theta*): compute 1 -+ c from factored forms to avoid
    // cancellation when theta* is close to 0 or pi.
    const double one_minus_c = (t - d + s) * (t + d - s) / (2.0 * s * d);
    const double one_plus_c = (s + d - t) * (s + d + t) / (2.0 * s * d);
    const double c = std::clamp(0.5 * (one_plus_c - one_minus_c), -1.0, 1.0);
    return cap_fraction_from_cos(n, c, one_minus_c, one_plus_c);
}

double sphere_in_ball_fraction_offset(int n, double u, double d, double t) {
    require_dim(n);
    const double s = d + u;
    if (!(s >= 0.0 && d >= 0.0 && t > 0.0))
        throw std::invalid_argument("sphere_in_ball_fraction_offset: bad arguments");
    if (s == 0.0) return d < t ? 1.0 : 0.0;
    if (d == 0.0) return s < t ? 1.0 : 0.0;
    if (u <= -t || u >= t) return 0.0;   // nearest sphere point |u| away from x
    if (s + d <= t) return 1.0;          // farthest sphere point still inside
    const double one_minus_c = (t + u) * (t - u) / (2.0 * s * d);
    const double one_plus_c = (s + d - t) * (s + d + t) / (2.0 * s * d);
    const double c = std::clamp(0.5 * (one_plus_c - one_minus_c), -1.0, 1.0);
    return cap_fraction_from_cos(n, c, one_minus_c, one_plus_c);
}

double ball_cap_volume(int n, double R, double h) {
    require_dim(n);
    if (!(R > 0.0)) throw std::invalid_argument("cap: ball radius must be > 0");
    if (h <= 0.0) return 0.0;
    const double full = unit_ball_volume(n) * std::pow(R, n);
    if (h >= 2.0 * R) return full;
    if (h > R) return full - ball_cap_volume(n, R, 2.0 * R - h);
    // x = 1 - (1 - h/R)^2 = (h/R)(2 - h/R)
    const double u = h / R;
    const double x = std::clamp(u * (2.0 - u), 0.0, 1.0);
    return 0.5 * full * boost::math::ibeta(0.5 * (n + 1), 0.5, x);
}

double ball_intersection_volume(int n, double r1, double r2, double d) {
    require_dim(n);
    if (!(r1 >= 0.0 && r2 >= 0.0 && d >= 0.0))
        throw std::invalid_argument("lens: radii and distance must be >= 0");
    if (r1 == 0.0 || r2 == 0.0) return 0.0;
    if (d >= r1 + r2) return 0.0;
    const double rmin = std::min(r1, r2);
    if (d <= std::abs(r1 - r2)) return unit_ball_volume(n) * std::pow(rmin, n);
    // Separating hyperplane at signed distance a1 from center 1.
    const double a1 = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    const double a2 = d - a1;
    return ball_cap_volume(n, r1, r1 - a1) + ball_cap_volume(n, r2, r2 - a2);
}

}  // namespace wolffpot::geom
