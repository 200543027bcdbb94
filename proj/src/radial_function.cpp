#include "wolffpot/radial_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wolffpot {

RadialFunction::RadialFunction(std::vector<double> radii, std::vector<double> values,
                               double inner_exponent, double tail_exponent)
    : r_(std::move(radii)),
      v_(std::move(values)),
      inner_exp_(inner_exponent),
      tail_exp_(tail_exponent) {
    if (r_.empty() || r_.size() != v_.size())
        throw std::invalid_argument("RadialFunction: radii/values size mismatch");
    if (!(r_.front() > 0.0))
        throw std::invalid_argument("RadialFunction: radii must be positive");
    for (size_t i = 0; i < r_.size(); ++i) {
        if (!std::isfinite(r_[i]) || !std::isfinite(v_[i]))
            throw std::invalid_argument("RadialFunction: non-finite entry");
        if (i > 0 && !(r_[i] > r_[i - 1]))
            throw std::invalid_argument("RadialFunction: radii must be strictly increasing");
        if (v_[i] < 0.0)
            throw std::invalid_argument("RadialFunction: values must be >= 0");
    }
    if (!std::isfinite(inner_exp_) || !std::isfinite(tail_exp_))
        throw std::invalid_argument("RadialFunction: extrapolation exponents must be finite");
    lr_.resize(r_.size());
    for (size_t i = 0; i < r_.size(); ++i) lr_[i] = std::log(r_[i]);
    build_segments();
}

// Interpolation coefficients, built once.  Runs of four or more strictly
// positive values get a C^2 not-a-knot cubic spline in (log r, log f) --
// the smoothness keeps downstream adaptive quadratures from burning panels
// on interpolation kinks, and a spline of collinear log-log data (a pure
// power law) is exact.  Shorter positive runs use log-log lines; segments
// touching a zero value fall back to linear interpolation of raw values.
void RadialFunction::build_segments() {
    const size_t n = r_.size();
    if (n < 2) return;
    seg_.resize(n - 1);

    // raw-linear placeholders first
    for (size_t i = 0; i + 1 < n; ++i) {
        Segment& s = seg_[i];
        if (v_[i] > 0.0 && v_[i + 1] > 0.0) {
            s.linear = false;
            s.x0 = lr_[i];
            s.c[0] = std::log(v_[i]);
            s.c[1] = (std::log(v_[i + 1]) - s.c[0]) / (lr_[i + 1] - lr_[i]);
            s.c[2] = s.c[3] = 0.0;
        } else {
            s.linear = true;
            s.x0 = r_[i];
            s.c[0] = v_[i];
            s.c[1] = (v_[i + 1] - v_[i]) / (r_[i + 1] - r_[i]);
        }
    }

    // spline over each maximal positive run
    size_t run = 0;
    while (run < n) {
        if (v_[run] <= 0.0) {
            ++run;
            continue;
        }
        size_t end = run;
        while (end < n && v_[end] > 0.0) ++end;
        const size_t m = end - run;  // nodes in the run
        if (m >= 4) {
            std::vector<double> x(m), y(m), h(m - 1);
            for (size_t k = 0; k < m; ++k) {
                x[k] = lr_[run + k];
                y[k] = std::log(v_[run + k]);
            }
            for (size_t k = 0; k + 1 < m; ++k) h[k] = x[k + 1] - x[k];

            // Second derivatives sigma_k.  Not-a-knot expresses the end
            // values through their neighbors,
            //   sigma_0     = (1 + h0/h1) sigma_1 - (h0/h1) sigma_2,
            //   sigma_{m-1} = (1 + h_{m-2}/h_{m-3}) sigma_{m-2}
            //                 - (h_{m-2}/h_{m-3}) sigma_{m-3},
            // leaving a tridiagonal system for sigma_1 .. sigma_{m-2}.
            const size_t iu = m - 2;  // number of unknowns
            std::vector<double> a(iu), b(iu), c(iu), d(iu);
            for (size_t k = 1; k + 1 < m; ++k) {
                const size_t j = k - 1;
                a[j] = h[k - 1];
                b[j] = 2.0 * (h[k - 1] + h[k]);
                c[j] = h[k];
                d[j] = 6.0 * ((y[k + 1] - y[k]) / h[k] - (y[k] - y[k - 1]) / h[k - 1]);
            }
            const double r0 = h[0] / h[1];
            b[0] += h[0] * (1.0 + r0);
            c[0] -= h[0] * r0;
            const double r1 = h[m - 2] / h[m - 3];
            b[iu - 1] += h[m - 2] * (1.0 + r1);
            a[iu - 1] -= h[m - 2] * r1;

            std::vector<double> cp(iu), dp(iu), sig(m);
            cp[0] = c[0] / b[0];
            dp[0] = d[0] / b[0];
            for (size_t j = 1; j < iu; ++j) {
                const double den = b[j] - a[j] * cp[j - 1];
                cp[j] = (j + 1 < iu ? c[j] : 0.0) / den;
                dp[j] = (d[j] - a[j] * dp[j - 1]) / den;
            }
            sig[iu] = dp[iu - 1];
            for (size_t j = iu - 1; j-- > 0;) sig[j + 1] = dp[j] - cp[j] * sig[j + 2];
            sig[0] = (1.0 + r0) * sig[1] - r0 * sig[2];
            sig[m - 1] = (1.0 + r1) * sig[m - 2] - r1 * sig[m - 3];

            for (size_t k = 0; k + 1 < m; ++k) {
                Segment& s = seg_[run + k];
                s.linear = false;
                s.x0 = x[k];
                s.c[0] = y[k];
                s.c[1] = (y[k + 1] - y[k]) / h[k] - h[k] * (2.0 * sig[k] + sig[k + 1]) / 6.0;
                s.c[2] = 0.5 * sig[k];
                s.c[3] = (sig[k + 1] - sig[k]) / (6.0 * h[k]);
            }
        }
        run = end;
    }
}

double RadialFunction::operator()(double r) const {
    if (r_.empty()) return 0.0;
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument("RadialFunction: evaluation radius must be positive");
    if (r <= r_.front()) {
        if (r == r_.front() || v_.front() == 0.0) return v_.front();
        return v_.front() * std::pow(r / r_.front(), inner_exp_);
    }
    if (r >= r_.back()) {
        if (r == r_.back() || v_.back() == 0.0) return v_.back();
        return v_.back() * std::pow(r / r_.back(), tail_exp_);
    }
    const size_t hi = std::upper_bound(r_.begin(), r_.end(), r) - r_.begin();
    const Segment& s = seg_[hi - 1];
    if (s.linear) return std::max(0.0, s.c[0] + s.c[1] * (r - s.x0));
    const double dx = std::log(r) - s.x0;
    return std::exp(s.c[0] + dx * (s.c[1] + dx * (s.c[2] + dx * s.c[3])));
}

bool RadialFunction::is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](double x) { return x == 0.0; });
}

RadialFunction RadialFunction::pow(double q) const {
    if (!std::isfinite(q) || q < 0.0)
        throw std::invalid_argument("RadialFunction::pow: exponent must be >= 0");
    std::vector<double> vals(v_.size());
    if (q == 0.0) {
        std::fill(vals.begin(), vals.end(), 1.0);
        return RadialFunction(r_, std::move(vals), 0.0, 0.0);
    }
    for (size_t i = 0; i < v_.size(); ++i) vals[i] = std::pow(v_[i], q);
    return RadialFunction(r_, std::move(vals), inner_exp_ * q, tail_exp_ * q);
}

RadialFunction RadialFunction::scaled(double a) const {
    if (!std::isfinite(a) || a < 0.0)
        throw std::invalid_argument("RadialFunction::scaled: factor must be >= 0");
    std::vector<double> vals(v_.size());
    for (size_t i = 0; i < v_.size(); ++i) vals[i] = a * v_[i];
    return RadialFunction(r_, std::move(vals), inner_exp_, tail_exp_);
}

RadialFunction RadialFunction::operator+(const RadialFunction& other) const {
    if (r_ != other.r_)
        throw std::invalid_argument("RadialFunction: sum requires identical grids");
    std::vector<double> vals(v_.size());
    for (size_t i = 0; i < v_.size(); ++i) vals[i] = v_[i] + other.v_[i];
    return RadialFunction(r_, std::move(vals), std::min(inner_exp_, other.inner_exp_),
                          std::max(tail_exp_, other.tail_exp_));
}

double RadialFunction::max_value() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, x);
    return m;
}

double RadialFunction::sup_rel_diff(const RadialFunction& a, const RadialFunction& b) {
    if (a.r_ != b.r_)
        throw std::invalid_argument("sup_rel_diff: grids differ");
    double num = 0.0;
    for (size_t i = 0; i < a.v_.size(); ++i)
        num = std::max(num, std::abs(a.v_[i] - b.v_[i]));
    const double den = std::max(a.max_value(), b.max_value());
    if (den == 0.0) return 0.0;
    return num / den;
}

std::vector<double> make_log_grid(double r_min, double r_max, int points) {
    if (!(r_min > 0.0) || !(r_max > r_min) || points < 2)
        throw std::invalid_argument("make_log_grid: need 0 < r_min < r_max, points >= 2");
    std::vector<double> g(points);
    const double a = std::log(r_min), b = std::log(r_max);
    for (int i = 0; i < points; ++i)
        g[i] = std::exp(a + (b - a) * i / (points - 1));
    g.front() = r_min;
    g.back() = r_max;
    return g;
}

}  // namespace wolffpot
