#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace oracle {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
const double kGLx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                        0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                        0.9445750230732326, 0.9894009349916499};
const double kGLw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                        0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                        0.0622535239386479, 0.0271524594117541};

template <class F>
double gl16(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 8; ++i)
        acc += kGLw[i] * (f(c - h * kGLx[i]) + f(c + h * kGLx[i]));
    return acc * h;
}

template <class F>
double composite(const F& f, const std::vector<double>& cuts, int cells_per_segment) {
    double acc = 0.0;
    for (size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double a = cuts[s], b = cuts[s + 1];
        for (int c = 0; c < cells_per_segment; ++c)
            acc += gl16(f, a + (b - a) * c / cells_per_segment,
                        a + (b - a) * (c + 1) / cells_per_segment);
    }
    return acc;
}

double unit_ball_volume(int n) {
    return std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0));
}

double full_sin_integral(int n) {  // int_0^pi sin^{n-2}
    return std::sqrt(M_PI) * std::exp(std::lgamma(0.5 * (n - 1)) - std::lgamma(0.5 * n));
}

}  // namespace

double cap_fraction(int n, double cos_theta) {
    const double c = std::clamp(cos_theta, -1.0, 1.0);
    const double theta = std::acos(c);
    if (theta <= 0.0) return 0.0;
    auto f = [&](double th) { return std::pow(std::sin(th), n - 2); };
    double acc = 0.0;
    const int cells = 8;
    for (int i = 0; i < cells; ++i)
        acc += gl16(f, theta * i / cells, theta * (i + 1) / cells);
    return acc / full_sin_integral(n);
}

double sphere_in_ball_fraction(int n, double s, double d, double t) {
    if (s == 0.0) return d < t ? 1.0 : 0.0;
    if (d == 0.0) return s < t ? 1.0 : 0.0;
    const double c = (s * s + d * d - t * t) / (2.0 * s * d);
    return cap_fraction(n, c);
}

double ball_mass_mc(const std::function<double(double)>& density, int n,
                    const std::vector<double>& x, double t, std::uint64_t samples,
                    std::uint64_t seed, double* stderr_out) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    const double vol = unit_ball_volume(n) * std::pow(t, n);
    double sum = 0.0, sum2 = 0.0;
    std::vector<double> dir(n);
    for (std::uint64_t i = 0; i < samples; ++i) {
        double norm2 = 0.0;
        for (int k = 0; k < n; ++k) {
            dir[k] = gauss(rng);
            norm2 += dir[k] * dir[k];
        }
        const double r = t * std::pow(unif(rng), 1.0 / n) / std::sqrt(norm2);
        double y2 = 0.0;
        for (int k = 0; k < n; ++k) {
            const double yk = x[k] + r * dir[k];
            y2 += yk * yk;
        }
        const double f = density(std::sqrt(y2));
        sum += f;
        sum2 += f * f;
    }
    const double mean = sum / samples;
    if (stderr_out) {
        const double var = std::max(0.0, sum2 / samples - mean * mean);
        *stderr_out = vol * std::sqrt(var / samples);
    }
    return vol * mean;
}

double lens_volume_mc(int n, double r1, double r2, double d, std::uint64_t samples,
                      std::uint64_t seed, double* stderr_out) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    const double vol = unit_ball_volume(n) * std::pow(r1, n);
    std::uint64_t hits = 0;
    std::vector<double> dir(n);
    for (std::uint64_t i = 0; i < samples; ++i) {
        double norm2 = 0.0;
        for (int k = 0; k < n; ++k) {
            dir[k] = gauss(rng);
            norm2 += dir[k] * dir[k];
        }
        const double r = r1 * std::pow(unif(rng), 1.0 / n) / std::sqrt(norm2);
        double y2 = 0.0;
        for (int k = 0; k < n; ++k) {
            const double yk = r * dir[k] - (k == 0 ? d : 0.0);
            y2 += yk * yk;
        }
        if (y2 < r2 * r2) ++hits;
    }
    const double p = static_cast<double>(hits) / samples;
    if (stderr_out) *stderr_out = vol * std::sqrt(p * (1.0 - p) / samples);
    return vol * p;
}

double radial_ball_mass(const std::function<double(double)>& g, int n, double s_out,
                        double d, double t, const std::vector<double>& kinks) {
    const double surf = n * unit_ball_volume(n);
    auto shell = [&](double s) { return g(s) * surf * std::pow(s, n - 1); };
    auto cuts_between = [&](double a, double b) {
        std::vector<double> cuts = {a, b};
        for (double frac : {1e-5, 1e-3, 1e-1})
            if (a == 0.0 && frac * b > a) cuts.push_back(frac * b);
        for (double k : kinks)
            if (k > a && k < b) cuts.push_back(k);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        if (cuts.front() == 0.0) cuts.front() = cuts[1] * 1e-7;
        return cuts;
    };

    double full = 0.0;
    const double full_to = std::min(std::max(t - d, 0.0), s_out);
    if (full_to > 0.0) {
        const auto cuts = cuts_between(0.0, full_to);
        full = composite(shell, cuts, 24) + shell(cuts.front()) * cuts.front() / n;
    }
    const double a = std::max(std::abs(d - t), full_to);
    const double b = std::min(d + t, s_out);
    double cap = 0.0;
    if (b > a) {
        auto f = [&](double s) {
            return shell(s) * sphere_in_ball_fraction(n, s, d, t);
        };
        std::vector<double> cuts = {a, b};
        for (double k : kinks)
            if (k > a && k < b) cuts.push_back(k);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        cap = composite(f, cuts, 24);
    }
    return full + cap;
}

double radial_potential(const std::function<double(double)>& g, int n, double s_out,
                        double d, double chi, double kexp, double prefactor,
                        const std::vector<double>& kinks) {
    if (!(d >= 0.0) || !(s_out > 0.0)) throw std::invalid_argument("radial_potential");
    auto mass = [&](double t) { return radial_ball_mass(g, n, s_out, d, t, kinks); };

    const double scale = std::max(d, s_out);
    const double t_lo = d > s_out ? (d - s_out) : scale * 1e-5;
    const double t_hi = d + s_out;

    std::vector<double> cuts;
    for (double c : {t_lo, std::abs(d - s_out), d, t_hi})
        if (c > t_lo * (1.0 - 1e-14) && c <= t_hi) cuts.push_back(std::log(c));
    cuts.push_back(std::log(t_lo));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto f = [&](double s) {
        const double t = std::exp(s);
        const double M = mass(t);
        return M <= 0.0 ? 0.0 : std::pow(M * std::pow(t, -chi), kexp);
    };
    double acc = composite(f, cuts, 16);

    // Head below t_lo when the probe touches the support: integrand decays
    // like t^{(n-chi) kexp}; extend down a few decades.
    if (!(d > s_out)) {
        const double lo = std::log(t_lo);
        acc += composite(f, {lo - 9.0, lo}, 16);
    }
    // Constant-mass analytic tail.
    const double total = mass(t_hi * (1.0 + 1e-12));
    acc += std::pow(total, kexp) * std::pow(t_hi, -chi * kexp) / (chi * kexp);
    return prefactor * acc;
}

}  // namespace oracle
