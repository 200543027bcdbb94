#include "wolffpot/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "wolffpot/errors.hpp"

namespace wolffpot::quad {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
};

// One G7-K15 evaluation on [a,b]; error estimate follows QUADPACK.
Panel kronrod15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double halflen = 0.5 * (b - a);

    double fv1[7], fv2[7];
    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = halflen * kXgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double sum = fv1[j] + fv2[j];
        resk += kWgk[j] * sum;
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    resasc *= std::abs(halflen);

    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * halflen;
    double err = std::abs((resk - resg) * halflen);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    p.error = err;
    return p;
}

}  // namespace

Result integrate_segments(const std::function<double(double)>& f,
                          const std::vector<double>& pts, const Options& opt) {
    Result res;
    if (pts.size() < 2) return res;

    // Heap keyed by (error, insertion index); the index makes the refinement
    // order, and hence the result, deterministic.
    using Key = std::pair<double, long>;
    using Entry = std::pair<Key, Panel>;
    auto cmp = [](const Entry& a, const Entry& b) { return a.first < b.first; };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    long seq = 0;
    double total = 0.0, toterr = 0.0;

    auto push = [&](Panel p) {
        total += p.value;
        toterr += p.error;
        heap.push({{p.error, --seq}, p});
        res.evaluations += 15;
    };

    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i] < pts[i + 1]))
            throw std::invalid_argument("integrate_segments: breakpoints must increase");
        push(kronrod15(f, pts[i], pts[i + 1]));
    }

    int used = static_cast<int>(pts.size()) - 1;
    while (toterr > std::max(opt.rel_tol * std::abs(total), opt.abs_tol) &&
           used < opt.max_segments) {
        Panel worst = heap.top().second;
        heap.pop();
        total -= worst.value;
        toterr -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // panel at floating-point resolution
            total += worst.value;
            toterr += worst.error;
            break;
        }
        push(kronrod15(f, worst.a, mid));
        push(kronrod15(f, mid, worst.b));
        ++used;
    }

    res.value = total;
    res.error = toterr;
    res.converged = toterr <= std::max(opt.rel_tol * std::abs(total), opt.abs_tol) ||
                    toterr <= 1e-15 * std::abs(total);
    return res;
}

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt) {
    return integrate_segments(f, {a, b}, opt);
}

double integrate_or_throw(const std::function<double(double)>& f,
                          const std::vector<double>& pts, const Options& opt,
                          const char* context) {
    Result r = integrate_segments(f, pts, opt);
    if (!r.converged)
        throw AccuracyError(std::string(context) + ": quadrature did not converge",
                            std::max(opt.rel_tol * std::abs(r.value), opt.abs_tol),
                            r.error);
    return r.value;
}

}  // namespace wolffpot::quad
