#include "wolffpot/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wolffpot/errors.hpp"
#include "wolffpot/geometry.hpp"
#include "wolffpot/quadrature.hpp"

namespace wolffpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

double distance(const Point& a, const Point& b) {
    if (a.size() != b.size()) throw std::invalid_argument("distance: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double norm(const Point& a) {
    double s = 0.0;
    for (double c : a) s += c * c;
    return std::sqrt(s);
}

Point radial_point(double r, int dim) {
    Point x(dim, 0.0);
    x[0] = r;
    return x;
}

// ---------------------------------------------------------------------------
// MassTail

bool MassTail::compact() const { return std::isfinite(support_radius); }

bool MassTail::finite_total() const {
    return compact() || coeff == 0.0 || growth_exponent < 0.0;
}

double MassTail::total() const {
    if (compact()) return mass_at(support_radius);
    if (coeff == 0.0) return shift;
    if (growth_exponent < 0.0) return shift;
    return kInf;
}

double MassTail::mass_at(double t) const {
    if (t >= support_radius) t = support_radius;
    if (coeff == 0.0) return shift;
    return shift + coeff * std::pow(t, growth_exponent);
}

// ---------------------------------------------------------------------------
// Measure base

Measure::Measure(int dim) : dim_(dim) {
    if (dim < 2) throw std::invalid_argument("Measure: dimension must be >= 2");
}

double Measure::ball_mass(const Point& x, double t, double rel_tol) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("ball_mass: point dimension mismatch");
    for (double c : x) require_finite(c, "ball_mass: point coordinate");
    if (!std::isfinite(t) || !(t > 0.0))
        throw std::invalid_argument("ball_mass: radius must be positive and finite");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("ball_mass: rel_tol must be > 0");
    return ball_mass_impl(x, t, rel_tol);
}

double Measure::shell_density(double) const {
    throw std::logic_error("shell_density: measure has no radial density");
}

double Measure::radial_mass(double) const {
    throw std::logic_error("radial_mass: measure is not radial");
}

// ---------------------------------------------------------------------------
// Atomic

class AtomicMeasure final : public Measure {
public:
    AtomicMeasure(int dim, std::vector<Atom> atoms) : Measure(dim), atoms_(std::move(atoms)) {
        for (const Atom& a : atoms_) {
            if (static_cast<int>(a.location.size()) != dim)
                throw std::invalid_argument("atomic measure: atom dimension mismatch");
            for (double c : a.location) require_finite(c, "atom coordinate");
            require_finite(a.weight, "atom weight");
            if (a.weight < 0.0) throw std::invalid_argument("atom weight must be >= 0");
            total_ += a.weight;
            outer_ = std::max(outer_, norm(a.location));
        }
    }

    double total_mass() const override { return total_; }

    double point_mass(const Point& x) const override {
        double m = 0.0;
        for (const Atom& a : atoms_)
            if (distance(a.location, x) == 0.0) m += a.weight;
        return m;
    }

    bool radial() const override {
        for (const Atom& a : atoms_)
            if (a.weight > 0.0 && norm(a.location) > 0.0) return false;
        return true;
    }

    double nearest_support_distance(const Point& x) const override {
        double d = kInf;
        for (const Atom& a : atoms_)
            if (a.weight > 0.0) d = std::min(d, distance(a.location, x));
        return d;
    }

    double farthest_support_distance(const Point& x) const override {
        double d = 0.0;
        bool any = false;
        for (const Atom& a : atoms_)
            if (a.weight > 0.0) {
                d = std::max(d, distance(a.location, x));
                any = true;
            }
        return any ? d : 0.0;
    }

    MassTail tail() const override {
        MassTail t;
        t.power_radius = outer_;
        t.support_radius = outer_;
        t.shift = total_;
        return t;
    }

    double inner_mass_exponent() const override {
        for (const Atom& a : atoms_)
            if (a.weight > 0.0 && norm(a.location) == 0.0) return 0.0;
        return kInf;  // no mass near the origin
    }

    const std::vector<Atom>* atoms() const override { return &atoms_; }

protected:
    double ball_mass_impl(const Point& x, double t, double) const override {
        double m = 0.0;
        for (const Atom& a : atoms_)
            if (distance(a.location, x) < t) m += a.weight;  // open ball
        return m;
    }

private:
    std::vector<Atom> atoms_;
    double total_ = 0.0;
    double outer_ = 0.0;
};

// ---------------------------------------------------------------------------
// Shell structure: radial densities tabulated as cumulative mass

// Description of a radial shell density g(s) (with respect to Lebesgue
// measure): exact power law below head_radius and above tail_radius, zero
// beyond support_radius.
struct ShellStructure {
    double head_radius = 0.0;
    double head_coeff = 0.0;  // g at head_radius (left value)
    double inner_exp = 0.0;
    double tail_radius = 0.0;
    double tail_coeff = 0.0;  // g at tail_radius
    double tail_exp = 0.0;
    double support_radius = kInf;
    std::vector<double> kinks;
};

// sigma(B(0,r)) for a shell density: analytic power head, cubic-Hermite
// table in log-log coordinates with exact slopes, analytic power tail.
class RadialMassTable {
public:
    RadialMassTable(int n, const std::function<double(double)>& g, const ShellStructure& st)
        : n_(n), st_(st), surf_coeff_(n * geom::unit_ball_volume(n)) {
        const double lo = st.head_radius;
        const double hi = std::min(st.tail_radius, st.support_radius);

        // Mass of the pure-power head: integral of g over B(0,r), r <= lo.
        head_power_ = n_ + st.inner_exp;
        if (st.head_coeff > 0.0) {
            if (head_power_ <= 0.0)
                throw std::invalid_argument("radial density: infinite mass near the origin");
            head_coeff_ = st.head_coeff * std::pow(lo, -st.inner_exp) * surf_coeff_ / head_power_;
        }

        if (hi > lo) build_table(g, lo, hi);
        const double mass_hi = table_r_.empty() ? head_mass(lo) : table_m_.back();
        hi_ = std::max(hi, lo);

        // Analytic continuation beyond the table.
        tail_.power_radius = hi_;
        tail_.support_radius = st.support_radius;
        if (st.support_radius > hi_ && st.tail_coeff > 0.0) {
            const double beta = n_ + st.tail_exp;
            if (beta == 0.0)
                throw std::invalid_argument(
                    "radial density: tail exponent -n gives logarithmic mass growth");
            const double K =
                st.tail_coeff * std::pow(st.tail_radius, -st.tail_exp) * surf_coeff_ / beta;
            tail_.coeff = K;
            tail_.growth_exponent = beta;
            tail_.shift = mass_hi - K * std::pow(hi_, beta);
        } else {
            tail_.shift = mass_hi;
            tail_.support_radius = hi_;
        }
    }

    double mass(double r) const {
        if (!(r > 0.0)) return 0.0;
        if (r <= (table_r_.empty() ? hi_ : table_r_.front())) return head_mass(std::min(r, hi_));
        if (r >= hi_) return tail_.mass_at(r);
        const size_t j =
            std::upper_bound(table_r_.begin(), table_r_.end(), r) - table_r_.begin();
        const size_t i = j - 1;
        const double m0 = table_m_[i], m1 = table_m_[i + 1];
        if (!(m0 > 0.0)) {  // leading zero-mass region: linear blend is exact enough
            const double w = (r - table_r_[i]) / (table_r_[i + 1] - table_r_[i]);
            return m0 + w * (m1 - m0);
        }
        // Cubic Hermite in (log r, log M) with exact endpoint slopes.
        const double x0 = table_lr_[i], x1 = table_lr_[i + 1];
        const double h = x1 - x0;
        const double u = (std::log(r) - x0) / h;
        const double y0 = std::log(m0), y1 = std::log(m1);
        const double d0 = table_slope_[i] * h, d1 = table_slope_[i + 1] * h;
        const double u2 = u * u, u3 = u2 * u;
        const double y = (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * d0 +
                         (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * d1;
        return std::exp(y);
    }

    MassTail tail() const { return tail_; }
    double total() const { return tail_.total(); }

    double inner_mass_exponent() const {
        if (head_coeff_ > 0.0) return head_power_;
        return kInf;  // origin outside the support
    }

    // Inner edge of the support (0 when mass accumulates from the origin).
    double support_inner_radius() const {
        if (head_coeff_ > 0.0) return 0.0;
        for (size_t i = 0; i < table_m_.size(); ++i)
            if (table_m_[i] > 0.0) return i == 0 ? 0.0 : table_r_[i - 1];
        return hi_;
    }

private:
    double head_mass(double r) const {
        return head_coeff_ == 0.0 ? 0.0 : head_coeff_ * std::pow(r, head_power_);
    }

    void build_table(const std::function<double(double)>& g, double lo, double hi) {
        std::vector<double> brk = {lo, hi};
        for (double k : st_.kinks)
            if (k > lo && k < hi) brk.push_back(k);
        std::sort(brk.begin(), brk.end());
        brk.erase(std::unique(brk.begin(), brk.end()), brk.end());

        table_r_.push_back(lo);
        table_m_.push_back(head_mass(lo));
        const double per_decade = 160.0;
        for (size_t seg = 0; seg + 1 < brk.size(); ++seg) {
            const double a = brk[seg], b = brk[seg + 1];
            const int cells = std::clamp(
                static_cast<int>(std::ceil(std::log10(b / a) * per_decade)), 1, 1200);
            for (int c = 1; c <= cells; ++c) {
                const double r0 = table_r_.back();
                const double r1 = (c == cells)
                                      ? b
                                      : a * std::pow(b / a, static_cast<double>(c) / cells);
                quad::Options opt;
                opt.rel_tol = 1e-13;
                opt.abs_tol = 0.0;
                opt.max_segments = 24;
                const auto res = quad::integrate(
                    [&](double s) {
                        return g(s) * surf_coeff_ * std::pow(s, n_ - 1);
                    },
                    r0, r1, opt);
                table_r_.push_back(r1);
                table_m_.push_back(table_m_.back() + std::max(0.0, res.value));
            }
        }
        table_lr_.resize(table_r_.size());
        table_slope_.resize(table_r_.size());
        for (size_t i = 0; i < table_r_.size(); ++i) {
            const double r = table_r_[i];
            table_lr_[i] = std::log(r);
            const double m = table_m_[i];
            table_slope_[i] =
                m > 0.0 ? g(r) * surf_coeff_ * std::pow(r, static_cast<double>(n_)) / m : 0.0;
        }
    }

    int n_;
    ShellStructure st_;
    double surf_coeff_;  // area of the unit sphere: n * omega_n
    double head_coeff_ = 0.0;
    double head_power_ = 0.0;
    double hi_ = 0.0;
    std::vector<double> table_r_, table_m_, table_lr_, table_slope_;
    MassTail tail_;
};

// Common implementation for radial measures carrying a shell density.
class ShellMeasureBase : public Measure {
public:
    ShellMeasureBase(int dim, ShellStructure st) : Measure(dim), st_(std::move(st)) {}

    double total_mass() const override { return table_->total(); }
    double point_mass(const Point&) const override { return 0.0; }
    bool radial() const override { return true; }

    double nearest_support_distance(const Point& x) const override {
        const double d = norm(x);
        const double s_in = table_->support_inner_radius();
        const double s_out = table_->tail().support_radius;
        if (d < s_in) return s_in - d;
        if (d > s_out) return d - s_out;
        return 0.0;
    }

    double farthest_support_distance(const Point& x) const override {
        return norm(x) + table_->tail().support_radius;
    }

    MassTail tail() const override { return table_->tail(); }
    double inner_mass_exponent() const override { return table_->inner_mass_exponent(); }

    bool has_shell_density() const override { return true; }
    double radial_mass(double r) const override { return table_->mass(r); }
    std::vector<double> density_kinks() const override { return st_.kinks; }

protected:
    // Deferred: subclasses call after their density members are ready.
    void init_table() {
        table_ = std::make_unique<RadialMassTable>(
            dim_, [this](double s) { return shell_density(s); }, st_);
    }

    double ball_mass_impl(const Point& x, double t, double rel_tol) const override {
        const double d = norm(x);
        if (d == 0.0) return table_->mass(t);
        const double full = t > d ? table_->mass(t - d) : 0.0;
        const double s_in = table_->support_inner_radius();
        const double s_out = table_->tail().support_radius;
        // Integrate the partial-cap shells in the offset u = s - d, which
        // keeps the cap geometry exact even for t many decades below d.
        const double u_lo = std::max(t <= d ? -t : t - 2.0 * d, s_in - d);
        const double u_hi = std::min(t, s_out - d);
        if (!(u_lo < u_hi)) return full;

        std::vector<double> pts = {u_lo, u_hi};
        for (double k : st_.kinks) {
            const double u = k - d;
            if (u > u_lo && u < u_hi) pts.push_back(u);
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

        quad::Options opt;
        opt.rel_tol = rel_tol;
        opt.abs_tol = rel_tol * full;
        opt.max_segments = 600;
        const double cap = quad::integrate_or_throw(
            [&](double u) {
                const double frac = geom::sphere_in_ball_fraction_offset(dim_, u, d, t);
                if (frac <= 0.0) return 0.0;
                const double s = d + u;
                return shell_density(s) * surf_coeff() * std::pow(s, dim_ - 1) * frac;
            },
            pts, opt, "ball_mass");
        return full + std::max(0.0, cap);
    }

    double surf_coeff() const { return dim_ * geom::unit_ball_volume(dim_); }

    ShellStructure st_;
    std::unique_ptr<RadialMassTable> table_;
};

// ---------------------------------------------------------------------------
// Ball-Lebesgue

class BallLebesgueMeasure final : public Measure {
public:
    BallLebesgueMeasure(Point center, double radius, double density)
        : Measure(static_cast<int>(center.size())),
          center_(std::move(center)),
          radius_(radius),
          density_(density) {
        for (double c : center_) require_finite(c, "ball center coordinate");
        require_finite(radius_, "ball radius");
        require_finite(density_, "ball density");
        if (!(radius_ > 0.0)) throw std::invalid_argument("ball radius must be > 0");
        if (density_ < 0.0) throw std::invalid_argument("ball density must be >= 0");
        center_norm_ = norm(center_);
    }

    double total_mass() const override {
        return density_ * geom::unit_ball_volume(dim_) * std::pow(radius_, dim_);
    }
    double point_mass(const Point&) const override { return 0.0; }
    bool radial() const override { return density_ == 0.0 || center_norm_ == 0.0; }

    double nearest_support_distance(const Point& x) const override {
        if (density_ == 0.0) return kInf;
        return std::max(0.0, distance(x, center_) - radius_);
    }
    double farthest_support_distance(const Point& x) const override {
        if (density_ == 0.0) return 0.0;
        return distance(x, center_) + radius_;
    }

    MassTail tail() const override {
        MassTail t;
        t.power_radius = center_norm_ + radius_;
        t.support_radius = center_norm_ + radius_;
        t.shift = total_mass();
        return t;
    }

    double inner_mass_exponent() const override {
        if (density_ == 0.0 || center_norm_ > radius_) return kInf;
        return static_cast<double>(dim_);
    }

    bool has_shell_density() const override { return radial() && density_ > 0.0; }
    double shell_density(double s) const override {
        if (!has_shell_density()) return Measure::shell_density(s);
        return s <= radius_ ? density_ : 0.0;
    }
    double radial_mass(double r) const override {
        if (!radial()) return Measure::radial_mass(r);
        return density_ * geom::unit_ball_volume(dim_) * std::pow(std::min(r, radius_), dim_);
    }
    double constant_shell_density() const override {
        return has_shell_density() ? density_ : -1.0;
    }
    std::vector<double> density_kinks() const override { return {radius_}; }

    double ball_radius() const { return radius_; }
    double ball_density() const { return density_; }

protected:
    double ball_mass_impl(const Point& x, double t, double) const override {
        if (density_ == 0.0) return 0.0;
        return density_ * geom::ball_intersection_volume(dim_, radius_, t, distance(x, center_));
    }

private:
    Point center_;
    double radius_;
    double density_;
    double center_norm_;
};

// ---------------------------------------------------------------------------
// Radial density

class RadialDensityMeasure final : public ShellMeasureBase {
public:
    RadialDensityMeasure(int dim, RadialFunction density, double support_radius)
        : ShellMeasureBase(dim, make_structure(density, support_radius)),
          density_(std::move(density)),
          support_(support_radius) {
        init_table();
    }

    double shell_density(double s) const override {
        if (s > support_ || !(s > 0.0)) return 0.0;
        return density_(std::max(s, std::numeric_limits<double>::min()));
    }

private:
    static ShellStructure make_structure(const RadialFunction& f, double support) {
        if (std::isnan(support) || !(support > 0.0))
            throw std::invalid_argument("radial density: support radius must be > 0");
        ShellStructure st;
        st.support_radius = support;
        st.head_radius = std::min(f.radii().front(), support);
        st.inner_exp = f.inner_exponent();
        st.head_coeff = f.values().front() *
                        (st.head_radius < f.radii().front()
                             ? std::pow(st.head_radius / f.radii().front(), f.inner_exponent())
                             : 1.0);
        st.tail_radius = std::min(f.radii().back(), support);
        st.tail_exp = f.tail_exponent();
        st.tail_coeff = st.tail_radius >= f.radii().back()
                            ? f.values().back()
                            : 0.0;  // truncated before the grid ends: no analytic tail piece
        if (st.tail_radius < f.radii().back()) st.tail_radius = support;
        st.kinks = {f.radii().front(), f.radii().back()};
        if (std::isfinite(support)) st.kinks.push_back(support);
        return st;
    }

    RadialFunction density_;
    double support_;
};

// ---------------------------------------------------------------------------
// Weighted

class WeightedMeasure final : public ShellMeasureBase {
public:
    WeightedMeasure(MeasurePtr base, RadialFunction powered_weight)
        : ShellMeasureBase(base->dim(), make_structure(*base, powered_weight)),
          base_(std::move(base)),
          wq_(std::move(powered_weight)),
          const_base_(base_->constant_shell_density()),
          base_support_(base_->tail().support_radius) {
        init_table();
    }

    double shell_density(double s) const override {
        if (!(s > 0.0)) return 0.0;
        if (const_base_ >= 0.0)
            return s <= base_support_ ? const_base_ * wq_(s) : 0.0;
        const double g = base_->shell_density(s);
        return g > 0.0 ? g * wq_(s) : 0.0;
    }

private:
    static ShellStructure make_structure(const Measure& base, const RadialFunction& wq) {
        if (!base.has_shell_density())
            throw std::invalid_argument("weight_measure: base must be radial or atomic");
        ShellStructure st;
        const MassTail bt = base.tail();
        st.support_radius = bt.support_radius;

        const double base_inner = base.inner_mass_exponent() - base.dim();
        std::vector<double> bk = base.density_kinks();
        const double base_head = bk.empty() ? bt.power_radius : *std::min_element(bk.begin(), bk.end());
        st.head_radius = std::min({base_head, wq.radii().front(), st.support_radius});
        st.inner_exp = (std::isfinite(base_inner) ? base_inner : 0.0) + wq.inner_exponent();
        {
            const double gb = base.shell_density(st.head_radius);
            st.head_coeff = gb > 0.0 ? gb * wq(st.head_radius) : 0.0;
        }

        const double base_tail_start =
            bk.empty() ? bt.power_radius : *std::max_element(bk.begin(), bk.end());
        st.tail_radius = std::min(std::max(base_tail_start, wq.radii().back()), st.support_radius);
        st.tail_exp = (bt.coeff != 0.0 ? bt.growth_exponent - base.dim() : 0.0) +
                      wq.tail_exponent();
        {
            const double gb = base.shell_density(st.tail_radius);
            st.tail_coeff = gb > 0.0 ? gb * wq(st.tail_radius) : 0.0;
        }

        st.kinks = bk;
        st.kinks.push_back(wq.radii().front());
        st.kinks.push_back(wq.radii().back());
        std::erase_if(st.kinks,
                      [&](double k) { return !(k > 0.0) || k > st.support_radius; });
        return st;
    }

    MeasurePtr base_;
    RadialFunction wq_;
    double const_base_;
    double base_support_;
};

// ---------------------------------------------------------------------------
// Scaled

class ScaledMeasure final : public Measure {
public:
    ScaledMeasure(MeasurePtr base, double factor)
        : Measure(base->dim()), base_(std::move(base)), a_(factor) {
        if (const auto* as = base_->atoms()) {
            scaled_atoms_ = *as;
            for (Atom& at : scaled_atoms_) at.weight *= a_;
        }
    }

    double total_mass() const override { return a_ * base_->total_mass(); }
    double point_mass(const Point& x) const override { return a_ * base_->point_mass(x); }
    bool radial() const override { return base_->radial(); }
    double nearest_support_distance(const Point& x) const override {
        return base_->nearest_support_distance(x);
    }
    double farthest_support_distance(const Point& x) const override {
        return base_->farthest_support_distance(x);
    }
    MassTail tail() const override {
        MassTail t = base_->tail();
        t.shift *= a_;
        t.coeff *= a_;
        return t;
    }
    double inner_mass_exponent() const override { return base_->inner_mass_exponent(); }
    const std::vector<Atom>* atoms() const override {
        return base_->atoms() ? &scaled_atoms_ : nullptr;
    }
    bool has_shell_density() const override { return base_->has_shell_density(); }
    double shell_density(double s) const override { return a_ * base_->shell_density(s); }
    double radial_mass(double r) const override { return a_ * base_->radial_mass(r); }
    double constant_shell_density() const override {
        const double c = base_->constant_shell_density();
        return c >= 0.0 ? a_ * c : -1.0;
    }
    std::vector<double> density_kinks() const override { return base_->density_kinks(); }

protected:
    double ball_mass_impl(const Point& x, double t, double rel_tol) const override {
        return a_ * base_->ball_mass(x, t, rel_tol);  // exact linearity
    }

private:
    MeasurePtr base_;
    double a_;
    std::vector<Atom> scaled_atoms_;
};

// ---------------------------------------------------------------------------
// Factories

MeasurePtr make_atomic(int dim, std::vector<Atom> atoms) {
    return std::make_shared<AtomicMeasure>(dim, std::move(atoms));
}

MeasurePtr make_ball_lebesgue(Point center, double radius, double density) {
    return std::make_shared<BallLebesgueMeasure>(std::move(center), radius, density);
}

MeasurePtr make_radial_density(int dim, RadialFunction density, double support_radius) {
    return std::make_shared<RadialDensityMeasure>(dim, std::move(density), support_radius);
}

namespace {

// Weight value at radius 0, following the declared inner power law.
double weight_at_origin(const RadialFunction& w) {
    if (w.inner_exponent() > 0.0) return 0.0;
    if (w.inner_exponent() == 0.0) return w.values().front();
    if (w.values().front() == 0.0) return 0.0;
    throw std::invalid_argument(
        "weight_measure: weight unbounded at an atom at the origin");
}

bool is_constant_one(const RadialFunction& f) {
    if (f.inner_exponent() != 0.0 || f.tail_exponent() != 0.0) return false;
    return std::all_of(f.values().begin(), f.values().end(),
                       [](double v) { return v == 1.0; });
}

}  // namespace

MeasurePtr weight_measure(MeasurePtr base, RadialFunction weight, double q) {
    if (!base) throw std::invalid_argument("weight_measure: null base");
    if (!std::isfinite(q) || q < 0.0)
        throw std::invalid_argument("weight_measure: exponent must be >= 0");
    if (q == 0.0) return base;
    RadialFunction wq = weight.pow(q);
    if (is_constant_one(wq)) return base;
    if (const auto* as = base->atoms()) {
        std::vector<Atom> folded = *as;
        for (Atom& a : folded) {
            const double r = norm(a.location);
            a.weight *= r > 0.0 ? wq(r) : weight_at_origin(wq);
        }
        return make_atomic(base->dim(), std::move(folded));
    }
    return std::make_shared<WeightedMeasure>(std::move(base), std::move(wq));
}

MeasurePtr scale_measure(MeasurePtr base, double a) {
    if (!base) throw std::invalid_argument("scale_measure: null base");
    if (!std::isfinite(a) || a < 0.0)
        throw std::invalid_argument("scale_measure: factor must be >= 0");
    if (a == 0.0) return make_atomic(base->dim(), {});
    if (a == 1.0) return base;
    return std::make_shared<ScaledMeasure>(std::move(base), a);
}

}  // namespace wolffpot
