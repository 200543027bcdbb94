#pragma once

#include <memory>
#include <vector>

#include "wolffpot/radial_function.hpp"

namespace wolffpot {

using Point = std::vector<double>;

struct Atom {
    Point location;
    double weight;
};

/// Behavior of t -> sigma(B(0,t)) for t beyond `power_radius`:
///   mass(t) = shift + coeff * t^growth_exponent      (t <= support_radius)
/// and constant equal to total() beyond a finite support radius.
/// Compact measures have coeff = 0.  growth_exponent > 0 with coeff > 0
/// means unbounded mass growth (the symbolic input to the finiteness check).
struct MassTail {
    double power_radius = 0.0;
    double support_radius = 0.0;  // +inf for unbounded support
    double shift = 0.0;
    double coeff = 0.0;
    double growth_exponent = 0.0;

    bool compact() const;
    bool finite_total() const;
    double total() const;                 // +inf when mass grows without bound
    double mass_at(double t) const;       // valid for t >= power_radius
};

/// A nonnegative Radon measure on R^n with ball-mass queries.  Instances are
/// immutable and safe to share across threads; ball_mass is pure.
class Measure {
public:
    virtual ~Measure() = default;

    int dim() const { return dim_; }

    /// sigma(B(x,t)) for the open ball of radius t centered at x.
    /// Exact for atomic and ball-Lebesgue measures; adaptive quadrature for
    /// radial densities (throws AccuracyError if the tolerance is missed).
    double ball_mass(const Point& x, double t, double rel_tol = 1e-10) const;

    virtual double total_mass() const = 0;
    virtual double point_mass(const Point& x) const = 0;
    virtual bool radial() const = 0;

    virtual double nearest_support_distance(const Point& x) const = 0;
    virtual double farthest_support_distance(const Point& x) const = 0;

    virtual MassTail tail() const = 0;

    /// Exponent e such that sigma(B(0,t)) ~ c t^e as t -> 0+ (0 for an atom
    /// at the origin, +inf when the origin is outside the support).
    virtual double inner_mass_exponent() const = 0;

    /// Non-null iff the measure is purely atomic (weights already folded).
    virtual const std::vector<Atom>* atoms() const { return nullptr; }

    /// Radial measures with a density report it here; shell_density(s) is the
    /// density with respect to Lebesgue measure at radius s, and
    /// radial_mass(r) = sigma(B(0,r)) evaluated by table/closed form.
    virtual bool has_shell_density() const { return false; }
    virtual double shell_density(double s) const;
    virtual double radial_mass(double r) const;

    /// Density value when the shell density is constant on the support
    /// (ball-Lebesgue at the origin and its scalings); < 0 otherwise.
    virtual double constant_shell_density() const { return -1.0; }

    /// Radii at which the shell density is not smooth (grid edges, support
    /// truncation); used to seed adaptive quadrature.
    virtual std::vector<double> density_kinks() const { return {}; }

protected:
    explicit Measure(int dim);
    virtual double ball_mass_impl(const Point& x, double t, double rel_tol) const = 0;

    int dim_;
};

using MeasurePtr = std::shared_ptr<const Measure>;

/// Sum of point masses; an empty list is the zero measure.
MeasurePtr make_atomic(int dim, std::vector<Atom> atoms);

/// density * Lebesgue restricted to the ball B(center, radius).
MeasurePtr make_ball_lebesgue(Point center, double radius, double density);

/// Radial density f(|y|) dy; beyond `support_radius` (may be +inf) the
/// density is zero.  With infinite support the density follows the
/// RadialFunction's tail power law beyond its grid.
MeasurePtr make_radial_density(int dim, RadialFunction density,
                               double support_radius);

/// The measure w(|y|)^q dsigma; base must be radial or atomic.
MeasurePtr weight_measure(MeasurePtr base, RadialFunction weight, double q);

/// The measure a * sigma; ball masses scale exactly.
MeasurePtr scale_measure(MeasurePtr base, double a);

double distance(const Point& a, const Point& b);
double norm(const Point& a);

/// (r, 0, ..., 0) in R^dim — the canonical radial probe point.
Point radial_point(double r, int dim);

}  // namespace wolffpot
