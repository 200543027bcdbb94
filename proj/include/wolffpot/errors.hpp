#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace wolffpot {

/// Quadrature (or other numeric routine) failed to reach the requested
/// tolerance.  Carries the achieved error bound so callers can decide
/// whether the result is still usable.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double requested, double achieved)
        : std::runtime_error(what + " (requested " + format(requested) + ", achieved " +
                             format(achieved) + ")"),
          requested_(requested),
          achieved_(achieved) {}

    double requested() const { return requested_; }
    double achieved() const { return achieved_; }

private:
    static std::string format(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", x);
        return buf;
    }

    double requested_;
    double achieved_;
};

/// Failure classes of the solver pipeline.  Each stage raises a distinct
/// kind so callers (and the CLI exit-status contract) can tell them apart.
class SolverError : public std::runtime_error {
public:
    enum class Kind {
        supersolution_failure,  // lambda2 search exceeded its cap
        degenerate_measure,     // lambda1 underflowed
        monotonicity_failure,   // an iterate decreased beyond grid_tol
        sandwich_failure,       // sandwich ratio diverges along the grid
        condition_failure,      // a precondition check (finiteness/capacity/...) failed
    };

    SolverError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

}  // namespace wolffpot
