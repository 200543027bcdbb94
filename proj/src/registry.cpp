#include "wolffpot/registry.hpp"

#include "wolffpot/scenario.hpp"

namespace wolffpot {

namespace {

// The bundled suite: the symmetric and asymmetric ball problems, a tabulated
// radial density in four dimensions, the K-scaled mode, the zero measure,
// and the two rejection gates.
std::vector<RegistryEntry> build_registry() {
    std::vector<RegistryEntry> reg;

    reg.push_back({"zero-measure", R"({
      "name": "zero-measure",
      "params": {"n": 3, "p": 2.0, "alpha": 1.0, "q1": 0.5, "q2": 0.5},
      "measure": {"variant": "atomic", "atoms": []},
      "grid": {"r_min": 0.01, "r_max": 100.0, "points": 64},
      "solver": {"tol": 1e-8, "max_steps": 50, "kappa_hint": 1.0},
      "checks": ["finiteness", "capacity_ball_scaling", "local_integrability",
                 "weaker_condition"]
    })", kExitOk});

    reg.push_back({"ball-lebesgue-sym", R"({
      "name": "ball-lebesgue-sym",
      "params": {"n": 3, "p": 2.0, "alpha": 1.0, "q1": 0.5, "q2": 0.5},
      "measure": {"variant": "ball_lebesgue", "center": [0, 0, 0],
                  "radius": 1.0, "density": 1.0},
      "grid": {"r_min": 0.01, "r_max": 100.0, "points": 128},
      "solver": {"tol": 1e-8, "max_steps": 200, "kappa_hint": 1.0},
      "checks": ["finiteness", "capacity_ball_scaling", "local_integrability",
                 "weaker_condition", "kappa"]
    })", kExitOk});

    reg.push_back({"ball-lebesgue-asym", R"({
      "name": "ball-lebesgue-asym",
      "params": {"n": 3, "p": 2.0, "alpha": 1.0, "q1": 0.4, "q2": 0.6},
      "measure": {"variant": "ball_lebesgue", "center": [0, 0, 0],
                  "radius": 1.0, "density": 2.0},
      "grid": {"r_min": 0.01, "r_max": 100.0, "points": 96},
      "solver": {"tol": 1e-8, "max_steps": 200, "kappa_hint": 1.0},
      "checks": ["finiteness", "capacity_ball_scaling", "weaker_condition"]
    })", kExitOk});

    reg.push_back({"annulus-n4", R"({
      "name": "annulus-n4",
      "params": {"n": 4, "p": 2.5, "alpha": 1.0, "q1": 0.7, "q2": 0.7},
      "measure": {"variant": "radial_density",
                  "radii": [0.5, 0.7, 1.0, 1.4, 2.0],
                  "values": [0.2, 0.8, 1.0, 0.6, 0.15],
                  "inner_exponent": 2.0, "tail_exponent": -8.0,
                  "support_radius": 4.0},
      "grid": {"r_min": 0.02, "r_max": 50.0, "points": 72},
      "solver": {"tol": 1e-7, "max_steps": 200, "kappa_hint": 1.0},
      "checks": ["finiteness", "capacity_ball_scaling", "weaker_condition"]
    })", kExitOk});

    reg.push_back({"pde-k2", R"({
      "name": "pde-k2",
      "params": {"n": 3, "p": 2.0, "alpha": 1.0, "q1": 0.5, "q2": 0.5,
                 "mode": "pde_equivalent", "K": 2.0},
      "measure": {"variant": "ball_lebesgue", "center": [0, 0, 0],
                  "radius": 1.0, "density": 1.0},
      "grid": {"r_min": 0.01, "r_max": 100.0, "points": 96},
      "solver": {"tol": 1e-8, "max_steps": 200, "kappa_hint": 1.0},
      "checks": ["finiteness", "capacity_ball_scaling"]
    })", kExitOk});

    reg.push_back({"dirac-reject", R"({
      "name": "dirac-reject",
      "params": {"n": 3, "p": 2.0, "alpha": 1.0, "q1": 0.5, "q2": 0.5},
      "measure": {"variant": "atomic",
                  "atoms": [{"location": [0, 0, 0], "weight": 1.0}]},
      "grid": {"r_min": 0.01, "r_max": 100.0, "points": 64},
      "solver": {"tol": 1e-8, "max_steps": 50, "kappa_hint": 1.0},
      "checks": ["finiteness", "capacity_ball_scaling", "local_integrability"]
    })", kExitChecksFailed});

    reg.push_back({"pde-p-geq-n-reject", R"({
      "name": "pde-p-geq-n-reject",
      "params": {"n": 3, "p": 3.0, "alpha": 1.0, "q1": 0.5, "q2": 0.5,
                 "mode": "pde_equivalent", "K": 1.0},
      "measure": {"variant": "ball_lebesgue", "center": [0, 0, 0],
                  "radius": 1.0, "density": 1.0},
      "grid": {"r_min": 0.01, "r_max": 100.0, "points": 64},
      "checks": ["finiteness"]
    })", kExitValidationError});

    return reg;
}

}  // namespace

const std::vector<RegistryEntry>& scenario_registry() {
    static const std::vector<RegistryEntry> reg = build_registry();
    return reg;
}

const RegistryEntry* find_scenario(const std::string& name) {
    for (const auto& e : scenario_registry())
        if (e.name == name) return &e;
    return nullptr;
}

}  // namespace wolffpot
