#pragma once

#include <functional>

#include "keps/steps.hpp"

namespace keps {

/// Per-step record for the run manifest.
struct StepRecord {
    int step = 0;
    double t = 0.0;
    int lin_iters = 0;     // linear iterations summed over the four implicit solves
    double min_rho = 0.0;
    double min_k = 0.0;
    double mass_drift = 0.0; // |mass(t) - mass(0)| / mass(0)
};

using StepCallback = std::function<void(const StepRecord&)>;

/// Manufactured-solution forcing evaluated at a given time on the grid.
/// Implementations fill the five per-equation source fields.
class ForcingProvider {
public:
    virtual ~ForcingProvider() = default;
    virtual void eval(double t, ScalarField& f_rho, VectorField& f_u, ScalarField& f_h,
                      ScalarField& f_k, ScalarField& f_eps) const = 0;
};

/// Solves the linearized system over [init.t, init.t + horizon] given the
/// known coefficient triple (v, pi, theta) stored in the u/k/eps slots of
/// `known`. Marches rho -> u -> h -> k -> eps per step (the system is
/// triangular in this order); all coefficients are taken at the new time
/// level. Deterministic. Step errors are rethrown with the failing time
/// level attached in their context.
Trajectory linearized_solve(const State& init, const Trajectory& known, double horizon,
                            const ModelParams& params, const StepConfig& cfg,
                            const StepCallback& on_step = {},
                            const ForcingProvider* forcing = nullptr);

} // namespace keps
