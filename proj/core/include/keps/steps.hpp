#pragma once

#include "keps/linear_solver.hpp"
#include "keps/model.hpp"

namespace keps {

/// Explicit conservative first-order upwind finite-volume update of
///   rho_t + div(rho v) = 0.
/// Face velocities are node averages; wall boundary faces carry zero flux
/// (v.n = 0), periodic faces wrap. Total discrete mass is conserved to
/// roundoff and positivity holds under the CFL precondition
///   dt * max_node sum_axes (v+_right - v-_left)/h_axis <= 0.9,
/// the sharp monotonicity number (throws CflViolation above it).
/// `forcing`, when given, adds dt*forcing pointwise (manufactured solutions).
ScalarField transport_step(const ScalarField& rho, const VectorField& v, const StepConfig& cfg,
                           const ScalarField* forcing = nullptr);

/// Backward-Euler solve of
///   (rho/dt + rho v.grad - Lap - grad div) u_new
///       = rho u_old/dt - grad p - (2/3) grad(rho pi) [+ forcing],
/// with rho the new-time density (state.rho) and p = rho^gamma. Velocity BC
/// is full homogeneous Dirichlet (or periodic) per the grid.
VectorField momentum_step(const State& state, const VectorField& v, const ScalarField& pi,
                          const ModelParams& params, const StepConfig& cfg,
                          SolveStats* stats = nullptr, const VectorField* forcing = nullptr);

/// Backward-Euler solve of the enthalpy equation with Dirichlet h = 0 at
/// walls; source p_t + u_new.grad p + S'_k(v, rho).
ScalarField enthalpy_step(const State& state, const VectorField& v, const VectorField& u_new,
                          const ModelParams& params, const StepConfig& cfg,
                          SolveStats* stats = nullptr, const ScalarField* forcing = nullptr);

/// Backward-Euler solve of the k equation with homogeneous Neumann BC;
/// source G'(v, rho, pi) - rho theta, sink explicit.
ScalarField tke_step(const State& state, const VectorField& v, const ScalarField& pi,
                     const ScalarField& theta, const ModelParams& params, const StepConfig& cfg,
                     SolveStats* stats = nullptr, const ScalarField* forcing = nullptr);

/// Backward-Euler solve of the eps equation with homogeneous Neumann BC;
/// sources C1 G' theta/pi - C2 rho theta^2/pi. Requires min(pi) above the
/// configured floor (throws TurbulentEnergyFloor otherwise). With
/// cfg.implicit_sink the factor theta of the quadratic sink multiplies the
/// unknown instead, moving C2 rho theta/pi into the operator.
ScalarField dissipation_step(const State& state, const VectorField& v, const ScalarField& pi,
                             const ScalarField& theta, const ModelParams& params,
                             const StepConfig& cfg, SolveStats* stats = nullptr,
                             const ScalarField* forcing = nullptr);

/// dt * max_node sum_axes (v+_right - v-_left)/h_axis, the monotonicity
/// number checked by transport_step.
double transport_cfl(const VectorField& v, const StepConfig& cfg);

/// The conservative upwind divergence of rho v used by transport_step
/// (zero-flux wall faces / periodic wrap).
ScalarField upwind_flux_divergence(const ScalarField& rho, const VectorField& v);

} // namespace keps
