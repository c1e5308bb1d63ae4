#pragma once

#include <vector>

#include "keps/field.hpp"

namespace keps {

/// Physical constants of the model. mu + mu_t = mu_e is enforced.
/// The numeric defaults are configuration, not values from the analysis:
/// C1, C2 follow the standard model calibration, gamma is the diatomic
/// adiabatic exponent, m is the assumed positive floor for rho0 and k0.
struct ModelParams {
    double mu = 1.0;
    double mu_t = 1.0;
    double mu_e = 2.0;
    double c1 = 1.44;
    double c2 = 1.92;
    double gamma = 1.4;
    double m = 0.1;
    double c_generic = 1.0; // the generic estimate constant C, unquantified upstream

    void validate() const;
};

/// The five unknowns at one time level.
struct State {
    double t = 0.0;
    ScalarField rho;
    VectorField u;
    ScalarField h;
    ScalarField k;
    ScalarField eps;

    explicit State(const GridSpec& g)
        : rho(g, 1.0), u(g, 0.0), h(g, 0.0), k(g, 1.0), eps(g, 0.0) {}

    const GridSpec& grid() const { return rho.grid(); }

    /// min(rho) > 0, min(k) > 0, all fields finite on one grid.
    void validate() const;
};

/// Time-indexed sequence of states at uniform dt. Also houses a known
/// coefficient triple (v, pi, theta) in the u/k/eps slots when used as the
/// linearization input.
struct Trajectory {
    double dt = 0.0;
    std::vector<State> states;

    const GridSpec& grid() const { return states.front().grid(); }
    int levels() const { return static_cast<int>(states.size()); }
    double horizon() const { return states.empty() ? 0.0 : states.back().t - states.front().t; }

    void validate() const;
};

/// p = rho^gamma. Throws NonpositiveDensity if min(rho) <= 0.
ScalarField pressure(const ScalarField& rho, double gamma);

/// p_t obtained by chaining the pressure law with the transport equation:
/// p_t = -gamma rho^(gamma-1) div(rho v).
ScalarField pressure_dt(const ScalarField& rho, const VectorField& v, double gamma);

/// Turbulence production for the enthalpy equation,
///   S'_k = [mu(d_j v_i + d_i v_j) - (2/3) delta_ij mu d_l v_l] d_j v_i
///        + (mu_t / rho^2) d_j p d_j rho,  p = rho^gamma.
ScalarField source_sk(const VectorField& v, const ScalarField& rho, const ModelParams& p);

/// Turbulence production for the k / eps equations,
///   G' = d_j v_i [mu_e(d_j v_i + d_i v_j) - (2/3) delta_ij (rho pi + mu_e d_l v_l)].
ScalarField source_g(const VectorField& v, const ScalarField& rho, const ScalarField& pi,
                     const ModelParams& p);

} // namespace keps
