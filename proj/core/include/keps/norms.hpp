#pragma once

#include "keps/model.hpp"

namespace keps {

/// Discrete H^order norm: sqrt of the sum over all multi-indices |alpha| <=
/// order of ||D^alpha f||^2_L2, with D the per-axis centered/one-sided first
/// difference applied repeatedly. Requires n_i >= 2*order + 2 per axis
/// (throws InsufficientResolution below that).
double sobolev_norm(const ScalarField& f, int order);
double sobolev_norm(const VectorField& f, int order);

/// Squared versions (cheaper building block for joint norms).
double sobolev_norm_sq(const ScalarField& f, int order);
double sobolev_norm_sq(const VectorField& f, int order);

/// c0 = 2 + ||(rho0, u0)||_H3 + ||(h0, k0, eps0)||_H2, joint norms taken as
/// the root of the summed squares.
double compute_c0(const State& init);

} // namespace keps
