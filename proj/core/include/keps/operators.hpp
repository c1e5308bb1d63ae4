#pragma once

#include "keps/field.hpp"

namespace keps {

/// First derivative along one axis: second-order centered at interior nodes,
/// one-sided second-order at wall boundary nodes, wraparound when periodic.
void derivative_axis(const ScalarField& f, int axis, ScalarField& out);
ScalarField derivative_axis(const ScalarField& f, int axis);

/// Nabla f. Exact on affine fields (including wall boundary nodes).
VectorField gradient(const ScalarField& f);

/// Nabla . u with the same stencil rules as gradient, summed over axes.
ScalarField divergence(const VectorField& u);

/// Standard 2*dim+1-point Laplacian with BC-consistent ghost values:
/// dirichlet0 -> odd reflection about the wall value 0, neumann0 -> even
/// reflection, periodic -> wraparound. Exact on quadratics at interior nodes.
ScalarField laplacian(const ScalarField& f, ScalarBc bc);

/// Nabla(div u), computed as the divergence-then-gradient composition
/// (stencil width 2).
VectorField grad_div(const VectorField& u);

/// v . grad f.
ScalarField convect(const VectorField& v, const ScalarField& f);

/// Discrete integral of f*g (midpoint quadrature, deterministic summation).
double inner_l2(const ScalarField& f, const ScalarField& g);
double inner_l2(const VectorField& f, const VectorField& g);

/// Integral of f over the box.
double integral(const ScalarField& f);

/// Ghost layer of f just outside the wall face of `axis` (side -1 = low,
/// +1 = high) under the given BC, in line order. Ghost fill never modifies
/// stored node values; this exposes the fill for inspection.
std::vector<double> ghost_layer(const ScalarField& f, int axis, int side, ScalarBc bc);

} // namespace keps
