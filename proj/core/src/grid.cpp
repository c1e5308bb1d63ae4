#include "keps/grid.hpp"

namespace keps {

GridSpec GridSpec::box(int dim, std::array<int, 3> n, std::array<double, 3> length, BcMode bc) {
    if (dim < 1 || dim > 3) throw InvalidArgument("grid dim must be 1, 2 or 3");
    GridSpec g;
    g.dim = dim;
    for (int a = 0; a < 3; ++a) {
        if (a < dim) {
            if (n[a] < 4) throw InvalidArgument("grid needs at least 4 cells per axis");
            if (!(length[a] > 0.0)) throw InvalidArgument("grid length must be positive");
            g.n[a] = n[a];
            g.length[a] = length[a];
            g.spacing[a] = length[a] / n[a];
            if (!(g.spacing[a] > 0.0)) throw InvalidArgument("grid spacing must be positive");
        } else {
            g.n[a] = 1;
            g.length[a] = 1.0;
            g.spacing[a] = 1.0;
        }
    }
    if (bc == BcMode::periodic) {
        g.bc_velocity = VelocityBc::periodic;
        g.bc_scalar_dirichlet = ScalarDirichletBc::periodic;
        g.bc_scalar_neumann = ScalarNeumannBc::periodic;
    } else {
        g.bc_velocity = VelocityBc::dirichlet0;
        g.bc_scalar_dirichlet = ScalarDirichletBc::standard;
        g.bc_scalar_neumann = ScalarNeumannBc::standard;
    }
    return g;
}

} // namespace keps
