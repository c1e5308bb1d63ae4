#pragma once

#include <array>
#include <cstddef>

#include "keps/errors.hpp"

namespace keps {

/// Run-level boundary mode. Periodic exists for testing (translation
/// invariance, Fourier oracles); wall is the model's default.
enum class BcMode { wall, periodic };

enum class VelocityBc { dirichlet0, periodic };
enum class ScalarDirichletBc { standard, periodic };
enum class ScalarNeumannBc { standard, periodic };

/// Per-call scalar boundary treatment for stencils that need ghost values.
enum class ScalarBc { dirichlet0, neumann0, periodic };

/// Axis-aligned box with n_i cells per axis, h_i = length_i / n_i, unknowns
/// collocated at cell centers x = (i + 1/2) h. Periodic is all-or-nothing:
/// mixing periodic and wall axes is rejected at construction.
struct GridSpec {
    int dim = 1;
    std::array<int, 3> n{1, 1, 1};
    std::array<double, 3> length{1.0, 1.0, 1.0};
    std::array<double, 3> spacing{1.0, 1.0, 1.0};
    VelocityBc bc_velocity = VelocityBc::dirichlet0;
    ScalarDirichletBc bc_scalar_dirichlet = ScalarDirichletBc::standard;
    ScalarNeumannBc bc_scalar_neumann = ScalarNeumannBc::standard;

    static GridSpec box(int dim, std::array<int, 3> n, std::array<double, 3> length,
                        BcMode bc = BcMode::wall);

    bool periodic() const { return bc_velocity == VelocityBc::periodic; }

    std::size_t node_count() const {
        std::size_t c = 1;
        for (int a = 0; a < dim; ++a) c *= static_cast<std::size_t>(n[a]);
        return c;
    }

    /// Midpoint quadrature weight (cell volume).
    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= spacing[a];
        return v;
    }

    double pos(int axis, int i) const { return (i + 0.5) * spacing[axis]; }

    // axis 0 is the fastest-varying storage index
    std::size_t index(int i0, int i1 = 0, int i2 = 0) const {
        return static_cast<std::size_t>(i0) +
               static_cast<std::size_t>(n[0]) *
                   (static_cast<std::size_t>(i1) + static_cast<std::size_t>(n[1]) * i2);
    }

    bool same_layout(const GridSpec& o) const {
        if (dim != o.dim || periodic() != o.periodic()) return false;
        for (int a = 0; a < dim; ++a)
            if (n[a] != o.n[a] || length[a] != o.length[a]) return false;
        return true;
    }

    ScalarBc wall_dirichlet() const {
        return periodic() ? ScalarBc::periodic : ScalarBc::dirichlet0;
    }
    ScalarBc wall_neumann() const {
        return periodic() ? ScalarBc::periodic : ScalarBc::neumann0;
    }
};

} // namespace keps
