#pragma once

#include <cmath>
#include <random>

#include "keps/operators.hpp"

namespace keps::test {

inline GridSpec grid1d(int n, BcMode bc = BcMode::wall, double len = 1.0) {
    return GridSpec::box(1, {n, 1, 1}, {len, 1.0, 1.0}, bc);
}

inline GridSpec grid2d(int n, BcMode bc = BcMode::wall, double len = 1.0) {
    return GridSpec::box(2, {n, n, 1}, {len, len, 1.0}, bc);
}

inline GridSpec grid3d(int n, BcMode bc = BcMode::wall, double len = 1.0) {
    return GridSpec::box(3, {n, n, n}, {len, len, len}, bc);
}

/// Smooth random scalar: a short trigonometric series with seeded
/// coefficients, periodic-compatible on unit boxes.
inline ScalarField random_smooth(const GridSpec& g, unsigned seed, double amplitude = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    struct Mode {
        double a, kx, ky, kz, px, py, pz;
    };
    std::vector<Mode> modes;
    for (int m = 0; m < 4; ++m) {
        Mode md;
        md.a = coef(rng) * amplitude / 4.0;
        md.kx = 2.0 * M_PI * (1 + m % 2);
        md.ky = 2.0 * M_PI * (1 + (m / 2) % 2);
        md.kz = 2.0 * M_PI;
        md.px = coef(rng) * M_PI;
        md.py = coef(rng) * M_PI;
        md.pz = coef(rng) * M_PI;
        modes.push_back(md);
    }
    return ScalarField::from_function(g, [&](double x, double y, double z) {
        double v = 0.0;
        for (const Mode& m : modes)
            v += m.a * std::sin(m.kx * x + m.px) * std::cos(m.ky * y + m.py) *
                 std::cos(m.kz * z + m.pz);
        return v;
    });
}

inline VectorField random_smooth_vector(const GridSpec& g, unsigned seed, double amplitude = 1.0) {
    VectorField out(g);
    for (int c = 0; c < g.dim; ++c) {
        ScalarField s = random_smooth(g, seed + 101 * static_cast<unsigned>(c), amplitude);
        std::copy(s.values().begin(), s.values().end(), out.component(c).begin());
    }
    return out;
}

inline double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.raw()[i] - b.raw()[i]));
    return m;
}

} // namespace keps::test
