#include "keps/operators.hpp"

#include <cstddef>

#include "keps/parallel.hpp"

namespace keps {

namespace {

struct AxisShape {
    std::size_t stride;  // storage stride along the axis
    int len;             // nodes along the axis
    std::size_t nlines;  // number of independent lines
};

AxisShape axis_shape(const GridSpec& g, int axis) {
    std::size_t stride = 1;
    for (int a = 0; a < axis; ++a) stride *= static_cast<std::size_t>(g.n[a]);
    return {stride, g.n[axis], g.node_count() / static_cast<std::size_t>(g.n[axis])};
}

// Base storage offset of line l for the given axis: enumerate all nodes with
// the axis coordinate fixed at 0.
std::size_t line_base(const GridSpec& g, int axis, std::size_t l) {
    // decompose l over the non-axis dimensions, slowest axis last
    std::size_t base = 0;
    std::size_t rem = l;
    std::size_t stride = 1;
    for (int a = 0; a < g.dim; ++a) {
        const std::size_t na = static_cast<std::size_t>(g.n[a]);
        if (a != axis) {
            const std::size_t ia = rem % na;
            rem /= na;
            base += ia * stride;
        }
        stride *= na;
    }
    return base;
}

template <class LineFn>
void for_each_line(const GridSpec& g, int axis, const LineFn& fn) {
    const AxisShape sh = axis_shape(g, axis);
    parallel_chunks(sh.nlines, [&](std::size_t l0, std::size_t l1) {
        for (std::size_t l = l0; l < l1; ++l) fn(line_base(g, axis, l), sh.stride, sh.len);
    });
}

} // namespace

void derivative_axis(const ScalarField& f, int axis, ScalarField& out) {
    const GridSpec& g = f.grid();
    const double h = g.spacing[axis];
    const double inv2h = 1.0 / (2.0 * h);
    const bool periodic = g.periodic();
    const double* x = f.raw().data();
    double* y = out.raw().data();

    for_each_line(g, axis, [&](std::size_t base, std::size_t s, int len) {
        if (periodic) {
            for (int i = 0; i < len; ++i) {
                const int ip = (i + 1 == len) ? 0 : i + 1;
                const int im = (i == 0) ? len - 1 : i - 1;
                y[base + i * s] = (x[base + ip * s] - x[base + im * s]) * inv2h;
            }
        } else {
            y[base] = (-3.0 * x[base] + 4.0 * x[base + s] - x[base + 2 * s]) * inv2h;
            for (int i = 1; i + 1 < len; ++i)
                y[base + i * s] = (x[base + (i + 1) * s] - x[base + (i - 1) * s]) * inv2h;
            const std::size_t e = base + static_cast<std::size_t>(len - 1) * s;
            y[e] = (3.0 * x[e] - 4.0 * x[e - s] + x[e - 2 * s]) * inv2h;
        }
    });
}

ScalarField derivative_axis(const ScalarField& f, int axis) {
    ScalarField out(f.grid());
    derivative_axis(f, axis, out);
    return out;
}

VectorField gradient(const ScalarField& f) {
    const GridSpec& g = f.grid();
    VectorField out(g);
    for (int a = 0; a < g.dim; ++a) {
        ScalarField d(g);
        derivative_axis(f, a, d);
        auto dst = out.component(a);
        auto src = d.values();
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i];
    }
    return out;
}

ScalarField divergence(const VectorField& u) {
    const GridSpec& g = u.grid();
    ScalarField out(g, 0.0);
    ScalarField comp(g);
    ScalarField d(g);
    for (int a = 0; a < g.dim; ++a) {
        auto src = u.component(a);
        for (std::size_t i = 0; i < src.size(); ++i) comp[i] = src[i];
        derivative_axis(comp, a, d);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += d[i];
    }
    return out;
}

namespace {

// One axis of the Laplacian with ghost values from the BC. Dirichlet0 ghost
// mirrors oddly about the wall face (ghost = -first), Neumann0 evenly
// (ghost = first).
void laplacian_axis_accumulate(const ScalarField& f, int axis, ScalarBc bc, ScalarField& out) {
    const GridSpec& g = f.grid();
    const double invh2 = 1.0 / (g.spacing[axis] * g.spacing[axis]);
    const double* x = f.raw().data();
    double* y = out.raw().data();

    for_each_line(g, axis, [&](std::size_t base, std::size_t s, int len) {
        for (int i = 0; i < len; ++i) {
            double xm, xp;
            const double xc = x[base + i * s];
            if (i == 0) {
                if (bc == ScalarBc::periodic) xm = x[base + (len - 1) * s];
                else if (bc == ScalarBc::dirichlet0) xm = -xc;
                else xm = xc;
            } else {
                xm = x[base + (i - 1) * s];
            }
            if (i + 1 == len) {
                if (bc == ScalarBc::periodic) xp = x[base];
                else if (bc == ScalarBc::dirichlet0) xp = -xc;
                else xp = xc;
            } else {
                xp = x[base + (i + 1) * s];
            }
            y[base + i * s] += (xm - 2.0 * xc + xp) * invh2;
        }
    });
}

} // namespace

ScalarField laplacian(const ScalarField& f, ScalarBc bc) {
    ScalarField out(f.grid(), 0.0);
    for (int a = 0; a < f.grid().dim; ++a) laplacian_axis_accumulate(f, a, bc, out);
    return out;
}

VectorField grad_div(const VectorField& u) { return gradient(divergence(u)); }

ScalarField convect(const VectorField& v, const ScalarField& f) {
    const GridSpec& g = f.grid();
    ScalarField out(g, 0.0);
    ScalarField d(g);
    for (int a = 0; a < g.dim; ++a) {
        derivative_axis(f, a, d);
        auto va = v.component(a);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += va[i] * d[i];
    }
    return out;
}

double inner_l2(const ScalarField& f, const ScalarField& g) {
    return blocked_dot(f.values(), g.values()) * f.grid().cell_volume();
}

double inner_l2(const VectorField& f, const VectorField& g) {
    return blocked_dot(f.raw(), g.raw()) * f.grid().cell_volume();
}

double integral(const ScalarField& f) {
    return blocked_sum(f.values()) * f.grid().cell_volume();
}

std::vector<double> ghost_layer(const ScalarField& f, int axis, int side, ScalarBc bc) {
    const GridSpec& g = f.grid();
    const AxisShape sh = axis_shape(g, axis);
    const double* x = f.raw().data();
    std::vector<double> ghosts(sh.nlines);
    for (std::size_t l = 0; l < sh.nlines; ++l) {
        const std::size_t base = line_base(g, axis, l);
        const double lo = x[base];
        const double hi = x[base + static_cast<std::size_t>(sh.len - 1) * sh.stride];
        const double inner = (side < 0) ? lo : hi;
        const double wrap = (side < 0) ? hi : lo;
        switch (bc) {
            case ScalarBc::periodic: ghosts[l] = wrap; break;
            case ScalarBc::dirichlet0: ghosts[l] = -inner; break;
            case ScalarBc::neumann0: ghosts[l] = inner; break;
        }
    }
    return ghosts;
}

} // namespace keps
