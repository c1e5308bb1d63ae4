#include "keps/validation.hpp"

#include <algorithm>
#include <cmath>

#include "keps/norms.hpp"

namespace keps {

namespace {

double trace_tol(double max_abs) { return std::max(1e-10 * max_abs, 1e-14); }

struct AxisShape {
    std::size_t stride;
    int len;
    std::size_t nlines;
};

AxisShape axis_shape(const GridSpec& g, int axis) {
    std::size_t stride = 1;
    for (int a = 0; a < axis; ++a) stride *= static_cast<std::size_t>(g.n[a]);
    return {stride, g.n[axis], g.node_count() / static_cast<std::size_t>(g.n[axis])};
}

std::size_t line_base(const GridSpec& g, int axis, std::size_t l) {
    std::size_t base = 0, rem = l, stride = 1;
    for (int a = 0; a < g.dim; ++a) {
        const std::size_t na = static_cast<std::size_t>(g.n[a]);
        if (a != axis) {
            base += (rem % na) * stride;
            rem /= na;
        }
        stride *= na;
    }
    return base;
}

// max |f| over the node layers adjacent to the two wall faces of `axis`
double max_boundary_value(const std::vector<double>& f, const GridSpec& g, int axis) {
    const AxisShape sh = axis_shape(g, axis);
    double m = 0.0;
    for (std::size_t l = 0; l < sh.nlines; ++l) {
        const std::size_t base = line_base(g, axis, l);
        m = std::max(m, std::abs(f[base]));
        m = std::max(m, std::abs(f[base + static_cast<std::size_t>(sh.len - 1) * sh.stride]));
    }
    return m;
}

// max one-sided second-order normal difference over both wall faces of `axis`
double max_normal_difference(const std::vector<double>& f, const GridSpec& g, int axis) {
    const AxisShape sh = axis_shape(g, axis);
    const double inv2h = 1.0 / (2.0 * g.spacing[axis]);
    double m = 0.0;
    for (std::size_t l = 0; l < sh.nlines; ++l) {
        const std::size_t base = line_base(g, axis, l);
        const std::size_t s = sh.stride;
        const double lo = (-3.0 * f[base] + 4.0 * f[base + s] - f[base + 2 * s]) * inv2h;
        const std::size_t e = base + static_cast<std::size_t>(sh.len - 1) * s;
        const double hi = (3.0 * f[e] - 4.0 * f[e - s] + f[e - 2 * s]) * inv2h;
        m = std::max(m, std::max(std::abs(lo), std::abs(hi)));
    }
    return m;
}

} // namespace

ValidationReport validate_initial(const State& init, const ModelParams& params) {
    const GridSpec& g = init.grid();
    ValidationReport rep;

    auto add = [&](std::string clause, bool pass, double measured, double bound,
                   std::string detail = {}) {
        rep.clauses.push_back(
            {std::move(clause), pass, measured, bound, std::move(detail)});
    };

    // positive floors
    const double min_rho = init.rho.min();
    add("0 < m < rho0", min_rho > params.m && params.m > 0.0, min_rho, params.m);
    const double min_k = init.k.min();
    add("0 < m < k0", min_k > params.m && params.m > 0.0, min_k, params.m);

    // regularity: the discrete norms must exist and be finite
    bool norms_ok = true;
    double c0 = 0.0;
    try {
        const double rho_h3 = sobolev_norm(init.rho, 3);
        add("rho0 in H3", std::isfinite(rho_h3), rho_h3, 0.0);
        norms_ok &= std::isfinite(rho_h3);
        const double u_h3 = sobolev_norm(init.u, 3);
        add("u0 in H3", std::isfinite(u_h3), u_h3, 0.0);
        norms_ok &= std::isfinite(u_h3);
        const double low = std::sqrt(sobolev_norm_sq(init.h, 2) + sobolev_norm_sq(init.k, 2) +
                                     sobolev_norm_sq(init.eps, 2));
        add("(h0, k0, eps0) in H2", std::isfinite(low), low, 0.0);
        norms_ok &= std::isfinite(low);
        if (norms_ok) c0 = compute_c0(init);
    } catch (const InsufficientResolution& e) {
        add("initial norms computable", false, 0.0, 0.0, e.what());
        norms_ok = false;
    }
    rep.c0 = c0;
    rep.c0_valid = norms_ok;

    // boundary traces (vacuous on periodic grids)
    if (g.periodic()) {
        add("u0.n = 0 on boundary", true, 0.0, 0.0, "periodic: no boundary");
        add("h0 = 0 on boundary", true, 0.0, 0.0, "periodic: no boundary");
        add("dk0/dn = 0 on boundary", true, 0.0, 0.0, "periodic: no boundary");
        add("deps0/dn = 0 on boundary", true, 0.0, 0.0, "periodic: no boundary");
    } else {
        double un = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            std::vector<double> comp(init.u.component(a).begin(), init.u.component(a).end());
            un = std::max(un, max_boundary_value(comp, g, a));
        }
        const double tol_u = trace_tol(init.u.max_abs());
        add("u0.n = 0 on boundary", un <= tol_u, un, tol_u);

        double hb = 0.0;
        for (int a = 0; a < g.dim; ++a) hb = std::max(hb, max_boundary_value(init.h.raw(), g, a));
        const double tol_h = trace_tol(init.h.max_abs());
        add("h0 = 0 on boundary", hb <= tol_h, hb, tol_h);

        double kn = 0.0, en = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            kn = std::max(kn, max_normal_difference(init.k.raw(), g, a));
            en = std::max(en, max_normal_difference(init.eps.raw(), g, a));
        }
        const double tol_k = trace_tol(init.k.max_abs());
        add("dk0/dn = 0 on boundary", kn <= tol_k, kn, tol_k);
        const double tol_e = trace_tol(init.eps.max_abs());
        add("deps0/dn = 0 on boundary", en <= tol_e, en, tol_e);
    }

    rep.pass = std::all_of(rep.clauses.begin(), rep.clauses.end(),
                           [](const ClauseResult& c) { return c.pass; });
    return rep;
}

} // namespace keps
