#include "keps/steps.hpp"

#include <algorithm>
#include <cmath>

#include "keps/operators.hpp"

namespace keps {

namespace {

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

// Accumulates the upwind flux divergence of rho v and the per-node outflow
// coefficient (the sharp CFL number before the dt factor is applied).
void upwind_sweep(const ScalarField& rho, const VectorField& v, double dt,
                  ScalarField& flux_div, ScalarField& outflow) {
    const GridSpec& g = rho.grid();
    const bool periodic = g.periodic();
    const double* r = rho.raw().data();

    for (int a = 0; a < g.dim; ++a) {
        const AxisShape sh = axis_shape(g, a);
        const double inv_h = 1.0 / g.spacing[a];
        auto va = v.component(a);
        for (std::size_t l = 0; l < sh.nlines; ++l) {
            const std::size_t base = line_base(g, a, l);
            for (int i = 0; i < sh.len; ++i) {
                const std::size_t ci = base + static_cast<std::size_t>(i) * sh.stride;
                // right face i+1/2
                double f_right = 0.0, vplus_r = 0.0;
                if (i + 1 < sh.len || periodic) {
                    const std::size_t ni =
                        base + static_cast<std::size_t>((i + 1) % sh.len) * sh.stride;
                    const double vf = 0.5 * (va[ci] + va[ni]);
                    f_right = vf > 0.0 ? vf * r[ci] : vf * r[ni];
                    vplus_r = std::max(vf, 0.0);
                }
                // left face i-1/2
                double f_left = 0.0, vminus_l = 0.0;
                if (i > 0 || periodic) {
                    const std::size_t pi =
                        base + static_cast<std::size_t>((i + sh.len - 1) % sh.len) * sh.stride;
                    const double vf = 0.5 * (va[pi] + va[ci]);
                    f_left = vf > 0.0 ? vf * r[pi] : vf * r[ci];
                    vminus_l = std::min(vf, 0.0);
                }
                flux_div[ci] += (f_right - f_left) * inv_h;
                outflow[ci] += dt * (vplus_r - vminus_l) * inv_h;
            }
        }
    }
}

ScalarBc velocity_bc(const GridSpec& g) {
    return g.periodic() ? ScalarBc::periodic : ScalarBc::dirichlet0;
}

void require_positive_rho(const ScalarField& rho) {
    const double mn = rho.min();
    if (!(mn > 0.0)) throw NonpositiveDensity(mn);
}

// y = (rho/dt) x + rho (v.grad x) - Lap_bc x + sink x, flattened scalar form
ApplyFn scalar_operator(const ScalarField& rho, const VectorField& v, ScalarBc bc,
                        const StepConfig& cfg, const ScalarField* sink = nullptr) {
    const GridSpec* g = &rho.grid();
    return [g, &rho, &v, bc, &cfg, sink](const std::vector<double>& xv, std::vector<double>& yv) {
        ScalarField x(*g);
        std::copy(xv.begin(), xv.end(), x.values().begin());
        ScalarField conv = convect(v, x);
        ScalarField lap = laplacian(x, bc);
        yv.resize(xv.size());
        for (std::size_t i = 0; i < xv.size(); ++i) {
            yv[i] = rho[i] * (xv[i] / cfg.dt + conv[i]) - lap[i];
            if (sink != nullptr) yv[i] += (*sink)[i] * xv[i];
        }
    };
}

std::vector<double> scalar_diagonal(const ScalarField& rho, const StepConfig& cfg,
                                    const ScalarField* sink = nullptr) {
    const GridSpec& g = rho.grid();
    double lap_diag = 0.0;
    for (int a = 0; a < g.dim; ++a) lap_diag += 2.0 / (g.spacing[a] * g.spacing[a]);
    std::vector<double> d(rho.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = rho[i] / cfg.dt + lap_diag;
        if (sink != nullptr) d[i] += (*sink)[i];
    }
    return d;
}

ScalarField implicit_scalar_solve(const ScalarField& rho, const VectorField& v, ScalarBc bc,
                                  const StepConfig& cfg, const ScalarField& rhs,
                                  SolveStats* stats, const ScalarField* sink = nullptr) {
    auto op = scalar_operator(rho, v, bc, cfg, sink);
    auto diag = scalar_diagonal(rho, cfg, sink);
    auto [x, st] = solve_linear_system(op, rhs.raw(), cfg, &diag);
    if (stats != nullptr) *stats = st;
    ScalarField out(rho.grid());
    std::copy(x.begin(), x.end(), out.values().begin());
    return out;
}

} // namespace

double transport_cfl(const VectorField& v, const StepConfig& cfg) {
    ScalarField rho(v.grid(), 1.0);
    ScalarField flux_div(v.grid(), 0.0), outflow(v.grid(), 0.0);
    upwind_sweep(rho, v, cfg.dt, flux_div, outflow);
    return outflow.max();
}

ScalarField upwind_flux_divergence(const ScalarField& rho, const VectorField& v) {
    ScalarField flux_div(rho.grid(), 0.0), outflow(rho.grid(), 0.0);
    upwind_sweep(rho, v, 1.0, flux_div, outflow);
    return flux_div;
}

ScalarField transport_step(const ScalarField& rho, const VectorField& v, const StepConfig& cfg,
                           const ScalarField* forcing) {
    require_positive_rho(rho);
    const GridSpec& g = rho.grid();
    ScalarField flux_div(g, 0.0), outflow(g, 0.0);
    upwind_sweep(rho, v, cfg.dt, flux_div, outflow);
    const double cfl = outflow.max();
    if (cfl > 0.9) throw CflViolation(cfl);

    ScalarField out(g);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = rho[i] - cfg.dt * flux_div[i];
    if (forcing != nullptr)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += cfg.dt * (*forcing)[i];
    return out;
}

VectorField momentum_step(const State& state, const VectorField& v, const ScalarField& pi,
                          const ModelParams& params, const StepConfig& cfg, SolveStats* stats,
                          const VectorField* forcing) {
    const ScalarField& rho = state.rho;
    require_positive_rho(rho);
    const GridSpec& g = rho.grid();
    const ScalarBc bc = velocity_bc(g);
    const int dim = g.dim;
    const std::size_t nn = g.node_count();

    ApplyFn op = [&](const std::vector<double>& xv, std::vector<double>& yv) {
        VectorField x(g);
        std::copy(xv.begin(), xv.end(), x.raw().begin());
        VectorField gd = grad_div(x);
        yv.assign(xv.size(), 0.0);
        for (int c = 0; c < dim; ++c) {
            ScalarField xc = x.component_field(c);
            ScalarField conv = convect(v, xc);
            ScalarField lap = laplacian(xc, bc);
            auto gdc = gd.component(c);
            for (std::size_t i = 0; i < nn; ++i)
                yv[c * nn + i] = rho[i] * (xc[i] / cfg.dt + conv[i]) - lap[i] - gdc[i];
        }
    };

    double lap_diag = 0.0;
    for (int a = 0; a < dim; ++a) lap_diag += 2.0 / (g.spacing[a] * g.spacing[a]);
    std::vector<double> diag(dim * nn);
    for (int c = 0; c < dim; ++c) {
        const double own = 2.0 / (g.spacing[c] * g.spacing[c]);
        for (std::size_t i = 0; i < nn; ++i) diag[c * nn + i] = rho[i] / cfg.dt + lap_diag + own;
    }

    // rhs = rho u_old/dt - grad p - (2/3) grad(rho pi)
    ScalarField p = pressure(rho, params.gamma);
    VectorField grad_p = gradient(p);
    VectorField grad_rpi = gradient(hadamard(rho, pi));
    std::vector<double> rhs(dim * nn);
    for (int c = 0; c < dim; ++c) {
        auto uo = state.u.component(c);
        auto gp = grad_p.component(c);
        auto gr = grad_rpi.component(c);
        for (std::size_t i = 0; i < nn; ++i)
            rhs[c * nn + i] = rho[i] * uo[i] / cfg.dt - gp[i] - (2.0 / 3.0) * gr[i];
    }
    if (forcing != nullptr)
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += forcing->raw()[i];

    auto [x, st] = solve_linear_system(op, rhs, cfg, &diag);
    if (stats != nullptr) *stats = st;
    VectorField out(g);
    std::copy(x.begin(), x.end(), out.raw().begin());
    return out;
}

ScalarField enthalpy_step(const State& state, const VectorField& v, const VectorField& u_new,
                          const ModelParams& params, const StepConfig& cfg, SolveStats* stats,
                          const ScalarField* forcing) {
    const ScalarField& rho = state.rho;
    require_positive_rho(rho);
    const GridSpec& g = rho.grid();
    const ScalarBc bc = g.wall_dirichlet();

    ScalarField p = pressure(rho, params.gamma);
    ScalarField p_t = pressure_dt(rho, v, params.gamma);
    ScalarField u_gradp = convect(u_new, p);
    ScalarField sk = source_sk(v, rho, params);

    ScalarField rhs(g);
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] = rho[i] * state.h[i] / cfg.dt + p_t[i] + u_gradp[i] + sk[i];
    if (forcing != nullptr)
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += (*forcing)[i];

    return implicit_scalar_solve(rho, v, bc, cfg, rhs, stats);
}

ScalarField tke_step(const State& state, const VectorField& v, const ScalarField& pi,
                     const ScalarField& theta, const ModelParams& params, const StepConfig& cfg,
                     SolveStats* stats, const ScalarField* forcing) {
    const ScalarField& rho = state.rho;
    require_positive_rho(rho);
    const GridSpec& g = rho.grid();
    const ScalarBc bc = g.wall_neumann();

    ScalarField gprime = source_g(v, rho, pi, params);
    ScalarField rhs(g);
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] = rho[i] * state.k[i] / cfg.dt + gprime[i] - rho[i] * theta[i];
    if (forcing != nullptr)
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += (*forcing)[i];

    return implicit_scalar_solve(rho, v, bc, cfg, rhs, stats);
}

ScalarField dissipation_step(const State& state, const VectorField& v, const ScalarField& pi,
                             const ScalarField& theta, const ModelParams& params,
                             const StepConfig& cfg, SolveStats* stats,
                             const ScalarField* forcing) {
    const ScalarField& rho = state.rho;
    require_positive_rho(rho);
    const GridSpec& g = rho.grid();
    const ScalarBc bc = g.wall_neumann();

    const double floor = std::max(cfg.k_floor, 0.0);
    const double min_pi = pi.min();
    if (min_pi <= floor) throw TurbulentEnergyFloor(min_pi, floor);

    ScalarField gprime = source_g(v, rho, pi, params);
    ScalarField rhs(g);
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] = rho[i] * state.eps[i] / cfg.dt + params.c1 * gprime[i] * theta[i] / pi[i];

    if (cfg.implicit_sink) {
        ScalarField sink(g);
        for (std::size_t i = 0; i < sink.size(); ++i)
            sink[i] = params.c2 * rho[i] * theta[i] / pi[i];
        if (forcing != nullptr)
            for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += (*forcing)[i];
        return implicit_scalar_solve(rho, v, bc, cfg, rhs, stats, &sink);
    }

    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] -= params.c2 * rho[i] * theta[i] * theta[i] / pi[i];
    if (forcing != nullptr)
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += (*forcing)[i];
    return implicit_scalar_solve(rho, v, bc, cfg, rhs, stats);
}

} // namespace keps
