#include "keps/model.hpp"

#include <cmath>

#include "keps/operators.hpp"

namespace keps {

void ModelParams::validate() const {
    if (!(mu > 0) || !(mu_t > 0) || !(mu_e > 0) || !(c1 > 0) || !(c2 > 0) || !(m > 0) ||
        !(c_generic > 0))
        throw InvalidArgument("model parameters must be strictly positive");
    if (!(gamma >= 1.0)) throw InvalidArgument("gamma must be at least 1");
    if (std::abs(mu + mu_t - mu_e) > 1e-12 * mu_e)
        throw InvalidArgument("viscosities must satisfy mu + mu_t = mu_e");
}

void State::validate() const {
    rho.require_finite("State.rho");
    u.require_finite("State.u");
    h.require_finite("State.h");
    k.require_finite("State.k");
    eps.require_finite("State.eps");
    const GridSpec& g = grid();
    if (!u.grid().same_layout(g) || !h.grid().same_layout(g) || !k.grid().same_layout(g) ||
        !eps.grid().same_layout(g))
        throw InvalidArgument("State fields live on different grids");
    if (!(rho.min() > 0.0)) throw NonpositiveDensity(rho.min());
    if (!(k.min() > 0.0)) throw InvalidArgument("State.k must be strictly positive");
}

void Trajectory::validate() const {
    if (states.empty()) throw InvalidArgument("Trajectory has no states");
    if (!(dt > 0.0)) throw InvalidArgument("Trajectory dt must be positive");
    for (std::size_t j = 1; j < states.size(); ++j) {
        const double step = states[j].t - states[j - 1].t;
        if (std::abs(step - dt) > 1e-9 * dt)
            throw InvalidArgument("Trajectory time levels are not uniformly spaced");
    }
    for (const State& s : states) s.validate();
}

ScalarField pressure(const ScalarField& rho, double gamma) {
    const double mn = rho.min();
    if (!(mn > 0.0)) throw NonpositiveDensity(mn);
    ScalarField p(rho.grid());
    for (std::size_t i = 0; i < rho.size(); ++i) p[i] = std::pow(rho[i], gamma);
    return p;
}

ScalarField pressure_dt(const ScalarField& rho, const VectorField& v, double gamma) {
    const double mn = rho.min();
    if (!(mn > 0.0)) throw NonpositiveDensity(mn);
    VectorField rho_v(rho.grid());
    for (int c = 0; c < v.dim(); ++c) {
        auto dst = rho_v.component(c);
        auto src = v.component(c);
        for (std::size_t i = 0; i < rho.size(); ++i) dst[i] = rho[i] * src[i];
    }
    ScalarField div_rv = divergence(rho_v);
    ScalarField out(rho.grid());
    for (std::size_t i = 0; i < rho.size(); ++i)
        out[i] = -gamma * std::pow(rho[i], gamma - 1.0) * div_rv[i];
    return out;
}

namespace {

/// All first derivatives of v: dv[j][i] holds d_j v_i.
std::vector<std::vector<ScalarField>> velocity_jacobian(const VectorField& v) {
    const GridSpec& g = v.grid();
    std::vector<std::vector<ScalarField>> dv;
    dv.reserve(g.dim);
    for (int j = 0; j < g.dim; ++j) {
        std::vector<ScalarField> row;
        row.reserve(g.dim);
        for (int i = 0; i < g.dim; ++i) {
            ScalarField comp = v.component_field(i);
            row.push_back(derivative_axis(comp, j));
        }
        dv.push_back(std::move(row));
    }
    return dv;
}

} // namespace

ScalarField source_sk(const VectorField& v, const ScalarField& rho, const ModelParams& p) {
    const double mn = rho.min();
    if (!(mn > 0.0)) throw NonpositiveDensity(mn);
    const GridSpec& g = v.grid();
    const auto dv = velocity_jacobian(v);

    ScalarField div_v(g, 0.0);
    for (int a = 0; a < g.dim; ++a)
        for (std::size_t idx = 0; idx < div_v.size(); ++idx) div_v[idx] += dv[a][a][idx];

    ScalarField out(g, 0.0);
    for (int i = 0; i < g.dim; ++i) {
        for (int j = 0; j < g.dim; ++j) {
            const double delta = (i == j) ? 1.0 : 0.0;
            const ScalarField& dji = dv[j][i];
            const ScalarField& dij = dv[i][j];
            for (std::size_t idx = 0; idx < out.size(); ++idx) {
                const double bracket =
                    p.mu * (dji[idx] + dij[idx]) - (2.0 / 3.0) * delta * p.mu * div_v[idx];
                out[idx] += bracket * dji[idx];
            }
        }
    }

    // pressure-density gradient coupling, (mu_t / rho^2) grad p . grad rho
    ScalarField pr = pressure(rho, p.gamma);
    VectorField gp = gradient(pr);
    VectorField gr = gradient(rho);
    for (int a = 0; a < g.dim; ++a) {
        auto gpa = gp.component(a);
        auto gra = gr.component(a);
        for (std::size_t idx = 0; idx < out.size(); ++idx)
            out[idx] += p.mu_t / (rho[idx] * rho[idx]) * gpa[idx] * gra[idx];
    }
    return out;
}

ScalarField source_g(const VectorField& v, const ScalarField& rho, const ScalarField& pi,
                     const ModelParams& p) {
    const GridSpec& g = v.grid();
    if (!rho.grid().same_layout(g) || !pi.grid().same_layout(g))
        throw InvalidArgument("source_g: fields on different grids");
    const auto dv = velocity_jacobian(v);

    ScalarField div_v(g, 0.0);
    for (int a = 0; a < g.dim; ++a)
        for (std::size_t idx = 0; idx < div_v.size(); ++idx) div_v[idx] += dv[a][a][idx];

    ScalarField out(g, 0.0);
    for (int i = 0; i < g.dim; ++i) {
        for (int j = 0; j < g.dim; ++j) {
            const double delta = (i == j) ? 1.0 : 0.0;
            const ScalarField& dji = dv[j][i];
            const ScalarField& dij = dv[i][j];
            for (std::size_t idx = 0; idx < out.size(); ++idx) {
                const double bracket =
                    p.mu_e * (dji[idx] + dij[idx]) -
                    (2.0 / 3.0) * delta * (rho[idx] * pi[idx] + p.mu_e * div_v[idx]);
                out[idx] += dji[idx] * bracket;
            }
        }
    }
    return out;
}

} // namespace keps
