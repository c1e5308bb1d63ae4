#include "keps/monitor.hpp"

#include <cmath>

#include "keps/norms.hpp"
#include "keps/operators.hpp"

namespace keps {

namespace {

void check_finite(const ScalarField& f, const char* name, int level) {
    if (!f.finite()) throw BlowupDetected(name, level);
}

void check_finite(const VectorField& f, const char* name, int level) {
    if (!f.finite()) throw BlowupDetected(name, level);
}

double sqrt_rho_l2(const ScalarField& rho, const ScalarField& d) {
    ScalarField w = hadamard(rho, hadamard(d, d));
    return std::sqrt(integral(w));
}

double sqrt_rho_l2(const ScalarField& rho, const VectorField& d) {
    double s = 0.0;
    for (int c = 0; c < d.dim(); ++c) {
        ScalarField dc = d.component_field(c);
        ScalarField w = hadamard(rho, hadamard(dc, dc));
        s += integral(w);
    }
    return std::sqrt(s);
}

double grad_sup_norm(const VectorField& v) {
    double m = 0.0;
    for (int c = 0; c < v.dim(); ++c) {
        ScalarField comp = v.component_field(c);
        for (int a = 0; a < v.grid().dim; ++a) {
            ScalarField d = derivative_axis(comp, a);
            m = std::max(m, d.max_abs());
        }
    }
    return m;
}

} // namespace

NormReport monitor_apriori(const Trajectory& traj, const EstimateConstants* consts) {
    if (traj.states.empty()) throw InvalidArgument("monitor_apriori: empty trajectory");
    NormReport rep;
    rep.rows.reserve(traj.states.size());
    const double dt = traj.dt;

    double int_u_h4 = 0.0, int_k_h3 = 0.0;
    double sup_u_h1 = 0.0, sup_u_h2 = 0.0, sup_u_h3 = 0.0, sup_k_h2 = 0.0, sup_e_h2 = 0.0;

    for (int j = 0; j < traj.levels(); ++j) {
        const State& s = traj.states[j];
        check_finite(s.rho, "rho", j);
        check_finite(s.u, "u", j);
        check_finite(s.h, "h", j);
        check_finite(s.k, "k", j);
        check_finite(s.eps, "eps", j);

        NormRow row;
        row.t = s.t;
        row.rho_h3 = sobolev_norm(s.rho, 3);
        row.u_h1 = sobolev_norm(s.u, 1);
        row.u_h2 = sobolev_norm(s.u, 2);
        row.u_h3 = sobolev_norm(s.u, 3);
        row.k_h1 = sobolev_norm(s.k, 1);
        row.k_h2 = sobolev_norm(s.k, 2);
        row.eps_h1 = sobolev_norm(s.eps, 1);
        row.eps_h2 = sobolev_norm(s.eps, 2);
        row.h_h1 = sobolev_norm(s.h, 1);
        row.h_h2 = sobolev_norm(s.h, 2);

        if (j > 0) {
            const State& p = traj.states[j - 1];
            const double inv_dt = 1.0 / dt;
            ScalarField drho = inv_dt * (s.rho - p.rho);
            VectorField du = inv_dt * (s.u - p.u);
            ScalarField dh = inv_dt * (s.h - p.h);
            ScalarField dk = inv_dt * (s.k - p.k);
            ScalarField de = inv_dt * (s.eps - p.eps);
            row.rhot_h1 = sobolev_norm(drho, 1);
            row.sr_ut = sqrt_rho_l2(s.rho, du);
            row.sr_ht = sqrt_rho_l2(s.rho, dh);
            row.sr_kt = sqrt_rho_l2(s.rho, dk);
            row.sr_et = sqrt_rho_l2(s.rho, de);
            row.has_time_derivs = true;

            const double u_h4 = sobolev_norm(s.u, 4);
            const double k_h3 = sobolev_norm(s.k, 3);
            int_u_h4 += dt * u_h4 * u_h4;
            int_k_h3 += dt * k_h3 * k_h3;
        }
        row.int_u_h4 = int_u_h4;
        row.int_k_h3 = int_k_h3;

        if (!std::isfinite(row.rho_h3)) throw BlowupDetected("rho", j);

        sup_u_h1 = std::max(sup_u_h1, row.u_h1);
        sup_u_h2 = std::max(sup_u_h2, row.u_h2);
        sup_u_h3 = std::max(sup_u_h3, row.u_h3);
        sup_k_h2 = std::max(sup_k_h2, row.k_h2);
        sup_e_h2 = std::max(sup_e_h2, row.eps_h2);
        rep.rows.push_back(row);
    }

    if (consts != nullptr) {
        AprioriRatios r;
        r.sup_u_h1_over_c1 = sup_u_h1 / consts->c[1];
        r.sup_u_h2_over_c2 = sup_u_h2 / consts->c[2];
        r.sup_u_h3_over_c3 = sup_u_h3 / consts->c[3];
        r.int_u_h4_over_c4 = int_u_h4 / consts->c[4];
        r.sup_k_h2_over_c5 = sup_k_h2 / consts->c[5];
        r.sup_eps_h2_over_c6 = sup_e_h2 / consts->c[6];
        rep.ratios = r;
    }
    return rep;
}

DensityBoundReport check_density_bound(const Trajectory& traj, const Trajectory& known_v,
                                       double tol_fraction) {
    if (traj.states.empty() || known_v.levels() < traj.levels())
        throw InvalidArgument("check_density_bound: trajectories not aligned");
    for (int j = 0; j < traj.levels(); ++j)
        if (std::abs(traj.states[j].t - known_v.states[j].t) > 1e-9 * traj.dt + 1e-300)
            throw InvalidArgument("check_density_bound: time levels not aligned");

    DensityBoundReport rep;
    const double min_rho0 = traj.states.front().rho.min();
    rep.tolerance = tol_fraction * min_rho0;
    rep.ok = true;

    double grad_integral = 0.0;
    for (int j = 0; j < traj.levels(); ++j) {
        if (j > 0) grad_integral += traj.dt * grad_sup_norm(known_v.states[j].u);
        const double mn = traj.states[j].rho.min();
        const double bound = min_rho0 * std::exp(-grad_integral);
        rep.t.push_back(traj.states[j].t);
        rep.min_rho.push_back(mn);
        rep.bound.push_back(bound);
        rep.margin.push_back(mn - bound);
        if (mn < bound - rep.tolerance) rep.ok = false;
    }
    return rep;
}

} // namespace keps
