#include "keps/picard.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "keps/norms.hpp"
#include "keps/operators.hpp"

namespace keps {

Trajectory initial_iterate(const State& init, double horizon, double dt) {
    if (!(horizon > 0.0) || !(dt > 0.0)) throw InvalidArgument("horizon and dt must be positive");
    const int steps = static_cast<int>(std::llround(horizon / dt));
    if (steps < 1 || std::abs(steps * dt - horizon) > 1e-9 * horizon)
        throw InvalidArgument("horizon must be an integer number of time steps");
    Trajectory traj;
    traj.dt = dt;
    traj.states.reserve(steps + 1);
    for (int j = 0; j <= steps; ++j) {
        State s = init;
        s.t = init.t + j * dt;
        traj.states.push_back(std::move(s));
    }
    return traj;
}

double phi_diff(const State& a, const State& b) {
    const GridSpec& g = a.grid();
    if (!g.same_layout(b.grid())) throw InvalidArgument("phi_diff: states on different grids");
    const double min_rho = a.rho.min();
    if (!(min_rho > 0.0)) throw NonpositiveDensity(min_rho);

    ScalarField drho = a.rho - b.rho;
    double phi = inner_l2(drho, drho);

    auto weighted = [&](const ScalarField& d) {
        ScalarField wd = hadamard(a.rho, hadamard(d, d));
        return integral(wd);
    };
    for (int c = 0; c < g.dim; ++c) {
        ScalarField du = a.u.component_field(c) - b.u.component_field(c);
        phi += weighted(du);
    }
    phi += weighted(a.h - b.h);
    phi += weighted(a.k - b.k);
    phi += weighted(a.eps - b.eps);
    return phi;
}

DiffNorms diff_norms(const Trajectory& current, const Trajectory& previous) {
    if (current.levels() != previous.levels())
        throw InvalidArgument("diff_norms: trajectories cover different horizons");
    DiffNorms d;
    const int m = current.levels();
    d.phi.reserve(m);
    d.h1_u.reserve(m);
    d.h1_h.reserve(m);
    d.h1_k.reserve(m);
    d.h1_eps.reserve(m);
    for (int j = 0; j < m; ++j) {
        const State& a = current.states[j];
        const State& b = previous.states[j];
        d.phi.push_back(phi_diff(a, b));
        d.h1_u.push_back(sobolev_norm_sq(a.u - b.u, 1));
        d.h1_h.push_back(sobolev_norm_sq(a.h - b.h, 1));
        d.h1_k.push_back(sobolev_norm_sq(a.k - b.k, 1));
        d.h1_eps.push_back(sobolev_norm_sq(a.eps - b.eps, 1));
        d.sup_phi = std::max(d.sup_phi, d.phi.back());
        d.int_h1 += current.dt * (d.h1_u.back() + d.h1_h.back() + d.h1_k.back() + d.h1_eps.back());
    }
    return d;
}

namespace {

std::pair<Trajectory, PicardReport> picard_attempt(const State& init, const ModelParams& params,
                                                   const PicardConfig& cfg,
                                                   const StepCallback& on_step,
                                                   const ForcingProvider* forcing) {
    StepConfig step = cfg.step;
    step.dt = cfg.dt;

    PicardReport report;
    report.horizon = cfg.horizon;
    report.dt = cfg.dt;
    report.ratio_window = cfg.ratio_window;

    Trajectory prev = initial_iterate(init, cfg.horizon, cfg.dt);
    double metric_first = std::numeric_limits<double>::quiet_NaN();
    double metric_prev = std::numeric_limits<double>::quiet_NaN();
    int streak = 0;

    for (int n = 1; n <= cfg.max_outer; ++n) {
        Trajectory traj = linearized_solve(init, prev, cfg.horizon, params, step, on_step, forcing);
        DiffNorms d = diff_norms(traj, prev);
        const double metric = d.sup_phi + d.int_h1;

        PicardIterRow row;
        row.iter = n;
        row.sup_phi = d.sup_phi;
        row.int_h1 = d.int_h1;
        row.ratio =
            (n == 1) ? std::numeric_limits<double>::quiet_NaN() : metric / metric_prev;
        report.iters.push_back(row);
        report.iterations = n;
        report.final_metric = metric;

        if (n == 1) {
            metric_first = metric;
            // floor at roundoff scale: the metric is quadratic in the field
            // differences, so 1e-28 corresponds to ~1e-14 on O(1) fields
            report.threshold = std::max(cfg.tol_phi * metric_first, 1e-28);
        }
        if (metric <= report.threshold) {
            report.converged = true;
            return {std::move(traj), report};
        }
        if (n >= 2) {
            streak = (row.ratio >= 1.0) ? streak + 1 : 0;
            if (streak >= cfg.ratio_window)
                throw PicardDiverged("picard iteration failed to contract for " +
                                     std::to_string(streak) +
                                     " consecutive passes (horizon too large); metric = " +
                                     std::to_string(metric));
        }
        metric_prev = metric;
        prev = std::move(traj);
    }
    // max_outer reached without meeting the threshold; report carries the tail
    return {std::move(prev), report};
}

} // namespace

std::pair<Trajectory, PicardReport> picard_solve(const State& init, const ModelParams& params,
                                                 const PicardConfig& cfg,
                                                 const StepCallback& on_step,
                                                 const ForcingProvider* forcing) {
    cfg.validate();
    init.validate();
    PicardConfig attempt = cfg;
    int shrinks = 0;
    while (true) {
        try {
            auto [traj, report] = picard_attempt(init, params, attempt, on_step, forcing);
            report.shrink_count = shrinks;
            return {std::move(traj), std::move(report)};
        } catch (const PicardDiverged&) {
            if (!cfg.auto_shrink) throw;
            const int steps = static_cast<int>(std::llround(attempt.horizon / attempt.dt));
            if (steps < 2 || shrinks >= 8) throw;
            attempt.horizon = (steps / 2) * attempt.dt;
            ++shrinks;
        }
    }
}

double contraction_ratio(const PicardReport& report, int ratio_window) {
    if (ratio_window < 1) throw InvalidArgument("ratio_window must be >= 1");
    std::vector<double> ratios;
    for (const auto& row : report.iters)
        if (row.iter >= 2 && std::isfinite(row.ratio)) ratios.push_back(row.ratio);
    if (ratios.empty())
        throw InsufficientIterations("contraction_ratio needs at least 2 picard iterations");
    const int take = std::min<int>(ratio_window, static_cast<int>(ratios.size()));
    double log_sum = 0.0;
    bool zero = false;
    for (int i = 0; i < take; ++i) {
        const double r = ratios[ratios.size() - take + i];
        if (r == 0.0) zero = true;
        else log_sum += std::log(r);
    }
    if (zero) return 0.0;
    return std::exp(log_sum / take);
}

double contraction_ratio(const PicardReport& report) {
    return contraction_ratio(report, report.ratio_window);
}

double nonlinear_residual(const Trajectory& traj, const ModelParams& params) {
    traj.validate();
    const GridSpec& g = traj.grid();
    const double dt = traj.dt;
    double worst = 0.0;

    auto l2 = [&](const ScalarField& r) { return std::sqrt(inner_l2(r, r)); };

    for (int j = 1; j < traj.levels(); ++j) {
        const State& a = traj.states[j];     // new level
        const State& b = traj.states[j - 1]; // previous level
        double level_sum = 0.0;

        // mass:  (rho_j - rho_{j-1})/dt + div_up(rho_j u_j)
        {
            ScalarField r = upwind_flux_divergence(a.rho, a.u);
            for (std::size_t i = 0; i < r.size(); ++i)
                r[i] += (a.rho[i] - b.rho[i]) / dt;
            level_sum += l2(r);
        }
        // momentum
        {
            ScalarField p = pressure(a.rho, params.gamma);
            VectorField gp = gradient(p);
            VectorField grk = gradient(hadamard(a.rho, a.k));
            VectorField gd = grad_div(a.u);
            const ScalarBc bc = g.periodic() ? ScalarBc::periodic : ScalarBc::dirichlet0;
            for (int c = 0; c < g.dim; ++c) {
                ScalarField uc = a.u.component_field(c);
                ScalarField conv = convect(a.u, uc);
                ScalarField lap = laplacian(uc, bc);
                ScalarField r(g);
                auto un = a.u.component(c);
                auto uo = b.u.component(c);
                auto gdc = gd.component(c);
                auto gpc = gp.component(c);
                auto grc = grk.component(c);
                for (std::size_t i = 0; i < r.size(); ++i)
                    r[i] = a.rho[i] * ((un[i] - uo[i]) / dt + conv[i]) - lap[i] - gdc[i] +
                           gpc[i] + (2.0 / 3.0) * grc[i];
                level_sum += l2(r);
            }
        }
        // enthalpy: p_t by backward difference of the pressure law
        {
            ScalarField p = pressure(a.rho, params.gamma);
            ScalarField p_old = pressure(b.rho, params.gamma);
            ScalarField conv = convect(a.u, a.h);
            ScalarField lap = laplacian(a.h, g.wall_dirichlet());
            ScalarField ugp = convect(a.u, p);
            ScalarField sk = source_sk(a.u, a.rho, params);
            ScalarField r(g);
            for (std::size_t i = 0; i < r.size(); ++i)
                r[i] = a.rho[i] * ((a.h[i] - b.h[i]) / dt + conv[i]) - lap[i] -
                       ((p[i] - p_old[i]) / dt + ugp[i] + sk[i]);
            level_sum += l2(r);
        }
        // turbulent kinetic energy
        {
            ScalarField gq = source_g(a.u, a.rho, a.k, params);
            ScalarField conv = convect(a.u, a.k);
            ScalarField lap = laplacian(a.k, g.wall_neumann());
            ScalarField r(g);
            for (std::size_t i = 0; i < r.size(); ++i)
                r[i] = a.rho[i] * ((a.k[i] - b.k[i]) / dt + conv[i]) - lap[i] -
                       (gq[i] - a.rho[i] * a.eps[i]);
            level_sum += l2(r);
        }
        // dissipation rate
        {
            ScalarField gq = source_g(a.u, a.rho, a.k, params);
            ScalarField conv = convect(a.u, a.eps);
            ScalarField lap = laplacian(a.eps, g.wall_neumann());
            ScalarField r(g);
            for (std::size_t i = 0; i < r.size(); ++i)
                r[i] = a.rho[i] * ((a.eps[i] - b.eps[i]) / dt + conv[i]) - lap[i] -
                       (params.c1 * gq[i] * a.eps[i] / a.k[i] -
                        params.c2 * a.rho[i] * a.eps[i] * a.eps[i] / a.k[i]);
            level_sum += l2(r);
        }
        worst = std::max(worst, level_sum);
    }
    return worst;
}

} // namespace keps
