#include "keps/march.hpp"

#include <cmath>
#include <string>

#include "keps/operators.hpp"

namespace keps {

Trajectory linearized_solve(const State& init, const Trajectory& known, double horizon,
                            const ModelParams& params, const StepConfig& cfg,
                            const StepCallback& on_step, const ForcingProvider* forcing) {
    params.validate();
    cfg.validate();
    if (!(horizon > 0.0)) throw InvalidArgument("horizon must be positive");
    const int steps = static_cast<int>(std::llround(horizon / cfg.dt));
    if (steps < 1 || std::abs(steps * cfg.dt - horizon) > 1e-9 * horizon)
        throw InvalidArgument("horizon must be an integer number of time steps");
    if (known.states.empty() || known.levels() < steps + 1)
        throw InvalidArgument("known trajectory does not cover the horizon");
    if (std::abs(known.dt - cfg.dt) > 1e-12 * cfg.dt)
        throw InvalidArgument("known trajectory dt differs from step dt");
    if (!known.grid().same_layout(init.grid()))
        throw InvalidArgument("known trajectory grid differs from initial state grid");

    const GridSpec& g = init.grid();
    Trajectory traj;
    traj.dt = cfg.dt;
    traj.states.reserve(steps + 1);
    traj.states.push_back(init);
    traj.states.front().t = init.t;

    const double mass0 = integral(init.rho);

    ScalarField f_rho(g), f_h(g), f_k(g), f_eps(g);
    VectorField f_u(g);

    for (int j = 0; j < steps; ++j) {
        const State& prev = traj.states.back();
        const double t_new = init.t + (j + 1) * cfg.dt;
        const State& coeff = known.states[j + 1]; // coefficients at the new level
        const VectorField& v = coeff.u;
        const ScalarField& pi = coeff.k;
        const ScalarField& theta = coeff.eps;

        try {
            if (forcing != nullptr) forcing->eval(t_new, f_rho, f_u, f_h, f_k, f_eps);

            State next(g);
            next.t = t_new;
            next.rho = transport_step(prev.rho, v, cfg, forcing ? &f_rho : nullptr);

            SolveStats su, sh, sk, se;
            State work = next; // carries the advanced density for the implicit steps
            work.u = prev.u;
            work.h = prev.h;
            work.k = prev.k;
            work.eps = prev.eps;
            next.u = momentum_step(work, v, pi, params, cfg, &su, forcing ? &f_u : nullptr);
            next.h = enthalpy_step(work, v, next.u, params, cfg, &sh, forcing ? &f_h : nullptr);
            next.k = tke_step(work, v, pi, theta, params, cfg, &sk, forcing ? &f_k : nullptr);
            next.eps =
                dissipation_step(work, v, pi, theta, params, cfg, &se, forcing ? &f_eps : nullptr);

            if (on_step) {
                StepRecord rec;
                rec.step = j + 1;
                rec.t = t_new;
                rec.lin_iters = su.iterations + sh.iterations + sk.iterations + se.iterations;
                rec.min_rho = next.rho.min();
                rec.min_k = next.k.min();
                rec.mass_drift = std::abs(integral(next.rho) - mass0) / std::abs(mass0);
                on_step(rec);
            }
            traj.states.push_back(std::move(next));
        } catch (Error& e) {
            e.set_context("time level " + std::to_string(j + 1) + ", t = " +
                          std::to_string(t_new));
            throw;
        }
    }
    return traj;
}

} // namespace keps
