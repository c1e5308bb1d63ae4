#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "keps/march.hpp"
#include "keps/monitor.hpp"
#include "keps/operators.hpp"
#include "keps/picard.hpp"
#include "test_helpers.hpp"

using namespace keps;
using namespace keps::test;

namespace {

StepConfig tight_cfg(double dt) {
    StepConfig cfg;
    cfg.dt = dt;
    cfg.lin_tol = 1e-12;
    cfg.lin_maxit = 2000;
    return cfg;
}

} // namespace

TEST_CASE("solve_linear_system: identity, scaled identity, Fourier mode of I - dt*Lap") {
    StepConfig cfg = tight_cfg(1e-2);
    std::vector<double> b{1.0, -2.0, 3.0, 0.5};

    auto ident = [](const std::vector<double>& x, std::vector<double>& y) { y = x; };
    auto [x1, s1] = solve_linear_system(ident, b, cfg);
    CHECK(s1.converged);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(x1[i] == doctest::Approx(b[i]).epsilon(1e-11));

    auto twice = [](const std::vector<double>& x, std::vector<double>& y) {
        y.resize(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = 2.0 * x[i];
    };
    auto [x2, s2] = solve_linear_system(twice, b, cfg);
    for (std::size_t i = 0; i < b.size(); ++i)
        CHECK(x2[i] == doctest::Approx(b[i] / 2.0).epsilon(1e-11));

    // (I - dt Lap) on a periodic grid: per-mode eigenvalue oracle
    GridSpec g = grid1d(64, BcMode::periodic);
    const double h = g.spacing[0];
    const double dt = 1e-2;
    ScalarField mode = ScalarField::from_function(
        g, [](double x, double, double) { return std::sin(2 * M_PI * x); });
    auto op = [&](const std::vector<double>& xv, std::vector<double>& yv) {
        ScalarField xf(g);
        std::copy(xv.begin(), xv.end(), xf.values().begin());
        ScalarField lap = laplacian(xf, ScalarBc::periodic);
        yv.resize(xv.size());
        for (std::size_t i = 0; i < xv.size(); ++i) yv[i] = xv[i] - dt * lap[i];
    };
    auto [x3, s3] = solve_linear_system(op, mode.raw(), cfg);
    const double lambda_h = 2.0 / (h * h) * (1.0 - std::cos(2 * M_PI * h));
    for (std::size_t i = 0; i < x3.size(); ++i)
        CHECK(x3[i] == doctest::Approx(mode[i] / (1.0 + dt * lambda_h)).epsilon(1e-8));

    // iteration cap produces the typed error carrying stats
    StepConfig capped = cfg;
    capped.lin_maxit = 1;
    capped.lin_tol = 1e-14;
    CHECK_THROWS_AS((void)solve_linear_system(op, mode.raw(), capped), LinearSolveDiverged);
}

TEST_CASE("transport_step: identity at v=0, exact mass conservation") {
    GridSpec g = grid2d(16);
    ScalarField rho = random_smooth(g, 3, 0.3);
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] += 1.0;
    StepConfig cfg = tight_cfg(1e-3);

    VectorField zero(g, 0.0);
    ScalarField same = transport_step(rho, zero, cfg);
    CHECK(max_abs_diff(same, rho) == 0.0);

    VectorField v = random_smooth_vector(g, 5, 0.5);
    const double mass0 = integral(rho);
    ScalarField next = transport_step(rho, v, cfg);
    CHECK(std::abs(integral(next) - mass0) / std::abs(mass0) <= 1e-13);
    CHECK(next.min() >= 0.0);
}

TEST_CASE("transport_step: CFL violation is rejected with the offending number") {
    GridSpec g = grid1d(32);
    ScalarField rho(g, 1.0);
    VectorField fast(g, 40.0); // dt |v| / h = 1.28
    StepConfig cfg = tight_cfg(1e-3);
    try {
        (void)transport_step(rho, fast, cfg);
        FAIL("expected CflViolation");
    } catch (const CflViolation& e) {
        CHECK(e.cfl > 0.9);
    }
}

TEST_CASE("transport_step: periodic advection over one period vs exact translation") {
    for (int n : {64, 128}) {
        GridSpec g = grid1d(n, BcMode::periodic);
        ScalarField rho0 = ScalarField::from_function(
            g, [](double x, double, double) { return 1.0 + 0.5 * std::sin(2 * M_PI * x); });
        StepConfig cfg = tight_cfg(0.5 * g.spacing[0]); // CFL 0.5 at v = 1
        VectorField v(g, 1.0);
        ScalarField rho = rho0;
        const int steps = 2 * n; // dt = h/2 -> one period
        for (int s = 0; s < steps; ++s) rho = transport_step(rho, v, cfg);
        ScalarField err = rho - rho0;
        const double l2 = std::sqrt(inner_l2(err, err));
        CHECK(l2 <= 5.0 * g.spacing[0]); // first-order diffusion envelope
    }
}

TEST_CASE("momentum_step: zero right side fixes u = 0") {
    GridSpec g = grid2d(12, BcMode::periodic);
    State st(g);
    st.rho = ScalarField(g, 1.3);
    st.u = VectorField(g, 0.0);
    ScalarField pi(g, 0.8);
    VectorField v(g, 0.0);
    ModelParams params;
    VectorField u = momentum_step(st, v, pi, params, tight_cfg(1e-3));
    CHECK(u.max_abs() <= 1e-12);
}

TEST_CASE("momentum_step: per-mode damping by the discrete symbol") {
    GridSpec g = grid1d(64, BcMode::periodic);
    const double h = g.spacing[0];
    const double dt = 1e-3;
    State st(g);
    st.rho = ScalarField(g, 1.0);
    st.u = VectorField::from_function(
        g, [](int, double x, double, double) { return std::sin(2 * M_PI * x); });
    ScalarField pi(g, 0.0);
    VectorField v(g, 0.0);
    ModelParams params;
    VectorField u = momentum_step(st, v, pi, params, tight_cfg(dt));

    const double lambda_lap = 2.0 / (h * h) * (1.0 - std::cos(2 * M_PI * h));
    const double s = std::sin(2 * M_PI * h) / h;
    const double lambda_div = s * s;
    const double damp = 1.0 / (1.0 + dt * (lambda_lap + lambda_div));
    for (int i = 0; i < g.n[0]; ++i)
        CHECK(u.at(0, i) == doctest::Approx(st.u.at(0, i) * damp).epsilon(1e-8));
}

TEST_CASE("momentum_step: leading-order response to a pi gradient") {
    GridSpec g = grid1d(64, BcMode::periodic);
    const double dt = 1e-4;
    State st(g);
    st.rho = ScalarField(g, 1.0);
    st.u = VectorField(g, 0.0);
    ScalarField pi = ScalarField::from_function(
        g, [](double x, double, double) { return std::sin(2 * M_PI * x); });
    VectorField v(g, 0.0);
    ModelParams params;
    VectorField u = momentum_step(st, v, pi, params, tight_cfg(dt));

    VectorField gpi = gradient(pi);
    const double scale = gpi.max_abs();
    for (int i = 0; i < g.n[0]; ++i) {
        const double expect = -dt * (2.0 / 3.0) * gpi.at(0, i);
        if (std::abs(gpi.at(0, i)) > 0.1 * scale)
            CHECK(u.at(0, i) == doctest::Approx(expect).epsilon(0.1));
    }
}

TEST_CASE("enthalpy_step: uniform source advances h by dt*mu (forcing route)") {
    GridSpec g = grid1d(32, BcMode::periodic);
    const double dt = 1e-3;
    ModelParams params;
    State st(g);
    st.rho = ScalarField(g, 1.0);
    st.h = ScalarField(g, 0.0);
    VectorField v(g, 0.0);
    VectorField u_new(g, 0.0);
    ScalarField force(g, params.mu); // stands in for S'_k = mu of the affine shear
    ScalarField h = enthalpy_step(st, v, u_new, params, tight_cfg(dt), nullptr, &force);
    for (std::size_t i = 0; i < h.size(); ++i)
        CHECK(h[i] == doctest::Approx(dt * params.mu).epsilon(1e-10));
}

TEST_CASE("enthalpy_step: affine shear on a wall grid sources S'_k = mu") {
    // one-sided stencils are exact on the affine shear, so S'_k = mu at every
    // node; the Dirichlet wall pins h, so assert the interior plateau
    GridSpec g = grid2d(16);
    const double dt = 1e-4;
    ModelParams params;
    State st(g);
    st.rho = ScalarField(g, 1.0);
    st.h = ScalarField(g, 0.0);
    VectorField shear = VectorField::from_function(
        g, [](int c, double, double y, double) { return c == 0 ? y : 0.0; });
    VectorField u_new(g, 0.0);
    ScalarField h = enthalpy_step(st, shear, u_new, params, tight_cfg(dt));
    const int mid = g.n[0] / 2;
    CHECK(h.at(mid, mid) == doctest::Approx(dt * params.mu).epsilon(5e-3));
    CHECK(h.max_abs() <= dt * params.mu * 1.01);
}

TEST_CASE("enthalpy_step: zero sources keep h = 0") {
    GridSpec g = grid1d(16);
    ModelParams params;
    State st(g);
    st.rho = ScalarField(g, 2.0);
    st.h = ScalarField(g, 0.0);
    VectorField v(g, 0.0), u_new(g, 0.0);
    ScalarField h = enthalpy_step(st, v, u_new, params, tight_cfg(1e-3));
    CHECK(h.max_abs() <= 1e-13);
}

TEST_CASE("tke_step: uniform decay recurrence and invariance cases") {
    GridSpec g = grid1d(32);
    const double dt = 1e-3;
    ModelParams params;
    State st(g);
    st.rho = ScalarField(g, 1.0);
    st.k = ScalarField(g, 1.0);
    VectorField v(g, 0.0);
    ScalarField pi = random_smooth(g, 9, 0.2); // arbitrary pi: G' = 0 at v = 0
    for (std::size_t i = 0; i < pi.size(); ++i) pi[i] += 1.0;
    const double eps0 = 0.7;
    ScalarField theta(g, eps0);

    ScalarField k = tke_step(st, v, pi, theta, params, tight_cfg(dt));
    for (std::size_t i = 0; i < k.size(); ++i)
        CHECK(k[i] == doctest::Approx(1.0 - dt * eps0).epsilon(1e-12));

    ScalarField zero_theta(g, 0.0);
    ScalarField k2 = tke_step(st, v, pi, zero_theta, params, tight_cfg(dt));
    for (std::size_t i = 0; i < k2.size(); ++i)
        CHECK(k2[i] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("dissipation_step: uniform decay, floor guard, implicit-sink variant") {
    GridSpec g = grid1d(32);
    const double dt = 1e-3;
    ModelParams params;
    const double k0 = 0.8, eps0 = 0.9;
    State st(g);
    st.rho = ScalarField(g, 1.0);
    st.eps = ScalarField(g, eps0);
    VectorField v(g, 0.0);
    ScalarField pi(g, k0);
    ScalarField theta(g, eps0);

    ScalarField e = dissipation_step(st, v, pi, theta, params, tight_cfg(dt));
    const double expect = eps0 - dt * params.c2 * eps0 * eps0 / k0;
    for (std::size_t i = 0; i < e.size(); ++i)
        CHECK(e[i] == doctest::Approx(expect).epsilon(1e-12));

    ScalarField theta0(g, 0.0);
    ScalarField e0 = dissipation_step(st, v, pi, theta0, params, tight_cfg(dt));
    for (std::size_t i = 0; i < e0.size(); ++i)
        CHECK(e0[i] == doctest::Approx(eps0).epsilon(1e-13));

    ScalarField bad_pi(g, 0.0);
    CHECK_THROWS_AS(
        (void)dissipation_step(st, v, bad_pi, theta, params, tight_cfg(dt)), TurbulentEnergyFloor);

    StepConfig imp = tight_cfg(dt);
    imp.implicit_sink = true;
    ScalarField ei = dissipation_step(st, v, pi, theta, params, imp);
    const double expect_imp = eps0 / (1.0 + dt * params.c2 * eps0 / k0);
    for (std::size_t i = 0; i < ei.size(); ++i)
        CHECK(ei[i] == doctest::Approx(expect_imp).epsilon(1e-12));
}

TEST_CASE("implicit steps are affine in their own old field") {
    GridSpec g = grid2d(12);
    const double dt = 1e-3;
    ModelParams params;
    ScalarField rho = random_smooth(g, 21, 0.2);
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] += 1.2;
    VectorField v = random_smooth_vector(g, 22, 0.3);
    ScalarField pi = random_smooth(g, 23, 0.2);
    for (std::size_t i = 0; i < pi.size(); ++i) pi[i] += 1.0;
    ScalarField theta = random_smooth(g, 24, 0.2);
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] += 0.8;

    auto superposition_defect = [&](auto&& step_of) {
        ScalarField a = random_smooth(g, 25, 0.5);
        ScalarField b = random_smooth(g, 26, 0.5);
        ScalarField ab = a + b;
        ScalarField zero(g, 0.0);
        // affine map F: F(a+b) - F(a) - F(b) + F(0) = 0
        ScalarField lhs = step_of(ab) - step_of(a) - step_of(b) + step_of(zero);
        return lhs.max_abs();
    };

    double defect_k = superposition_defect([&](const ScalarField& f) {
        State st(g);
        st.rho = rho;
        st.k = f;
        return tke_step(st, v, pi, theta, params, tight_cfg(dt));
    });
    CHECK(defect_k <= 1e-10);

    double defect_h = superposition_defect([&](const ScalarField& f) {
        State st(g);
        st.rho = rho;
        st.h = f;
        VectorField u_new(g, 0.0);
        return enthalpy_step(st, v, u_new, params, tight_cfg(dt));
    });
    CHECK(defect_h <= 1e-10);
}

TEST_CASE("linearized_solve: constant fixed point of the linear system") {
    GridSpec g = grid2d(12);
    const double dt = 1e-3, T = 0.02;
    ModelParams params;
    State init(g);
    init.rho = ScalarField(g, 1.0);
    init.k = ScalarField(g, 1.0);
    init.eps = ScalarField(g, 0.0); // theta = 0 kills all sinks and sources

    Trajectory known = initial_iterate(init, T, dt);
    Trajectory traj = linearized_solve(init, known, T, params, tight_cfg(dt));
    const State& last = traj.states.back();
    CHECK(max_abs_diff(last.rho, init.rho) == 0.0);
    CHECK(last.u.max_abs() <= 1e-12);
    CHECK(max_abs_diff(last.k, init.k) <= 1e-11);
    CHECK(max_abs_diff(last.eps, init.eps) <= 1e-12);
    CHECK(max_abs_diff(last.h, init.h) <= 1e-11);
}

TEST_CASE("linearized_solve: uniform fields follow the scalar recurrences at every node") {
    GridSpec g = grid1d(16);
    const double dt = 1e-3, T = 0.05;
    const double k0 = 1.0, eps0 = 1.0;
    ModelParams params;
    State init(g);
    init.rho = ScalarField(g, 1.0);
    init.k = ScalarField(g, k0);
    init.eps = ScalarField(g, eps0);

    Trajectory known = initial_iterate(init, T, dt);
    Trajectory traj = linearized_solve(init, known, T, params, tight_cfg(dt));

    // scalar recurrence: k_{j+1} = k_j - dt*eps0, e_{j+1} = e_j - dt C2 eps0^2/k0
    double ks = k0, es = eps0;
    for (int j = 1; j < traj.levels(); ++j) {
        ks -= dt * eps0;
        es -= dt * params.c2 * eps0 * eps0 / k0;
        for (std::size_t i = 0; i < traj.states[j].k.size(); ++i) {
            CHECK(traj.states[j].k[i] == doctest::Approx(ks).epsilon(1e-10));
            CHECK(traj.states[j].eps[i] == doctest::Approx(es).epsilon(1e-10));
        }
    }
}

TEST_CASE("linearized_solve: first-order self-convergence in dt") {
    GridSpec g = grid1d(32);
    ModelParams params;
    const double T = 0.04;
    State init(g);
    init.rho = ScalarField::from_function(
        g, [](double x, double, double) { return 1.0 + 0.2 * std::cos(M_PI * x); });
    init.k = ScalarField::from_function(
        g, [](double x, double, double) { return 1.0 + 0.1 * std::cos(M_PI * x); });
    init.eps = ScalarField(g, 1.0);
    init.u = VectorField::from_function(
        g, [](int, double x, double, double) { return 0.2 * std::sin(M_PI * x); });

    auto solve_at = [&](double dt) {
        Trajectory known = initial_iterate(init, T, dt);
        return linearized_solve(init, known, T, params, tight_cfg(dt));
    };
    Trajectory t1 = solve_at(2e-3);
    Trajectory t2 = solve_at(1e-3);
    Trajectory t3 = solve_at(5e-4);

    auto diff_at_T = [](const Trajectory& a, const Trajectory& b) {
        const State& sa = a.states.back();
        const State& sb = b.states.back();
        return max_abs_diff(sa.rho, sb.rho) + max_abs_diff(sa.k, sb.k) +
               max_abs_diff(sa.eps, sb.eps) + max_abs_diff(sa.h, sb.h);
    };
    const double e1 = diff_at_T(t1, t2);
    const double e2 = diff_at_T(t2, t3);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.35)); // first order in time
}

TEST_CASE("linearized_solve: mass conservation and uniform-state invariance") {
    GridSpec g = grid2d(12);
    const double dt = 1e-3, T = 0.02;
    ModelParams params;
    State init(g);
    init.rho = ScalarField(g, 1.7);
    init.k = ScalarField(g, 0.9);
    init.eps = ScalarField(g, 0.4);
    init.h = ScalarField(g, 0.0);

    double worst_mass = 0.0;
    Trajectory known = initial_iterate(init, T, dt);
    Trajectory traj = linearized_solve(init, known, T, params, tight_cfg(dt),
                                       [&](const StepRecord& r) {
                                           worst_mass = std::max(worst_mass, r.mass_drift);
                                       });
    CHECK(worst_mass <= 1e-12);

    // spatially uniform inputs with v = 0 stay spatially uniform
    for (const State& s : traj.states) {
        CHECK(s.rho.max() - s.rho.min() <= 1e-13);
        CHECK(s.k.max() - s.k.min() <= 1e-12);
        CHECK(s.eps.max() - s.eps.min() <= 1e-12);
    }
}

TEST_CASE("linearized_solve: step errors carry the failing time level") {
    GridSpec g = grid1d(16);
    const double dt = 1e-3, T = 5e-3;
    ModelParams params;
    State init(g);
    init.k = ScalarField(g, 1.0);
    init.eps = ScalarField(g, 1.0);

    Trajectory known = initial_iterate(init, T, dt);
    // poison the known pi at the third level to trip the eps floor there
    known.states[3].k = ScalarField(g, 0.0);
    StepConfig cfg = tight_cfg(dt);
    try {
        (void)linearized_solve(init, known, T, params, cfg);
        FAIL("expected TurbulentEnergyFloor");
    } catch (const TurbulentEnergyFloor& e) {
        CHECK(e.context().find("time level 3") != std::string::npos);
    }
}

TEST_CASE("transport bound of the density: compressive desk case at n = 64") {
    GridSpec g = grid1d(64);
    const double alpha = 0.5, T = 0.5, dt = 2e-3;
    ModelParams params;
    State init(g);
    init.rho = ScalarField(g, 1.0);
    init.k = ScalarField(g, 1.0);
    init.eps = ScalarField(g, 0.0);
    init.u = VectorField::from_function(
        g, [alpha](int, double x, double, double) { return -alpha * std::sin(M_PI * x); });

    // march the transport equation alone with the fixed compressive profile
    Trajectory known = initial_iterate(init, T, dt);
    Trajectory traj;
    traj.dt = dt;
    traj.states.push_back(init);
    StepConfig cfg = tight_cfg(dt);
    ScalarField rho = init.rho;
    const int steps = static_cast<int>(std::llround(T / dt));
    for (int j = 1; j <= steps; ++j) {
        rho = transport_step(rho, init.u, cfg);
        State s = init;
        s.t = j * dt;
        s.rho = rho;
        traj.states.push_back(std::move(s));
    }

    DensityBoundReport rep = check_density_bound(traj, known, 0.05);
    CHECK(rep.ok);
    // the bound is the near-equality case here: stagnation-point decay rate
    // alpha*pi equals the gradient sup norm (up to the stencil's O(h^2))
    CHECK(rep.bound.back() == doctest::Approx(std::exp(-alpha * M_PI * T)).epsilon(2e-3));
}

TEST_CASE("trajectory determinism: identical inputs, bit-identical states") {
    GridSpec g = grid2d(12);
    const double dt = 1e-3, T = 0.01;
    ModelParams params;
    State init(g);
    init.rho = ScalarField::from_function(
        g, [](double x, double y, double) { return 1.0 + 0.1 * std::cos(M_PI * x) * std::cos(M_PI * y); });
    init.k = ScalarField(g, 1.0);
    init.eps = ScalarField(g, 0.5);

    Trajectory known = initial_iterate(init, T, dt);
    Trajectory a = linearized_solve(init, known, T, params, tight_cfg(dt));
    Trajectory b = linearized_solve(init, known, T, params, tight_cfg(dt));
    for (int j = 0; j < a.levels(); ++j) {
        CHECK(max_abs_diff(a.states[j].rho, b.states[j].rho) == 0.0);
        CHECK(max_abs_diff(a.states[j].u, b.states[j].u) == 0.0);
        CHECK(max_abs_diff(a.states[j].k, b.states[j].k) == 0.0);
    }
}
