#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "keps/parallel.hpp"
#include "test_helpers.hpp"

using namespace keps;
using namespace keps::test;

TEST_CASE("grid construction validates its invariants") {
    CHECK_THROWS_AS(GridSpec::box(1, {3, 1, 1}, {1, 1, 1}), InvalidArgument);
    CHECK_THROWS_AS(GridSpec::box(1, {8, 1, 1}, {0.0, 1, 1}), InvalidArgument);
    CHECK_THROWS_AS(GridSpec::box(4, {8, 8, 8}, {1, 1, 1}), InvalidArgument);

    GridSpec g = grid3d(8);
    CHECK(g.node_count() == 512);
    CHECK(g.spacing[0] == doctest::Approx(1.0 / 8).epsilon(1e-15));
    CHECK(g.cell_volume() == doctest::Approx(1.0 / 512).epsilon(1e-15));
    // periodic is all-or-nothing; box() only produces consistent flag sets
    GridSpec p = grid2d(8, BcMode::periodic);
    CHECK(p.periodic());
    CHECK(p.bc_scalar_dirichlet == ScalarDirichletBc::periodic);
    CHECK(p.bc_scalar_neumann == ScalarNeumannBc::periodic);
}

TEST_CASE("gradient: constants, linears, quadratics") {
    GridSpec g = grid1d(16);
    ScalarField c = ScalarField::from_function(g, [](double, double, double) { return 3.25; });
    VectorField gc = gradient(c);
    CHECK(gc.max_abs() == 0.0);

    ScalarField lin = ScalarField::from_function(g, [](double x, double, double) { return 2 * x; });
    VectorField gl = gradient(lin);
    for (int i = 0; i < g.n[0]; ++i) CHECK(gl.at(0, i) == doctest::Approx(2.0).epsilon(1e-13));

    ScalarField quad = ScalarField::from_function(g, [](double x, double, double) { return x * x; });
    VectorField gq = gradient(quad);
    for (int i = 0; i < g.n[0]; ++i)
        CHECK(gq.at(0, i) == doctest::Approx(2.0 * g.pos(0, i)).epsilon(1e-12));
}

TEST_CASE("gradient: linear field on a periodic grid is exact away from the seam") {
    GridSpec g = grid1d(32, BcMode::periodic);
    ScalarField lin = ScalarField::from_function(g, [](double x, double, double) { return 2 * x; });
    VectorField gl = gradient(lin);
    for (int i = 1; i + 1 < g.n[0]; ++i)
        CHECK(gl.at(0, i) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("divergence: constants, identity map, shear") {
    GridSpec g = grid3d(8);
    VectorField c(g, 1.5);
    CHECK(divergence(c).max_abs() == 0.0);

    VectorField id = VectorField::from_function(
        g, [](int comp, double x, double y, double z) { return comp == 0 ? x : (comp == 1 ? y : z); });
    ScalarField d = divergence(id);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == doctest::Approx(3.0).epsilon(1e-12));

    VectorField shear = VectorField::from_function(
        g, [](int comp, double, double y, double) { return comp == 0 ? y : 0.0; });
    CHECK(divergence(shear).max_abs() <= 1e-13);
}

TEST_CASE("laplacian: quadratic exact at interior, constants, Fourier eigenvalue") {
    GridSpec g = grid1d(16);
    ScalarField quad = ScalarField::from_function(g, [](double x, double, double) { return x * x; });
    ScalarField lap = laplacian(quad, ScalarBc::neumann0);
    for (int i = 1; i + 1 < g.n[0]; ++i) CHECK(lap.at(i) == doctest::Approx(2.0).epsilon(1e-11));

    ScalarField c(g, 7.0);
    CHECK(laplacian(c, ScalarBc::neumann0).max_abs() == 0.0);
    CHECK(laplacian(c, ScalarBc::periodic).max_abs() == 0.0);

    // discrete eigenvalue of the 3-point stencil on the 2*pi mode
    GridSpec p = grid1d(64, BcMode::periodic);
    const double h = p.spacing[0];
    ScalarField mode =
        ScalarField::from_function(p, [](double x, double, double) { return std::sin(2 * M_PI * x); });
    ScalarField lm = laplacian(mode, ScalarBc::periodic);
    const double lambda_h = 2.0 / (h * h) * (1.0 - std::cos(2 * M_PI * h));
    for (std::size_t i = 0; i < lm.size(); ++i)
        CHECK(lm[i] == doctest::Approx(-lambda_h * mode[i]).epsilon(1e-10));

    // relative error against the continuum eigenvalue -4 pi^2
    const double rel = std::abs(lambda_h - 4 * M_PI * M_PI) / (4 * M_PI * M_PI);
    CHECK(rel <= (2 * M_PI * h) * (2 * M_PI * h) / 12.0 * 1.1);
}

TEST_CASE("grad_div: divergence-free shear, linear, quadratic composition") {
    GridSpec g2 = grid2d(8);
    VectorField shear = VectorField::from_function(
        g2, [](int comp, double, double y, double) { return comp == 0 ? y : 0.0; });
    CHECK(grad_div(shear).max_abs() <= 1e-12);

    GridSpec g1 = grid1d(16);
    VectorField ux = VectorField::from_function(
        g1, [](int, double x, double, double) { return x; });
    CHECK(grad_div(ux).max_abs() <= 1e-12);

    VectorField ux2 = VectorField::from_function(
        g1, [](int, double x, double, double) { return x * x; });
    VectorField gd = grad_div(ux2);
    for (int i = 0; i < g1.n[0]; ++i) CHECK(gd.at(0, i) == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("convect: zero velocity, constant field, unit advection of x") {
    GridSpec g = grid1d(16);
    ScalarField fx = ScalarField::from_function(g, [](double x, double, double) { return x; });
    VectorField zero(g, 0.0);
    CHECK(convect(zero, fx).max_abs() == 0.0);

    VectorField one(g, 1.0);
    ScalarField c(g, 4.0);
    CHECK(convect(one, c).max_abs() == 0.0);

    ScalarField adv = convect(one, fx);
    for (std::size_t i = 0; i < adv.size(); ++i)
        CHECK(adv[i] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("inner_l2: unit box measures, discrete sine integral") {
    GridSpec g = grid3d(8);
    ScalarField one(g, 1.0);
    ScalarField zero(g, 0.0);
    CHECK(inner_l2(one, one) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(inner_l2(one, zero) == 0.0);

    GridSpec p = grid1d(64, BcMode::periodic);
    ScalarField s =
        ScalarField::from_function(p, [](double x, double, double) { return std::sin(2 * M_PI * x); });
    CHECK(inner_l2(s, s) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("summation by parts: exact on periodic grids") {
    GridSpec g = grid2d(16, BcMode::periodic);
    ScalarField f = random_smooth(g, 7);
    VectorField v = random_smooth_vector(g, 19);
    VectorField gf = gradient(f);
    double lhs = inner_l2(gf, v);
    double rhs = -inner_l2(f, divergence(v));
    CHECK(std::abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("summation by parts: wall boundary term vanishes for compliant fields") {
    GridSpec g = grid2d(16);
    ScalarField f = random_smooth(g, 23);
    // compliant vector field: normal trace zero, realized by components
    // vanishing identically on the three node layers nearest each wall
    VectorField v = random_smooth_vector(g, 31);
    for (int c = 0; c < g.dim; ++c) {
        for (int i1 = 0; i1 < g.n[1]; ++i1)
            for (int i0 = 0; i0 < g.n[0]; ++i0) {
                const bool margin = i0 < 3 || i0 >= g.n[0] - 3 || i1 < 3 || i1 >= g.n[1] - 3;
                if (margin) v.at(c, i0, i1) = 0.0;
            }
    }
    VectorField gf = gradient(f);
    double lhs = inner_l2(gf, v);
    double rhs = -inner_l2(f, divergence(v));
    CHECK(std::abs(lhs - rhs) <= 1e-10);
}

TEST_CASE("linearity of every operator") {
    GridSpec g = grid2d(12);
    ScalarField f1 = random_smooth(g, 1), f2 = random_smooth(g, 2);
    VectorField v1 = random_smooth_vector(g, 3), v2 = random_smooth_vector(g, 4);
    const double a = 1.7, b = -0.6;

    ScalarField fc(g);
    for (std::size_t i = 0; i < fc.size(); ++i) fc[i] = a * f1[i] + b * f2[i];
    CHECK(max_abs_diff(gradient(fc), a * gradient(f1) + b * gradient(f2)) <= 1e-10);
    CHECK(max_abs_diff(laplacian(fc, ScalarBc::neumann0),
                       a * laplacian(f1, ScalarBc::neumann0) + b * laplacian(f2, ScalarBc::neumann0)) <=
          1e-9);

    VectorField vc(g);
    for (std::size_t i = 0; i < vc.size(); ++i) vc.raw()[i] = a * v1.raw()[i] + b * v2.raw()[i];
    CHECK(max_abs_diff(divergence(vc), a * divergence(v1) + b * divergence(v2)) <= 1e-9);
    CHECK(max_abs_diff(grad_div(vc), a * grad_div(v1) + b * grad_div(v2)) <= 1e-8);
}

TEST_CASE("ghost fill: consistent with symmetric continuations, never mutates nodes") {
    GridSpec g = grid1d(16);
    ScalarField f =
        ScalarField::from_function(g, [](double x, double, double) { return std::cos(M_PI * x); });
    ScalarField before = f;

    // even continuation of cos(pi x) about x=0 equals the even ghost exactly
    auto even = ghost_layer(f, 0, -1, ScalarBc::neumann0);
    CHECK(even.size() == 1);
    CHECK(even[0] == doctest::Approx(std::cos(M_PI * (-g.spacing[0] / 2))).epsilon(1e-15));

    ScalarField s =
        ScalarField::from_function(g, [](double x, double, double) { return std::sin(M_PI * x); });
    auto odd = ghost_layer(s, 0, -1, ScalarBc::dirichlet0);
    CHECK(odd[0] == doctest::Approx(std::sin(M_PI * (-g.spacing[0] / 2))).epsilon(1e-12));

    (void)laplacian(f, ScalarBc::neumann0);
    (void)gradient(f);
    CHECK(max_abs_diff(f, before) == 0.0);
}

TEST_CASE("operators are bit-identical across thread counts") {
    GridSpec g = grid3d(16, BcMode::periodic);
    ScalarField f = random_smooth(g, 99);
    VectorField v = random_smooth_vector(g, 77);

    set_threads(1);
    ScalarField lap1 = laplacian(f, ScalarBc::periodic);
    double dot1 = inner_l2(f, f);
    ScalarField div1 = divergence(v);

    set_threads(4);
    ScalarField lap4 = laplacian(f, ScalarBc::periodic);
    double dot4 = inner_l2(f, f);
    ScalarField div4 = divergence(v);
    set_threads(1);

    CHECK(max_abs_diff(lap1, lap4) == 0.0);
    CHECK(dot1 == dot4);
    CHECK(max_abs_diff(div1, div4) == 0.0);
}
