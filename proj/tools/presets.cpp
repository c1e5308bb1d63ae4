#include "presets.hpp"

#include <cmath>

#include "config.hpp"
#include "mms.hpp"

namespace keps::cli {

bool preset_exists(const std::string& name) {
    return name == "uniform" || name == "decay" || name == "shear" || name == "mms1" ||
           name == "mms2" || name == "mms3";
}

void apply_preset_defaults(RunConfig& cfg, const std::string& name) {
    if (name == "uniform") {
        cfg.dim = 3;
        cfg.n = {16, 16, 16};
        cfg.length = {1.0, 1.0, 1.0};
        cfg.dt = 1e-3;
        cfg.t_end = 0.1;
    } else if (name == "decay") {
        cfg.dim = 1;
        cfg.n = {64, 1, 1};
        cfg.length = {1.0, 1.0, 1.0};
        cfg.dt = 1e-3;
        cfg.t_end = 1.0;
        cfg.window = 0.1;
        cfg.max_outer = 40;
        cfg.ratio_window = 8;
    } else if (name == "shear") {
        cfg.dim = 2;
        cfg.n = {32, 32, 1};
        cfg.length = {1.0, 1.0, 1.0};
        cfg.dt = 1e-3;
        cfg.t_end = 0.2;
        cfg.max_outer = 30;
        cfg.ratio_window = 6;
    } else if (name == "mms1") {
        cfg.dim = 1;
        cfg.n = {64, 1, 1};
        cfg.dt = 1e-3;
        cfg.t_end = 0.05;
    } else if (name == "mms2") {
        cfg.dim = 2;
        cfg.n = {24, 24, 1};
        cfg.dt = 1e-3;
        cfg.t_end = 0.05;
    } else if (name == "mms3") {
        cfg.dim = 3;
        cfg.n = {8, 8, 8};
        cfg.dt = 1e-3;
        cfg.t_end = 0.02;
    }
    cfg.bc = BcMode::wall;
}

namespace {

State uniform_state(const GridSpec& g, double rho, double k, double eps) {
    State s(g);
    s.rho = ScalarField(g, rho);
    s.u = VectorField(g, 0.0);
    s.h = ScalarField(g, 0.0);
    s.k = ScalarField(g, k);
    s.eps = ScalarField(g, eps);
    return s;
}

// Shear-like profile with u.n vanishing exactly at the node layers adjacent
// to every wall: the x-factor is pinned to zero at the first and last cell
// centers, the y-factor sweeps the channel.
State shear_state(const GridSpec& g) {
    State s = uniform_state(g, 1.0, 1.0, 1.0);
    const double amp = 0.3;
    const double x_f = g.pos(0, 0), x_l = g.pos(0, g.n[0] - 1);
    const double y_f = g.pos(1, 0), y_l = g.pos(1, g.n[1] - 1);
    s.u = VectorField::from_function(g, [&](int c, double x, double y, double) {
        if (c != 0) return 0.0;
        const double sx = std::sin(M_PI * (x - x_f) / (x_l - x_f));
        const double cy = std::cos(M_PI * (y - y_f) / (y_l - y_f));
        return amp * sx * cy;
    });
    return s;
}

} // namespace

State build_preset_state(const std::string& name, const GridSpec& g) {
    if (name == "uniform") return uniform_state(g, 1.0, 1.0, 0.0);
    if (name == "decay") return uniform_state(g, 1.0, 1.0, 1.0);
    if (name == "shear") return shear_state(g);
    if (name == "mms1" || name == "mms2") {
        auto mms = make_mms_solution(name == "mms1" ? 1 : 2);
        return mms->exact_state(g, 0.0);
    }
    if (name == "mms3") return uniform_state(g, 1.0, 1.0, 0.0);
    throw InvalidArgument("unknown preset: " + name);
}

} // namespace keps::cli
