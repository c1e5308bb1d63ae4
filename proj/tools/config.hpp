#pragma once

#include <array>
#include <limits>
#include <string>

#include "keps/grid.hpp"
#include "keps/model.hpp"

namespace keps::cli {

/// Typed view of the flat `key = value` run configuration. Unknown keys are
/// rejected at parse time; the echo (canonical key order, full-precision
/// values) reparses to the identical configuration.
struct RunConfig {
    // grid.*
    int dim = 1;
    std::array<int, 3> n{64, 1, 1};
    std::array<double, 3> length{1.0, 1.0, 1.0};
    BcMode bc = BcMode::wall;
    // params.*
    ModelParams params;
    // time.*
    double dt = 1e-3;
    double t_end = 0.1;
    double window = 0.0; // continuation window for `decay`; 0 = single shot
    // picard.*
    double picard_tol = 1e-10;
    int max_outer = 40;
    int ratio_window = 4;
    bool auto_shrink = false;
    // linsolve.*
    double lin_tol = 1e-10;
    int lin_maxit = 500;
    // init.*
    std::string preset;                 // one of the embedded presets, or empty
    std::array<std::string, 5> files{}; // rho,u,h,k,eps snapshot paths
    bool has_files = false;
    // output.*
    std::string out_dir = "out";
    int dump_every = 0;
    int norms_every = 1;
    // estimate.*
    double estimate_t1 = std::numeric_limits<double>::infinity();
    double estimate_t2 = std::numeric_limits<double>::infinity();

    GridSpec make_grid() const { return GridSpec::box(dim, n, length, bc); }
};

class ConfigError : public Error {
public:
    explicit ConfigError(std::string msg) : Error(std::move(msg)) {}
};

/// Parses config text (blank lines and # comments allowed). Preset defaults
/// are applied first when init.preset names one, then file values overlay.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

/// Canonical echo: every effective key in fixed order, one `key = value`
/// line each, doubles at 17 significant digits.
std::string echo_config(const RunConfig& cfg);

} // namespace keps::cli
