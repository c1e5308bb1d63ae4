#pragma once

#include <optional>

#include "keps/constants.hpp"
#include "keps/model.hpp"

namespace keps {

/// One row of the norm time series. Time-derivative entries are backward
/// differences of stored levels and are absent at the first level.
struct NormRow {
    double t = 0.0;
    double rho_h3 = 0.0;
    double rhot_h1 = 0.0;
    double u_h1 = 0.0, u_h2 = 0.0, u_h3 = 0.0;
    double k_h1 = 0.0, k_h2 = 0.0;
    double eps_h1 = 0.0, eps_h2 = 0.0;
    double h_h1 = 0.0, h_h2 = 0.0;
    double sr_ut = 0.0, sr_ht = 0.0, sr_kt = 0.0, sr_et = 0.0;
    double int_u_h4 = 0.0, int_k_h3 = 0.0;
    bool has_time_derivs = false;
};

/// Diagnostic ratios quantity / c_i bound for the a-priori estimates; the
/// generic constant C is unquantified, so these are reported, never asserted.
struct AprioriRatios {
    double sup_u_h1_over_c1 = 0.0;
    double sup_u_h2_over_c2 = 0.0;
    double sup_u_h3_over_c3 = 0.0;
    double int_u_h4_over_c4 = 0.0;
    double sup_k_h2_over_c5 = 0.0;
    double sup_eps_h2_over_c6 = 0.0;
};

struct NormReport {
    std::vector<NormRow> rows;
    std::optional<AprioriRatios> ratios;
};

/// Computes the full norm time series of a trajectory. Throws BlowupDetected
/// (naming field and time level) on any non-finite value. When `consts` is
/// given, fills the diagnostic ratios against the ladder.
NormReport monitor_apriori(const Trajectory& traj, const EstimateConstants* consts = nullptr);

struct DensityBoundReport {
    std::vector<double> t;
    std::vector<double> min_rho;
    std::vector<double> bound;   // min(rho0) exp(-sum dt ||grad v||_inf)
    std::vector<double> margin;  // min_rho - bound
    double tolerance = 0.0;      // allowed margin deficit, tol_fraction * min(rho0)
    bool ok = false;
};

/// Discrete transport lower bound: per level, min rho(t) against
/// min(rho0) exp(-int ||grad v||_Linf), with the gradient sup norm taken as
/// max over nodes and components of |d_j v_i| and v read from the known
/// trajectory at the new time levels. Violations beyond
/// tol_fraction*min(rho0) clear the ok flag.
DensityBoundReport check_density_bound(const Trajectory& traj, const Trajectory& known_v,
                                       double tol_fraction = 0.05);

} // namespace keps
