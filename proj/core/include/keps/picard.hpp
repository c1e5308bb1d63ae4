#pragma once

#include "keps/march.hpp"

namespace keps {

struct PicardConfig {
    double horizon = 0.1;
    double dt = 1e-3;
    int max_outer = 40;
    /// Convergence threshold on sup_t phi + int H1, relative to the
    /// first-pass value of the same metric.
    double tol_phi = 1e-10;
    /// Trailing window for contraction-ratio reporting and for the
    /// divergence trigger (ratio >= 1 that many consecutive times).
    int ratio_window = 4;
    /// Halve the horizon and restart when the iteration fails to contract.
    bool auto_shrink = false;
    StepConfig step;

    void validate() const {
        if (!(horizon > 0.0)) throw InvalidArgument("picard horizon must be positive");
        if (!(tol_phi > 0.0)) throw InvalidArgument("tol_phi must be positive");
        if (max_outer < 2) throw InvalidArgument("max_outer must be >= 2");
        if (ratio_window < 1) throw InvalidArgument("ratio_window must be >= 1");
        step.validate();
    }
};

/// Successive-difference norms between two trajectories, per time level.
struct DiffNorms {
    std::vector<double> phi;    // contraction functional phi(t)
    std::vector<double> h1_u;   // squared H1 norms of the differences
    std::vector<double> h1_h;
    std::vector<double> h1_k;
    std::vector<double> h1_eps;
    double sup_phi = 0.0;
    double int_h1 = 0.0;        // int_0^T sum of the four squared H1 norms dt
};

struct PicardIterRow {
    int iter = 0;
    double sup_phi = 0.0;
    double int_h1 = 0.0;
    double ratio = 0.0; // metric / previous metric; NaN for the first pass
};

struct PicardReport {
    std::vector<PicardIterRow> iters;
    bool converged = false;
    int iterations = 0;
    double threshold = 0.0;   // absolute convergence threshold actually used
    double final_metric = 0.0;
    double horizon = 0.0;     // horizon of the converged (possibly shrunk) run
    double dt = 0.0;
    int ratio_window = 1;
    int shrink_count = 0;
};

/// Constant-in-time extension of (u0, k0, eps0) as the zeroth iterate
/// (v, pi, theta)(t) = (u0, k0, eps0) for all t.
Trajectory initial_iterate(const State& init, double horizon, double dt);

/// The contraction functional between two states, with the density weight
/// taken from `a` (the newer iterate):
///   phi = ||rho_a - rho_b||^2_L2 + ||sqrt(rho_a)(u_a-u_b)||^2
///       + ||sqrt(rho_a)(h_a-h_b)||^2 + ||sqrt(rho_a)(k_a-k_b)||^2
///       + ||sqrt(rho_a)(eps_a-eps_b)||^2.
double phi_diff(const State& a, const State& b);

DiffNorms diff_norms(const Trajectory& current, const Trajectory& previous);

/// Iterates linearized_solve with the previous iterate as the known triple
/// until the combined difference metric falls below tol_phi relative to the
/// first pass. Throws PicardDiverged after ratio_window consecutive
/// non-contracting passes (unless auto_shrink is set, in which case the
/// horizon is halved and the iteration restarts).
std::pair<Trajectory, PicardReport> picard_solve(const State& init, const ModelParams& params,
                                                 const PicardConfig& cfg,
                                                 const StepCallback& on_step = {},
                                                 const ForcingProvider* forcing = nullptr);

/// Geometric mean of the trailing ratio_window contraction ratios.
double contraction_ratio(const PicardReport& report);
double contraction_ratio(const PicardReport& report, int ratio_window);

/// Residuals of the converged trajectory in the nonlinear equations with the
/// artifact's discrete operators (upwind mass flux, centered elsewhere,
/// backward time differences). Returns the max over time levels of the
/// summed per-equation L2 norms.
double nonlinear_residual(const Trajectory& traj, const ModelParams& params);

} // namespace keps
