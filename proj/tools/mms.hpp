#pragma once

#include <memory>
#include <string>

#include "keps/march.hpp"

namespace keps::cli {

/// Manufactured solution with analytic derivatives. The density is spatially
/// uniform (time-varying), so the upwind mass flux reduces to the centered
/// face-average divergence and the spatial study measures the parabolic
/// discretization's second order. Trig factors are odd/even about the wall
/// faces, making the ghost reflections exact.
class MmsSolution : public ForcingProvider {
public:
    struct Velocity {
        double u[3]{}, u_t[3]{}, lap[3]{}, grad_div[3]{};
        double grad[3][3]{}; // grad[j][i] = d_j u_i
    };
    struct Scalar {
        double v = 0.0, vt = 0.0, lap = 0.0;
        double grad[3]{};
    };

    virtual int dim() const = 0;
    virtual double rho(double t) const = 0;
    virtual double rho_t(double t) const = 0;
    virtual Velocity velocity(double x, double y, double t) const = 0;
    virtual Scalar enthalpy(double x, double y, double t) const = 0;
    virtual Scalar tke(double x, double y, double t) const = 0;
    virtual Scalar dissipation(double x, double y, double t) const = 0;

    void set_params(const ModelParams& p) { params_ = p; }
    const ModelParams& params() const { return params_; }

    /// Samples the exact fields at time t.
    State exact_state(const GridSpec& g, double t) const;

    /// Forcing that makes the exact solution satisfy the nonlinear system.
    void eval(double t, ScalarField& f_rho, VectorField& f_u, ScalarField& f_h,
              ScalarField& f_k, ScalarField& f_eps) const override;

protected:
    ModelParams params_;
};

std::unique_ptr<MmsSolution> make_mms_solution(int dim);

struct MmsLevel {
    int n = 0;
    double dt = 0.0;
    double error = 0.0; // summed L2 error of the five fields at t = T
};

struct MmsStudy {
    std::vector<MmsLevel> levels;
    double order = 0.0;
};

struct MmsResult {
    MmsStudy temporal; // fixed grid, dt halved twice; offset-cancelling fit
    MmsStudy spatial;  // n doubled twice with dt ~ h^2; finest-pair order
    bool pass = false;
};

/// Runs the temporal and spatial refinement studies for the given case
/// (dim 1 or 2) and applies the acceptance thresholds: temporal order >=
/// 0.9, spatial order >= 1.9.
MmsResult run_mms_verification(int dim, const ModelParams& params, double horizon,
                               double picard_tol, std::string* log = nullptr);

} // namespace keps::cli
