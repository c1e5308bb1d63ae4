#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "keps/errors.hpp"

namespace keps {

/// One-time-step configuration shared by the implicit solves.
struct StepConfig {
    double dt = 1e-3;
    double lin_tol = 1e-10;   // relative residual target, ||Ax-b|| <= lin_tol ||b||
    int lin_maxit = 500;      // operator applications before giving up
    double k_floor = 0.0;     // positive floor demanded of pi in the eps equation
    bool implicit_sink = false; // treat -C2 rho theta/pi * eps implicitly in the eps step

    void validate() const {
        if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
        if (!(lin_tol > 0.0 && lin_tol < 1.0)) throw InvalidArgument("lin_tol must be in (0,1)");
        if (lin_maxit < 1) throw InvalidArgument("lin_maxit must be >= 1");
        if (k_floor < 0.0) throw InvalidArgument("k_floor must be >= 0");
    }
};

using ApplyFn = std::function<void(const std::vector<double>&, std::vector<double>&)>;

/// Matrix-free restarted GMRES with optional (right) diagonal preconditioning.
/// Deterministic arithmetic: identical inputs give bit-identical solutions
/// for any thread count. Throws LinearSolveDiverged (carrying the stats) when
/// the iteration cap is reached without meeting the tolerance.
std::pair<std::vector<double>, SolveStats> solve_linear_system(
    const ApplyFn& apply_operator, const std::vector<double>& rhs, const StepConfig& cfg,
    const std::vector<double>* jacobi_diagonal = nullptr);

} // namespace keps
