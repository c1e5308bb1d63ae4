#pragma once

#include <string>
#include <vector>

#include "keps/model.hpp"

namespace keps {

struct ClauseResult {
    std::string clause;   // short name, e.g. "0 < m < rho0"
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
    std::string detail;
};

struct ValidationReport {
    bool pass = false;
    std::vector<ClauseResult> clauses;
    double c0 = 0.0;
    bool c0_valid = false;
};

/// Checks each clause of the initial-data hypotheses: the positive floors
/// m < rho0 and m < k0, finiteness of the required discrete norms (rho0, u0
/// in H3; h0, k0, eps0 in H2), and the four boundary traces at the node
/// layers adjacent to each wall face: |u0.n|, |h0|, and one-sided normal
/// differences of k0 and eps0, each within tol_bc = max(1e-10 ||f||_inf,
/// 1e-14). Traces are vacuous on periodic grids. Failures are carried in the
/// report, never thrown.
ValidationReport validate_initial(const State& init, const ModelParams& params);

} // namespace keps
