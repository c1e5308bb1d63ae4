#pragma once

#include <stdexcept>
#include <string>

namespace keps {

/// Base class for all solver errors. `context()` carries the failing time
/// level / stage when an error is rethrown by a marching loop.
class Error : public std::runtime_error {
public:
    explicit Error(std::string msg) : std::runtime_error(std::move(msg)) {}

    const std::string& context() const { return context_; }
    void set_context(std::string ctx) { context_ = std::move(ctx); }

    std::string full_message() const {
        if (context_.empty()) return what();
        return std::string(what()) + " [" + context_ + "]";
    }

private:
    std::string context_;
};

class NonpositiveDensity : public Error {
public:
    explicit NonpositiveDensity(double min_value)
        : Error("nonpositive density: min(rho) = " + std::to_string(min_value)),
          min_value(min_value) {}
    double min_value;
};

class CflViolation : public Error {
public:
    explicit CflViolation(double cfl)
        : Error("transport CFL number " + std::to_string(cfl) + " exceeds 0.9"), cfl(cfl) {}
    double cfl;
};

struct SolveStats {
    int iterations = 0;
    double final_relative_residual = 0.0;
    bool converged = false;
};

class LinearSolveDiverged : public Error {
public:
    explicit LinearSolveDiverged(SolveStats s)
        : Error("linear solve did not converge: rel_res = " +
                std::to_string(s.final_relative_residual) + " after " +
                std::to_string(s.iterations) + " iterations"),
          stats(s) {}
    SolveStats stats;
};

class TurbulentEnergyFloor : public Error {
public:
    TurbulentEnergyFloor(double min_pi, double floor)
        : Error("turbulent kinetic energy coefficient min(pi) = " + std::to_string(min_pi) +
                " at or below floor " + std::to_string(floor)),
          min_pi(min_pi), floor(floor) {}
    double min_pi;
    double floor;
};

class PicardDiverged : public Error {
public:
    explicit PicardDiverged(std::string msg) : Error(std::move(msg)) {}
};

class BlowupDetected : public Error {
public:
    BlowupDetected(std::string field, int time_level)
        : Error("non-finite value in field '" + field + "' at time level " +
                std::to_string(time_level)),
          field(std::move(field)), time_level(time_level) {}
    std::string field;
    int time_level;
};

class InsufficientResolution : public Error {
public:
    explicit InsufficientResolution(std::string msg) : Error(std::move(msg)) {}
};

class InsufficientIterations : public Error {
public:
    explicit InsufficientIterations(std::string msg) : Error(std::move(msg)) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(std::string msg) : Error(std::move(msg)) {}
};

} // namespace keps
