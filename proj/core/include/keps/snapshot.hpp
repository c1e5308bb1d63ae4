#pragma once

#include <string>

#include "keps/model.hpp"

namespace keps {

// "keps-field v1" snapshot text format. First line
//   # keps-field v1 dim=<d> n=<n1,..> len=<L1,..> t=<time> name=<id>
// then node values row-major (axis 0 fastest), whitespace-separated, one
// axis-0 line per row, 17 significant digits. Vector fields carry dim values
// per node in the same node order. Writes are atomic (temp file + rename).

void write_snapshot(const std::string& path, const ScalarField& f, double t,
                    const std::string& name);
void write_snapshot(const std::string& path, const VectorField& f, double t,
                    const std::string& name);

struct SnapshotInfo {
    int dim = 0;
    std::array<int, 3> n{1, 1, 1};
    std::array<double, 3> length{1, 1, 1};
    double t = 0.0;
    std::string name;
};

SnapshotInfo read_snapshot_header(const std::string& path);

/// Reads a snapshot onto the given grid; dim/n/len must match the header.
ScalarField read_scalar_snapshot(const std::string& path, const GridSpec& g, double* t = nullptr);
VectorField read_vector_snapshot(const std::string& path, const GridSpec& g, double* t = nullptr);

/// Writes `content` to `path` via a temp file in the same directory plus
/// rename, so aborted runs never leave truncated files.
void atomic_write_text(const std::string& path, const std::string& content);

/// 17-significant-digit formatting used across all text outputs.
std::string format_full(double v);

} // namespace keps
