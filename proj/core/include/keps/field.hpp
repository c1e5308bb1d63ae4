#pragma once

#include <functional>
#include <span>
#include <vector>

#include "keps/grid.hpp"

namespace keps {

/// Scalar grid function, one value per cell-center node, axis 0 fastest.
/// Fields reference their grid; grids must outlive fields.
class ScalarField {
public:
    explicit ScalarField(const GridSpec& g, double fill = 0.0)
        : grid_(&g), v_(g.node_count(), fill) {}

    static ScalarField from_function(const GridSpec& g,
                                     const std::function<double(double, double, double)>& f);

    const GridSpec& grid() const { return *grid_; }
    std::size_t size() const { return v_.size(); }

    double& operator[](std::size_t i) { return v_[i]; }
    double operator[](std::size_t i) const { return v_[i]; }
    double& at(int i0, int i1 = 0, int i2 = 0) { return v_[grid_->index(i0, i1, i2)]; }
    double at(int i0, int i1 = 0, int i2 = 0) const { return v_[grid_->index(i0, i1, i2)]; }

    std::span<const double> values() const { return v_; }
    std::span<double> values() { return v_; }
    std::vector<double>& raw() { return v_; }
    const std::vector<double>& raw() const { return v_; }

    double min() const;
    double max() const;
    double max_abs() const;
    bool finite() const;
    /// Throws InvalidArgument naming `what` if any value is NaN/Inf.
    void require_finite(const char* what) const;

private:
    const GridSpec* grid_;
    std::vector<double> v_;
};

/// Vector grid function with grid().dim components, stored component-major:
/// component c occupies [c*N, (c+1)*N).
class VectorField {
public:
    explicit VectorField(const GridSpec& g, double fill = 0.0)
        : grid_(&g), v_(g.node_count() * static_cast<std::size_t>(g.dim), fill) {}

    static VectorField from_function(
        const GridSpec& g,
        const std::function<double(int, double, double, double)>& comp_f);

    const GridSpec& grid() const { return *grid_; }
    int dim() const { return grid_->dim; }
    std::size_t nodes() const { return grid_->node_count(); }
    std::size_t size() const { return v_.size(); }

    double& comp(int c, std::size_t i) { return v_[c * nodes() + i]; }
    double comp(int c, std::size_t i) const { return v_[c * nodes() + i]; }
    double& at(int c, int i0, int i1 = 0, int i2 = 0) {
        return v_[c * nodes() + grid_->index(i0, i1, i2)];
    }
    double at(int c, int i0, int i1 = 0, int i2 = 0) const {
        return v_[c * nodes() + grid_->index(i0, i1, i2)];
    }

    std::span<const double> component(int c) const { return {v_.data() + c * nodes(), nodes()}; }
    std::span<double> component(int c) { return {v_.data() + c * nodes(), nodes()}; }
    /// Component c as a ScalarField copy (for scalar operator reuse).
    ScalarField component_field(int c) const;

    std::vector<double>& raw() { return v_; }
    const std::vector<double>& raw() const { return v_; }

    double max_abs() const;
    bool finite() const;
    void require_finite(const char* what) const;

private:
    const GridSpec* grid_;
    std::vector<double> v_;
};

// elementwise helpers
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
ScalarField hadamard(const ScalarField& a, const ScalarField& b);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);

} // namespace keps
