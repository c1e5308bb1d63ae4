#include "keps/field.hpp"

#include <algorithm>
#include <cmath>

namespace keps {

ScalarField ScalarField::from_function(
    const GridSpec& g, const std::function<double(double, double, double)>& f) {
    ScalarField out(g);
    std::size_t i = 0;
    for (int i2 = 0; i2 < g.n[2]; ++i2)
        for (int i1 = 0; i1 < g.n[1]; ++i1)
            for (int i0 = 0; i0 < g.n[0]; ++i0)
                out.v_[i++] = f(g.pos(0, i0), g.pos(1, i1), g.pos(2, i2));
    out.require_finite("ScalarField::from_function");
    return out;
}

double ScalarField::min() const { return *std::min_element(v_.begin(), v_.end()); }
double ScalarField::max() const { return *std::max_element(v_.begin(), v_.end()); }

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
}

bool ScalarField::finite() const {
    for (double x : v_)
        if (!std::isfinite(x)) return false;
    return true;
}

void ScalarField::require_finite(const char* what) const {
    if (!finite()) throw InvalidArgument(std::string(what) + ": non-finite value");
}

VectorField VectorField::from_function(
    const GridSpec& g, const std::function<double(int, double, double, double)>& comp_f) {
    VectorField out(g);
    for (int c = 0; c < g.dim; ++c) {
        std::size_t i = 0;
        auto span = out.component(c);
        for (int i2 = 0; i2 < g.n[2]; ++i2)
            for (int i1 = 0; i1 < g.n[1]; ++i1)
                for (int i0 = 0; i0 < g.n[0]; ++i0)
                    span[i++] = comp_f(c, g.pos(0, i0), g.pos(1, i1), g.pos(2, i2));
    }
    out.require_finite("VectorField::from_function");
    return out;
}

ScalarField VectorField::component_field(int c) const {
    ScalarField out(*grid_);
    auto src = component(c);
    std::copy(src.begin(), src.end(), out.values().begin());
    return out;
}

double VectorField::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
}

bool VectorField::finite() const {
    for (double x : v_)
        if (!std::isfinite(x)) return false;
    return true;
}

void VectorField::require_finite(const char* what) const {
    if (!finite()) throw InvalidArgument(std::string(what) + ": non-finite value");
}

namespace {
void require_same(const GridSpec& a, const GridSpec& b) {
    if (&a != &b && !a.same_layout(b))
        throw InvalidArgument("field arithmetic on mismatched grids");
}
} // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    require_same(a.grid(), b.grid());
    ScalarField out(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    require_same(a.grid(), b.grid());
    ScalarField out(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

ScalarField operator*(double s, const ScalarField& a) {
    ScalarField out(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
    return out;
}

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
    require_same(a.grid(), b.grid());
    ScalarField out(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    require_same(a.grid(), b.grid());
    VectorField out(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) out.raw()[i] = a.raw()[i] + b.raw()[i];
    return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    require_same(a.grid(), b.grid());
    VectorField out(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) out.raw()[i] = a.raw()[i] - b.raw()[i];
    return out;
}

VectorField operator*(double s, const VectorField& a) {
    VectorField out(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) out.raw()[i] = s * a.raw()[i];
    return out;
}

} // namespace keps
