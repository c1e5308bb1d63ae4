#include "keps/norms.hpp"

#include <cmath>
#include <string>

#include "keps/operators.hpp"

namespace keps {

namespace {

void check_resolution(const GridSpec& g, int order) {
    if (order < 0 || order > 4) throw InvalidArgument("sobolev order must be in 0..4");
    for (int a = 0; a < g.dim; ++a)
        if (g.n[a] < 2 * order + 2)
            throw InsufficientResolution("H^" + std::to_string(order) + " norm needs n >= " +
                                         std::to_string(2 * order + 2) + " per axis");
}

// Sum of ||D^alpha f||^2 over all |alpha| <= order. Distinct multi-indices
// are enumerated as non-decreasing axis sequences; per-axis difference
// operators commute (tensor structure), so each alpha is counted once.
double scalar_norm_sq(const ScalarField& f, int order) {
    double total = inner_l2(f, f);
    if (order == 0) return total;

    struct Item {
        ScalarField field;
        int last_axis;
    };
    std::vector<Item> level;
    level.push_back({f, 0});
    for (int l = 1; l <= order; ++l) {
        std::vector<Item> next;
        next.reserve(level.size() * static_cast<std::size_t>(f.grid().dim));
        for (const Item& it : level) {
            for (int a = it.last_axis; a < f.grid().dim; ++a) {
                Item d{derivative_axis(it.field, a), a};
                total += inner_l2(d.field, d.field);
                next.push_back(std::move(d));
            }
        }
        level = std::move(next);
    }
    return total;
}

} // namespace

double sobolev_norm_sq(const ScalarField& f, int order) {
    check_resolution(f.grid(), order);
    return scalar_norm_sq(f, order);
}

double sobolev_norm_sq(const VectorField& f, int order) {
    check_resolution(f.grid(), order);
    double total = 0.0;
    for (int c = 0; c < f.dim(); ++c) total += scalar_norm_sq(f.component_field(c), order);
    return total;
}

double sobolev_norm(const ScalarField& f, int order) { return std::sqrt(sobolev_norm_sq(f, order)); }
double sobolev_norm(const VectorField& f, int order) { return std::sqrt(sobolev_norm_sq(f, order)); }

double compute_c0(const State& init) {
    const double high = std::sqrt(sobolev_norm_sq(init.rho, 3) + sobolev_norm_sq(init.u, 3));
    const double low = std::sqrt(sobolev_norm_sq(init.h, 2) + sobolev_norm_sq(init.k, 2) +
                                 sobolev_norm_sq(init.eps, 2));
    return 2.0 + high + low;
}

} // namespace keps
