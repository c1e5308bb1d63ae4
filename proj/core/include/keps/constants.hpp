#pragma once

#include <array>

#include "keps/errors.hpp"

namespace keps {

/// The c0..c6 ladder and the existence-time estimate. Linear values can
/// overflow/underflow double for realistic c0; the base-10 logs are always
/// finite and are the authoritative representation.
struct EstimateConstants {
    double c0 = 0.0;
    std::array<double, 7> c{};        // c[0] unused echo of c0, c[1..6] linear (may be inf)
    std::array<double, 7> log10_c{};  // log10 of c0..c6
    double t_product = 0.0;           // linear product term (may underflow to 0)
    double t_product_log10 = 0.0;
    double gamma = 0.0;
    double c_generic = 0.0;
};

/// Evaluates the ladder
///   c1 = C c0^(7+2g), c2 = C c0^(5/2+3g) c1^2, c5 = C c0^(7/2) c1 c2^2,
///   c6 = C c0^(9/2) c1^2 c2^2, c3 = C c0^(13/2+3g) c1^4 c2 c5,
///   c4 = C c0^(9+6g) c1^5 c2^2
/// in dependency order, in the log domain (linear values alongside), and the
/// product term c0^(-6g-16) c1^-10 c2^-8 c3^-8 c4^-2 c5^-2 c6^-4.
/// Requires c0 > 1, gamma > 1, c_generic >= 1.
EstimateConstants estimate_constants(double c0, double gamma, double c_generic);

/// min{product term, T1, T2}; pass +infinity sentinels when unconstrained.
/// The linear return value underflows to 0 when the product term does; use
/// existence_time_log10 for the representable form.
double existence_time(const EstimateConstants& k, double t1, double t2);
double existence_time_log10(const EstimateConstants& k, double t1, double t2);

} // namespace keps
