#include "keps/constants.hpp"

#include <cmath>
#include <limits>

namespace keps {

EstimateConstants estimate_constants(double c0, double gamma, double c_generic) {
    if (!(c0 > 1.0)) throw InvalidArgument("estimate_constants needs c0 > 1");
    if (!(gamma >= 1.0)) throw InvalidArgument("estimate_constants needs gamma >= 1");
    if (!(c_generic >= 1.0)) throw InvalidArgument("estimate_constants needs c_generic >= 1");

    EstimateConstants out;
    out.c0 = c0;
    out.gamma = gamma;
    out.c_generic = c_generic;

    const double lg_c0 = std::log10(c0);
    const double lg_C = std::log10(c_generic);
    auto& lg = out.log10_c;
    lg[0] = lg_c0;

    lg[1] = lg_C + (7.0 + 2.0 * gamma) * lg_c0;
    lg[2] = lg_C + (2.5 + 3.0 * gamma) * lg_c0 + 2.0 * lg[1];
    lg[5] = lg_C + 3.5 * lg_c0 + lg[1] + 2.0 * lg[2];
    lg[6] = lg_C + 4.5 * lg_c0 + 2.0 * lg[1] + 2.0 * lg[2];
    lg[3] = lg_C + (6.5 + 3.0 * gamma) * lg_c0 + 4.0 * lg[1] + lg[2] + lg[5];
    lg[4] = lg_C + (9.0 + 6.0 * gamma) * lg_c0 + 5.0 * lg[1] + 2.0 * lg[2];

    // linear values where finite; pow keeps small cases (c0=2, gamma=1) exact
    out.c[0] = c0;
    out.c[1] = c_generic * std::pow(c0, 7.0 + 2.0 * gamma);
    out.c[2] = c_generic * std::pow(c0, 2.5 + 3.0 * gamma) * out.c[1] * out.c[1];
    out.c[5] = c_generic * std::pow(c0, 3.5) * out.c[1] * out.c[2] * out.c[2];
    out.c[6] = c_generic * std::pow(c0, 4.5) * out.c[1] * out.c[1] * out.c[2] * out.c[2];
    out.c[3] = c_generic * std::pow(c0, 6.5 + 3.0 * gamma) * std::pow(out.c[1], 4.0) * out.c[2] *
               out.c[5];
    out.c[4] =
        c_generic * std::pow(c0, 9.0 + 6.0 * gamma) * std::pow(out.c[1], 5.0) * out.c[2] * out.c[2];

    out.t_product_log10 = -(6.0 * gamma + 16.0) * lg_c0 - 10.0 * lg[1] - 8.0 * lg[2] -
                          8.0 * lg[3] - 2.0 * lg[4] - 2.0 * lg[5] - 4.0 * lg[6];
    out.t_product = std::pow(10.0, out.t_product_log10);
    return out;
}

double existence_time(const EstimateConstants& k, double t1, double t2) {
    if (!(t1 > 0.0) || !(t2 > 0.0)) throw InvalidArgument("existence_time needs T1, T2 > 0");
    return std::min(k.t_product, std::min(t1, t2));
}

double existence_time_log10(const EstimateConstants& k, double t1, double t2) {
    if (!(t1 > 0.0) || !(t2 > 0.0)) throw InvalidArgument("existence_time needs T1, T2 > 0");
    const double lim = std::min(t1, t2);
    if (std::isinf(lim)) return k.t_product_log10;
    return std::min(k.t_product_log10, std::log10(lim));
}

} // namespace keps
