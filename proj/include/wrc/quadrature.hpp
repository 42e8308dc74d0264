#pragma once

#include <utility>

namespace wrc::quad {

// Degree-8 Gauss-Legendre nodes and weights on [-1,1] (positive half).
inline constexpr double kGlNode[4] = {0.1834346424956498049, 0.5255324099163289858,
                                      0.7966664774136267396, 0.9602898564975362317};
inline constexpr double kGlWeight[4] = {0.3626837833783619830, 0.3137066458778872873,
                                        0.2223810344533744705, 0.1012285362903762592};

/// Composite Gauss-Legendre on [0,1], `panels` equal panels of degree 8.
template <class F>
double integrate_unit(F&& f, int panels) {
    const double h = 1.0 / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        double acc = 0.0;
        for (int k = 0; k < 4; ++k)
            acc += kGlWeight[k] * (f(mid + 0.5 * h * kGlNode[k]) + f(mid - 0.5 * h * kGlNode[k]));
        total += acc;
    }
    return total * 0.5 * h;
}

/// Tensor rule over the unit square.
template <class F>
double integrate_unit_square(F&& f, int panels) {
    return integrate_unit([&](double u) { return integrate_unit([&](double v) { return f(u, v); }, panels); },
                          panels);
}

/// Unit square split along the diagonal v = u, each triangle mapped back to a
/// square so that integrands with a diagonal kink stay smooth per domain:
/// lower triangle (v < u) via v = u t, upper (u < v) via u = v t.
template <class F>
double integrate_unit_square_split(F&& f, int panels) {
    const double lower = integrate_unit_square([&](double u, double t) { return f(u, u * t) * u; }, panels);
    const double upper = integrate_unit_square([&](double v, double t) { return f(v * t, v) * v; }, panels);
    return lower + upper;
}

}  // namespace wrc::quad
