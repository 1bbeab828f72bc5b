#pragma once

#include <cmath>
#include <utility>

namespace ecs {

// Golden-section minimization of a unimodal function on [a, b] down to an
// argument resolution of tol. Returns (argmin, min).
template <typename F>
std::pair<double, double> golden_section_minimize(F f, double a, double b, double tol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

template <typename F>
std::pair<double, double> golden_section_maximize(F f, double a, double b, double tol) {
    auto [x, v] = golden_section_minimize([&](double t) { return -f(t); }, a, b, tol);
    return {x, -v};
}

}  // namespace ecs
