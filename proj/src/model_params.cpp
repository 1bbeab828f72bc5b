#include "ecs/model_params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ecs {

void SystemParams::validate() const {
    if (m < 2) throw std::invalid_argument("SystemParams: m must be >= 2");
    if (!(eta > 0.0) || eta > 1.0)
        throw std::invalid_argument("SystemParams: eta must lie in (0, 1]");
}

SystemParams SystemParams::make(Complex alpha, int m, double eta) {
    SystemParams p{alpha, m, eta};
    p.validate();
    return p;
}

Complex coherent_overlap(Complex a, Complex b) {
    return std::exp(std::conj(a) * b - 0.5 * std::norm(a) - 0.5 * std::norm(b));
}

double chord_sq(int m, int k) {
    const double s = std::sin(std::numbers::pi * k / m);
    return 4.0 * s * s;
}

PhaseCoefficients coefficients(int m) {
    if (m < 2) throw std::invalid_argument("coefficients: m must be >= 2");
    PhaseCoefficients out;
    out.f.resize(m);
    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    for (int q = 1; q <= m; ++q) {
        const double num = (m % 2 == 1) ? static_cast<double>(q) * (q + 1)
                                        : static_cast<double>(q) * q;
        const double phase = std::numbers::pi * num / m;
        out.f[q - 1] = norm * Complex(std::cos(phase), std::sin(phase));
    }
    return out;
}

double delta_from_alpha2(double alpha2, int m) {
    return std::exp(-alpha2 * chord_sq(m, 1));
}

double delta_from_alpha(const SystemParams& params) {
    return delta_from_alpha2(params.alpha2(), params.m);
}

double alpha_from_delta(double delta, int m) {
    if (!(delta > 0.0) || delta > 1.0)
        throw std::invalid_argument("alpha_from_delta: delta must lie in (0, 1]");
    return std::log(1.0 / delta) / chord_sq(m, 1);
}

double photons_absorbed(const SystemParams& params) {
    return (1.0 - params.eta) * params.alpha2();
}

DerivedScalars derived_scalars(const SystemParams& params) {
    return {delta_from_alpha(params), photons_absorbed(params)};
}

}  // namespace ecs
