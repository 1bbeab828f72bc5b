#include "ecs/exact_negativity.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ecs {

const char* method_name(Method method) {
    switch (method) {
        case Method::exact: return "exact";
        case Method::approx_f: return "approx_f";
        case Method::small_loss: return "small_loss";
        case Method::cutoff: return "cutoff";
    }
    return "unknown";
}

namespace {

// Gram matrix of coherent states at amplitude scale*alpha*e^{-2 pi i q/m}, q=1..m.
HermitianMatrix ring_gram(Complex alpha, int m, double scale, bool squared) {
    Matrix g(m, m);
    for (int p = 0; p < m; ++p) {
        const double tp = -2.0 * std::numbers::pi * (p + 1) / m;
        const Complex ap = scale * alpha * Complex(std::cos(tp), std::sin(tp));
        for (int q = 0; q < m; ++q) {
            const double tq = -2.0 * std::numbers::pi * (q + 1) / m;
            const Complex aq = scale * alpha * Complex(std::cos(tq), std::sin(tq));
            const Complex ov = coherent_overlap(ap, aq);
            g(p, q) = squared ? ov * ov : ov;
        }
    }
    return HermitianMatrix(std::move(g));
}

}  // namespace

DecoherenceModel build_decoherence_model(const SystemParams& params) {
    params.validate();
    const double eps = params.epsilon();
    return DecoherenceModel{
        params,
        ring_gram(params.alpha, params.m, std::sqrt(params.eta), false),
        ring_gram(params.alpha, params.m, std::sqrt(eps), true),
    };
}

HermitianMatrix build_density_matrix(const DecoherenceModel& model,
                                     const PhaseCoefficients& coeffs,
                                     Diagnostics* diag, double clamp_tol) {
    const int m = model.params.m;
    if (coeffs.m() != m)
        throw std::invalid_argument("build_density_matrix: coefficient count != m");

    double min_clamped = 0.0;
    const HermitianMatrix a =
        hermitian_sqrt(HermitianMatrix(model.g.mat().transpose()), clamp_tol, &min_clamped);

    Matrix c(m * m, m);
    for (int q = 0; q < m; ++q)
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k)
                c(i * m + k, q) = coeffs.f[q] * a.mat()(q, i) * a.mat()(q, k);

    Matrix raw = c * model.g2.mat().transpose() * c.adjoint();

    const double herm_err = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
    Matrix sym = 0.5 * (raw + raw.adjoint());
    const double trace = sym.trace().real();
    const double trace_err = std::abs(trace - 1.0);
    if (trace_err > 1e-6)
        throw std::runtime_error("build_density_matrix: trace deviates from 1 by " +
                                 std::to_string(trace_err));
    if (trace_err > 1e-12) sym /= trace;

    if (diag) {
        diag->min_clamped_eigenvalue = min_clamped;
        diag->trace_error = trace_err;
        diag->hermiticity_error = herm_err;
    }
    return HermitianMatrix(std::move(sym));
}

HermitianMatrix build_density_matrix(const DecoherenceModel& model, Diagnostics* diag,
                                     double clamp_tol) {
    return build_density_matrix(model, coefficients(model.params.m), diag, clamp_tol);
}

NegativityResult log_negativity_exact(const SystemParams& params, const ExactOptions& opts) {
    params.validate();
    if (params.m > opts.max_m)
        throw ExactSizeLimitError("exact method limited to m <= " + std::to_string(opts.max_m) +
                                  " (got m=" + std::to_string(params.m) +
                                  "); use the approximate method");

    NegativityResult res;
    res.method = Method::exact;
    const DecoherenceModel model = build_decoherence_model(params);
    const HermitianMatrix rho =
        build_density_matrix(model, &res.diagnostics, opts.clamp_tol);
    const double tn = trace_norm_hermitian(partial_transpose_first(rho, params.m));
    res.e_n = std::max(std::log2(tn), 0.0);
    return res;
}

NegativityResult pure_state_negativity(const SystemParams& params, const ExactOptions& opts) {
    SystemParams pure = params;
    pure.eta = 1.0;
    return log_negativity_exact(pure, opts);
}

double entanglement_change(const SystemParams& params, const ExactOptions& opts) {
    return log_negativity_exact(params, opts).e_n - pure_state_negativity(params, opts).e_n;
}

}  // namespace ecs
