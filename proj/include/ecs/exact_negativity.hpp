#pragma once

#include <stdexcept>

#include "ecs/model_params.hpp"
#include "ecs/numerics.hpp"

namespace ecs {

enum class Method { exact, approx_f, small_loss, cutoff };
const char* method_name(Method method);

struct Diagnostics {
    double min_clamped_eigenvalue = 0.0;  // most negative Gram eigenvalue clamped in sqrt
    double trace_error = 0.0;             // |tr(rho) - 1| before renormalization
    double hermiticity_error = 0.0;       // max |rho - rho^dag| before symmetrization
};

struct NegativityResult {
    double e_n = 0.0;  // ebits, >= 0
    Method method = Method::exact;
    Diagnostics diagnostics;
};

// Attenuated system/environment overlap matrices of the loss channel:
//   g[p][q]  = <Phi~_p|Phi~_q>,  Phi~_q at amplitude sqrt(eta) alpha e^{-2 pi i q/m}
//   g2[p][q] = <Psi_p|Psi_q>^2,  Psi_q  at amplitude sqrt(1-eta) alpha e^{-2 pi i q/m}
// Both are Hermitian circulant with unit diagonal.
struct DecoherenceModel {
    SystemParams params;
    HermitianMatrix g;
    HermitianMatrix g2;
};

struct ExactOptions {
    int max_m = 50;           // exact-method cap (matrices up to m^2 x m^2)
    double clamp_tol = 1e-10; // Gram eigenvalue clamp, relative to the largest
};

// Raised when the exact method is requested beyond the configured size cap.
class ExactSizeLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

DecoherenceModel build_decoherence_model(const SystemParams& params);

// Density matrix of the decohered state in the orthogonalized branch basis.
//
// With A = sqrt(g^T) and C[(i,k),q] = f_q A(q,i) A(q,k), the mixture reads
// rho = C g2^T C^dag; the transpose on g2 places <Psi_p|Psi_q>^2 against the
// (q, p) dyad exactly as the loss channel produces it. The result is
// symmetrized and renormalized to unit trace; deviations land in diag.
HermitianMatrix build_density_matrix(const DecoherenceModel& model,
                                     const PhaseCoefficients& coeffs,
                                     Diagnostics* diag = nullptr,
                                     double clamp_tol = 1e-10);
HermitianMatrix build_density_matrix(const DecoherenceModel& model,
                                     Diagnostics* diag = nullptr,
                                     double clamp_tol = 1e-10);

// E_N = log2 || rho^{T1} ||, floored at zero.
NegativityResult log_negativity_exact(const SystemParams& params,
                                      const ExactOptions& opts = {});

// Exact pipeline with eta forced to 1.
NegativityResult pure_state_negativity(const SystemParams& params,
                                       const ExactOptions& opts = {});

// E_N(rho) - E_N(pure state), nonpositive up to numerical tolerance.
double entanglement_change(const SystemParams& params, const ExactOptions& opts = {});

}  // namespace ecs
