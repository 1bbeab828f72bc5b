#pragma once

#include <stdexcept>

#include "ecs/model_params.hpp"
#include "ecs/numerics.hpp"

namespace ecs {

// Brute-force check of the Gram-route pipeline in a truncated photon-number
// basis. Deliberately naive; never used by the production path.

class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Single mode, amplitudes for n = 0..n_max.
struct FockVector {
    int n_max = 0;
    Vector amplitudes;
};

// Two modes, length (n_max+1)^2, composite index n1*(n_max+1) + n2.
struct TwoModeFockVector {
    int n_max = 0;
    Vector amplitudes;
};

struct TwoModeDensity {
    int n_max = 0;
    Matrix entries;
};

// ceil(2|alpha|^2 + 8 sqrt(2|alpha|^2) + 10): Poisson tail below 1e-10 for
// the pre-beamsplitter mode, which carries mean 2|alpha|^2.
int default_n_max(double alpha2);

// amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!); rejects truncations whose
// norm deficit exceeds tail_tol.
FockVector coherent_fock(Complex alpha, int n_max, double tail_tol = 1e-10);

// sum_q f_q |Phi_q> (x) |Phi_q>, normalized through the branch Gram matrix.
// m = 1 is allowed here (single-branch product state).
TwoModeFockVector assemble_state_closed_form(Complex alpha, int m, int n_max,
                                             double tail_tol = 1e-10);
TwoModeFockVector assemble_state_closed_form(const SystemParams& params, int n_max,
                                             double tail_tol = 1e-10);

// |sqrt(2) alpha> through the number-dependent Kerr phases, then a 50/50
// beamsplitter against vacuum. Matches the closed form up to a global phase.
TwoModeFockVector kerr_beamsplitter_state(Complex alpha, int m, int n_max,
                                          double tail_tol = 1e-10);
TwoModeFockVector kerr_beamsplitter_state(const SystemParams& params, int n_max,
                                          double tail_tol = 1e-10);

TwoModeDensity density_from_state(const TwoModeFockVector& state);

// Amplitude-damping Kraus operator K_j on a dim-dimensional mode:
// <n-j|K_j|n> = sqrt(C(n,j) (1-eta)^j eta^(n-j)).
Matrix damping_kraus(int j, double eta, int dim);

// Applies the Kraus family to each mode independently.
TwoModeDensity loss_channel(const TwoModeDensity& rho, double eta);

// Partial transpose over the first mode in the number basis, then
// log2 of the absolute eigenvalue sum, floored at zero.
double log_negativity_fock(const TwoModeDensity& rho);

// Diagnostics for tests: photon-number marginal and mean of one mode.
RealVector number_marginal(const TwoModeFockVector& state, int mode);
double mean_photons(const TwoModeDensity& rho, int mode);

}  // namespace ecs
