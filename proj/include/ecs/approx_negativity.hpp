#pragma once

#include <numbers>
#include <vector>

#include "ecs/exact_negativity.hpp"

namespace ecs {

// Default cutoff constant D'; the fit over the validity regime lands near pi.
inline constexpr double kDefaultDPrime = std::numbers::pi;

// F = sum_{k=1}^{m-1} exp(-delta_n |exp(2 pi i k/m) - 1|^2), in (0, m-1].
double f_sum(int m, double delta_n);

// Nearly-orthogonal-branch approximation E_N ~ log2(1 + F). Depends on
// (m, delta_n) only.
NegativityResult log_negativity_approx(int m, double delta_n);

// First-order expansion log2(m) - eps |alpha|^2 (2/ln 2)(m-1)/m, floored at 0.
double small_loss_expansion(int m, double alpha2, double epsilon);

// Cutoff estimate log2(1 + sqrt(d_prime/(eps |ln delta|))).
double cutoff_estimate(double epsilon, double delta, double d_prime = kDefaultDPrime);

struct DPrimePoint {
    double epsilon = 0.0;
    double delta = 0.0;
    int m = 0;
};

// Least-squares fit of d_prime in the cutoff form against supplied targets.
double fit_d_prime_to(const std::vector<DPrimePoint>& grid,
                      const std::vector<double>& targets);

// Same, with targets taken from log_negativity_approx at each grid point.
double fit_d_prime(const std::vector<DPrimePoint>& grid);

// Grid in the corner of the validity regime where the cutoff derivation
// holds (many terms before the cutoff): eps in [1e-3, 3e-3] log-spaced,
// delta in {1e-2, 1e-3, 1e-4}, m = 2000.
std::vector<DPrimePoint> default_d_prime_grid();

// Analytic d/d(delta_n) of log_negativity_approx:
//   -(sum_k c_k e^{-delta_n c_k}) / ((1 + F) ln 2)
double entanglement_rate(int m, double delta_n);

}  // namespace ecs
