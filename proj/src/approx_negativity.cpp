#include "ecs/approx_negativity.hpp"

#include <cmath>
#include <stdexcept>

#include "ecs/optimize1d.hpp"

namespace ecs {

double f_sum(int m, double delta_n) {
    if (m < 2) throw std::invalid_argument("f_sum: m must be >= 2");
    if (delta_n < 0.0) throw std::invalid_argument("f_sum: delta_n must be >= 0");
    double acc = 0.0;
    for (int k = 1; k < m; ++k) acc += std::exp(-delta_n * chord_sq(m, k));
    return acc;
}

NegativityResult log_negativity_approx(int m, double delta_n) {
    NegativityResult res;
    res.method = Method::approx_f;
    res.e_n = std::max(std::log2(1.0 + f_sum(m, delta_n)), 0.0);
    return res;
}

double small_loss_expansion(int m, double alpha2, double epsilon) {
    const double e = std::log2(static_cast<double>(m)) -
                     epsilon * alpha2 * (2.0 / std::numbers::ln2) * (m - 1.0) / m;
    return std::max(e, 0.0);
}

double cutoff_estimate(double epsilon, double delta, double d_prime) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("cutoff_estimate: epsilon must be > 0");
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("cutoff_estimate: delta must lie in (0, 1)");
    if (!(d_prime > 0.0)) throw std::invalid_argument("cutoff_estimate: d_prime must be > 0");
    return std::log2(1.0 + std::sqrt(d_prime / (epsilon * std::abs(std::log(delta)))));
}

double fit_d_prime_to(const std::vector<DPrimePoint>& grid,
                      const std::vector<double>& targets) {
    if (grid.size() < 3)
        throw std::invalid_argument("fit_d_prime: need at least 3 grid points");
    if (grid.size() != targets.size())
        throw std::invalid_argument("fit_d_prime: grid/target size mismatch");
    auto sse = [&](double dp) {
        double acc = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double r = cutoff_estimate(grid[i].epsilon, grid[i].delta, dp) - targets[i];
            acc += r * r;
        }
        return acc;
    };
    return golden_section_minimize(sse, 1e-6, 64.0, 1e-9).first;
}

double fit_d_prime(const std::vector<DPrimePoint>& grid) {
    std::vector<double> targets;
    targets.reserve(grid.size());
    for (const auto& p : grid) {
        const double alpha2 = alpha_from_delta(p.delta, p.m);
        targets.push_back(log_negativity_approx(p.m, p.epsilon * alpha2).e_n);
    }
    return fit_d_prime_to(grid, targets);
}

std::vector<DPrimePoint> default_d_prime_grid() {
    std::vector<DPrimePoint> grid;
    const int n_eps = 8;
    const double lo = std::log(1e-3);
    const double hi = std::log(3e-3);
    for (double delta : {1e-2, 1e-3, 1e-4})
        for (int i = 0; i < n_eps; ++i)
            grid.push_back({std::exp(lo + (hi - lo) * i / (n_eps - 1)), delta, 2000});
    return grid;
}

double entanglement_rate(int m, double delta_n) {
    if (delta_n < 0.0) throw std::invalid_argument("entanglement_rate: delta_n must be >= 0");
    double f = 0.0;
    double df = 0.0;
    for (int k = 1; k < m; ++k) {
        const double c = chord_sq(m, k);
        const double t = std::exp(-delta_n * c);
        f += t;
        df += c * t;
    }
    return -df / ((1.0 + f) * std::numbers::ln2);
}

}  // namespace ecs
