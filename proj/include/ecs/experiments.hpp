#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ecs/approx_negativity.hpp"
#include "ecs/exact_negativity.hpp"

namespace ecs {

// Worker-parallelism cap for sweeps and coarse optimizer grids.
// 0 means machine parallelism.
void set_max_threads(int n);
int max_threads();

// One row of a parameter study; self-describes its full parameter point.
struct SweepRecord {
    int m = 0;
    double alpha2 = 0.0;
    double eta = 1.0;
    double epsilon = 0.0;
    double delta = 1.0;
    double delta_n = 0.0;
    double e_n = 0.0;
    double delta_e_n = 0.0;
    double rate = 0.0;  // analytic d E_N/d(Delta N) at this point
    Method method = Method::exact;
};

struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    int points = 101;
    bool log10scale = false;
};

std::vector<double> make_grid(const GridSpec& spec);

enum class SweepVariable { epsilon, delta_n, alpha2, m };
enum class MethodChoice { exact, approx, auto_select };

struct SweepSpec {
    SweepVariable variable = SweepVariable::epsilon;
    GridSpec range;
    int m = 2;
    double eta = 1.0;                  // fixed eta (ignored for epsilon/delta_n sweeps)
    std::optional<double> alpha2;      // one of alpha2/delta fixes the amplitude
    std::optional<double> delta;
    MethodChoice method = MethodChoice::auto_select;

    void validate() const;
};

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, const ExactOptions& opts = {});

// Figure datasets. Grids are configurable; the defaults used by the CLI are
// exposed so tests and reruns stay aligned.
GridSpec fig1_default_grid();   // log10(eps) in [-6, -0.3]
GridSpec fig2_default_grid();   // Delta N in [0, 3]
GridSpec fig3_default_grid();   // eps in [1e-3, 0.9]

std::vector<SweepRecord> fig1_rate_vs_epsilon(const std::vector<int>& m_list,
                                              const std::vector<double>& delta_list,
                                              const GridSpec& eps_grid);

// Five curves: (m=20, delta in {0.2, 0.01, 1e-4}) exact and
// (m in {200, 2000}, delta=1e-4) approximate.
std::vector<SweepRecord> fig2_delta_en_vs_delta_n(const GridSpec& delta_n_grid,
                                                  const ExactOptions& opts = {});

std::vector<SweepRecord> fig3_en_vs_epsilon(const std::vector<int>& m_list, double delta,
                                            const GridSpec& eps_grid,
                                            const ExactOptions& opts = {});

// E_N vs |alpha|^2, one curve per (m, eta); exact method only.
std::vector<SweepRecord> fig45_en_vs_alpha2(const std::vector<int>& m_list,
                                            const std::vector<double>& eta_list,
                                            int points, const ExactOptions& opts = {});

// Raised when the coarse scan finds no interior maximum in |alpha|^2
// (e.g. eta = 1, where E_N saturates monotonically).
class MonotoneEdgeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AlphaOptimum {
    double alpha2_opt = 0.0;
    double e_n_opt = 0.0;
};

std::pair<double, double> default_alpha2_bracket(int m);

// Coarse 64-point log-spaced scan of the bracket followed by golden-section
// refinement to |alpha|^2 resolution 1e-3.
AlphaOptimum optimize_alpha(int m, double eta,
                            std::optional<std::pair<double, double>> bracket = std::nullopt,
                            const ExactOptions& opts = {});

struct GlobalOptimum {
    int m_opt = 0;
    double alpha2_opt = 0.0;
    double e_n_opt = 0.0;
};

// optimize_alpha per m; argmax over m, ties toward smaller m.
GlobalOptimum optimize_global(double eta, std::pair<int, int> m_range,
                              const ExactOptions& opts = {});

}  // namespace ecs
