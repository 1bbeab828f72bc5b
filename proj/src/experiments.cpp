#include "ecs/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <thread>

#include "ecs/optimize1d.hpp"

namespace ecs {

namespace {

std::atomic<int> g_max_threads{0};

int worker_count(int jobs) {
    int cap = g_max_threads.load();
    if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap <= 0) cap = 1;
    return std::min(cap, jobs);
}

// Index-parallel loop; results must be written by index so ordering is
// deterministic regardless of completion order.
void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = worker_count(n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

void set_max_threads(int n) { g_max_threads.store(n); }
int max_threads() { return g_max_threads.load(); }

std::vector<double> make_grid(const GridSpec& spec) {
    if (spec.points < 2) throw std::invalid_argument("make_grid: points must be >= 2");
    if (!(spec.lo < spec.hi)) throw std::invalid_argument("make_grid: lo must be < hi");
    std::vector<double> out(spec.points);
    if (spec.log10scale && !(spec.lo > 0.0))
        throw std::invalid_argument("make_grid: log scale requires lo > 0");
    const double a = spec.log10scale ? std::log10(spec.lo) : spec.lo;
    const double b = spec.log10scale ? std::log10(spec.hi) : spec.hi;
    for (int i = 0; i < spec.points; ++i) {
        const double t = a + (b - a) * i / (spec.points - 1);
        out[i] = spec.log10scale ? std::pow(10.0, t) : t;
    }
    return out;
}

void SweepSpec::validate() const {
    if (range.points < 2) throw std::invalid_argument("SweepSpec: points must be >= 2");
    if (!(range.lo < range.hi)) throw std::invalid_argument("SweepSpec: lo must be < hi");
    if (alpha2 && delta)
        throw std::invalid_argument("SweepSpec: alpha2 and delta are mutually exclusive");
}

namespace {

bool use_exact(MethodChoice choice, int m, const ExactOptions& opts) {
    switch (choice) {
        case MethodChoice::exact: return true;
        case MethodChoice::approx: return false;
        case MethodChoice::auto_select: return m <= opts.max_m;
    }
    return true;
}

SweepRecord make_record(int m, double alpha2, double eta, bool exact,
                        double pure_e_n, const ExactOptions& opts) {
    SweepRecord r;
    r.m = m;
    r.alpha2 = alpha2;
    r.eta = eta;
    r.epsilon = 1.0 - eta;
    r.delta = delta_from_alpha2(alpha2, m);
    r.delta_n = r.epsilon * alpha2;
    r.rate = entanglement_rate(m, r.delta_n);
    if (exact) {
        const SystemParams p{std::sqrt(alpha2), m, eta};
        r.e_n = log_negativity_exact(p, opts).e_n;
        r.method = Method::exact;
    } else {
        r.e_n = log_negativity_approx(m, r.delta_n).e_n;
        r.method = Method::approx_f;
    }
    r.delta_e_n = r.e_n - pure_e_n;
    return r;
}

double pure_value(int m, double alpha2, bool exact, const ExactOptions& opts) {
    if (!exact) return std::log2(static_cast<double>(m));
    return pure_state_negativity(SystemParams{std::sqrt(alpha2), m, 1.0}, opts).e_n;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, const ExactOptions& opts) {
    spec.validate();
    const std::vector<double> grid = make_grid(spec.range);
    std::vector<SweepRecord> out(grid.size());

    const bool amplitude_fixed =
        spec.variable == SweepVariable::epsilon || spec.variable == SweepVariable::delta_n;

    if (spec.variable != SweepVariable::alpha2 && !spec.alpha2 && !spec.delta)
        throw std::invalid_argument("run_sweep: sweep needs alpha2 or delta");

    double fixed_alpha2 = 0.0;
    double fixed_pure = 0.0;
    if (amplitude_fixed) {
        fixed_alpha2 = spec.delta ? alpha_from_delta(*spec.delta, spec.m) : *spec.alpha2;
        fixed_pure = pure_value(spec.m, fixed_alpha2,
                                use_exact(spec.method, spec.m, opts), opts);
    }

    parallel_for(static_cast<int>(grid.size()), [&](int i) {
        const double x = grid[i];
        int m = spec.m;
        double alpha2 = fixed_alpha2;
        double eta = spec.eta;
        switch (spec.variable) {
            case SweepVariable::epsilon:
                eta = 1.0 - x;
                break;
            case SweepVariable::delta_n:
                eta = 1.0 - x / alpha2;
                break;
            case SweepVariable::alpha2:
                alpha2 = x;
                break;
            case SweepVariable::m:
                m = static_cast<int>(std::lround(x));
                if (spec.delta)
                    alpha2 = alpha_from_delta(*spec.delta, m);
                else if (spec.alpha2)
                    alpha2 = *spec.alpha2;
                break;
        }
        const bool exact = use_exact(spec.method, m, opts);
        const double pure = amplitude_fixed ? fixed_pure : pure_value(m, alpha2, exact, opts);
        out[i] = make_record(m, alpha2, eta, exact, pure, opts);
    });
    return out;
}

GridSpec fig1_default_grid() { return GridSpec{1e-6, std::pow(10.0, -0.3), 101, true}; }
GridSpec fig2_default_grid() { return GridSpec{0.0, 3.0, 101, false}; }
GridSpec fig3_default_grid() { return GridSpec{1e-3, 0.9, 101, false}; }

std::vector<SweepRecord> fig1_rate_vs_epsilon(const std::vector<int>& m_list,
                                              const std::vector<double>& delta_list,
                                              const GridSpec& eps_grid) {
    std::vector<SweepRecord> out;
    const std::vector<double> eps = make_grid(eps_grid);
    for (int m : m_list)
        for (double delta : delta_list) {
            const double alpha2 = alpha_from_delta(delta, m);
            for (double e : eps) {
                SweepRecord r;
                r.m = m;
                r.alpha2 = alpha2;
                r.eta = 1.0 - e;
                r.epsilon = e;
                r.delta = delta_from_alpha2(alpha2, m);
                r.delta_n = e * alpha2;
                r.e_n = log_negativity_approx(m, r.delta_n).e_n;
                r.delta_e_n = r.e_n - std::log2(static_cast<double>(m));
                r.rate = entanglement_rate(m, r.delta_n);
                r.method = Method::approx_f;
                out.push_back(r);
            }
        }
    return out;
}

std::vector<SweepRecord> fig2_delta_en_vs_delta_n(const GridSpec& delta_n_grid,
                                                  const ExactOptions& opts) {
    struct Config {
        int m;
        double delta;
        MethodChoice method;
    };
    const std::vector<Config> configs = {
        {20, 0.2, MethodChoice::exact},   {20, 0.01, MethodChoice::exact},
        {20, 1e-4, MethodChoice::exact},  {200, 1e-4, MethodChoice::approx},
        {2000, 1e-4, MethodChoice::approx},
    };
    std::vector<SweepRecord> out;
    for (const auto& cfg : configs) {
        SweepSpec spec;
        spec.variable = SweepVariable::delta_n;
        spec.range = delta_n_grid;
        spec.range.lo = std::max(delta_n_grid.lo, 0.0);
        spec.m = cfg.m;
        spec.delta = cfg.delta;
        spec.method = cfg.method;
        std::vector<SweepRecord> part = run_sweep(spec, opts);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<SweepRecord> fig3_en_vs_epsilon(const std::vector<int>& m_list, double delta,
                                            const GridSpec& eps_grid,
                                            const ExactOptions& opts) {
    std::vector<SweepRecord> out;
    for (int m : m_list) {
        SweepSpec spec;
        spec.variable = SweepVariable::epsilon;
        spec.range = eps_grid;
        spec.m = m;
        spec.delta = delta;
        spec.method = MethodChoice::auto_select;
        std::vector<SweepRecord> part = run_sweep(spec, opts);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<SweepRecord> fig45_en_vs_alpha2(const std::vector<int>& m_list,
                                            const std::vector<double>& eta_list,
                                            int points, const ExactOptions& opts) {
    std::vector<SweepRecord> out;
    for (int m : m_list) {
        const auto [lo, hi] = default_alpha2_bracket(m);
        const std::vector<double> grid = make_grid({lo, hi, points, false});

        // The pure-state reference depends on (m, alpha2) only; share it
        // across the eta curves.
        std::vector<double> pure(grid.size());
        parallel_for(static_cast<int>(grid.size()), [&](int i) {
            pure[i] = pure_value(m, grid[i], true, opts);
        });

        for (double eta : eta_list) {
            std::vector<SweepRecord> part(grid.size());
            parallel_for(static_cast<int>(grid.size()), [&](int i) {
                part[i] = make_record(m, grid[i], eta, true, pure[i], opts);
            });
            out.insert(out.end(), part.begin(), part.end());
        }
    }
    return out;
}

std::pair<double, double> default_alpha2_bracket(int m) {
    return {0.05, 4.0 * m * m * std::log(10.0) / (4.0 * std::numbers::pi * std::numbers::pi)};
}

AlphaOptimum optimize_alpha(int m, double eta,
                            std::optional<std::pair<double, double>> bracket,
                            const ExactOptions& opts) {
    const auto [lo, hi] = bracket ? *bracket : default_alpha2_bracket(m);
    if (!(lo > 0.0) || !(lo < hi))
        throw std::invalid_argument("optimize_alpha: invalid bracket");

    auto e_n_at = [&](double alpha2) {
        return log_negativity_exact(SystemParams{std::sqrt(alpha2), m, eta}, opts).e_n;
    };

    constexpr int kCoarsePoints = 64;
    const std::vector<double> grid = make_grid({lo, hi, kCoarsePoints, true});
    std::vector<double> vals(grid.size());
    parallel_for(kCoarsePoints, [&](int i) { vals[i] = e_n_at(grid[i]); });

    int best = 0;
    for (int i = 1; i < kCoarsePoints; ++i)
        if (vals[i] > vals[best]) best = i;

    const double plateau_tol = 1e-9;
    if (best == 0 || best == kCoarsePoints - 1 ||
        vals[kCoarsePoints - 1] >= vals[best] - plateau_tol ||
        vals[0] >= vals[best] - plateau_tol)
        throw MonotoneEdgeError(
            "optimize_alpha: no interior maximum in |alpha|^2 over the bracket "
            "(E_N is monotone to the edge, e.g. eta = 1)");

    const auto [x, v] =
        golden_section_maximize(e_n_at, grid[best - 1], grid[best + 1], 1e-3);
    return AlphaOptimum{x, v};
}

GlobalOptimum optimize_global(double eta, std::pair<int, int> m_range,
                              const ExactOptions& opts) {
    if (m_range.first < 2 || m_range.second < m_range.first)
        throw std::invalid_argument("optimize_global: invalid m range");
    GlobalOptimum best;
    for (int m = m_range.first; m <= m_range.second; ++m) {
        const AlphaOptimum cand = optimize_alpha(m, eta, std::nullopt, opts);
        if (best.m_opt == 0 || cand.e_n_opt > best.e_n_opt)
            best = GlobalOptimum{m, cand.alpha2_opt, cand.e_n_opt};
    }
    return best;
}

}  // namespace ecs
