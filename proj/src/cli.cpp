#include "ecs/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecs/experiments.hpp"
#include "ecs/fock_oracle.hpp"
#include "ecs/records.hpp"

namespace ecs::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitFlags = 2;
constexpr int kExitSizeLimit = 3;
constexpr int kExitIo = 4;
constexpr int kExitMonotoneEdge = 5;
constexpr int kExitTruncation = 6;

struct CommonOpts {
    std::string output;  // empty or "-" means stdout
    std::string format = "csv";
    bool no_meta = false;
    int threads = 0;
    std::string config;
};

void attach_common(CLI::App* cmd, CommonOpts* common) {
    cmd->add_option("-o,--output", common->output, "Output path ('-' for stdout)");
    cmd->add_option("--format", common->format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--no-meta", common->no_meta, "Suppress the timestamp header line");
    cmd->add_option("--threads", common->threads,
                    "Worker parallelism cap (0 = machine parallelism)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--config", common->config,
                    "Config file with key=value lines ('#' comments)");
}

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Config keys are long option names; command-line flags take precedence,
// including over a config key they exclude (eta vs epsilon, alpha2 vs delta).
const char* excluded_partner(const std::string& key) {
    if (key == "eta") return "epsilon";
    if (key == "epsilon") return "eta";
    if (key == "alpha2") return "delta";
    if (key == "delta") return "alpha2";
    return nullptr;
}

bool expand_config_args(std::vector<std::string>& args, std::ostream& err) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty()) return true;

    std::ifstream file(path);
    if (!file) {
        err << "ecs: cannot read config file '" << path << "'\n";
        return false;
    }
    const auto given = [&](const std::string& key) {
        const std::string flag = "--" + key;
        for (const std::string& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };

    std::string line;
    while (std::getline(file, line)) {
        const std::string entry = trimmed(line);
        if (entry.empty() || entry[0] == '#') continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos) {
            err << "ecs: malformed config line '" << entry << "' (expected key=value)\n";
            return false;
        }
        const std::string key = trimmed(entry.substr(0, eq));
        const std::string value = trimmed(entry.substr(eq + 1));
        if (key.empty() || key == "config") continue;
        const char* partner = excluded_partner(key);
        if (given(key) || (partner && given(partner))) continue;
        args.push_back("--" + key);
        args.push_back(value);
    }
    return true;
}

std::string timestamp_line() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return std::string("generated=") + buf;
}

int write_payload(const std::string& body, const CommonOpts& common, std::ostream& out,
                  std::ostream& err) {
    if (common.output.empty() || common.output == "-") {
        out << body;
        return kExitOk;
    }
    std::ofstream file(common.output, std::ios::binary);
    if (!file || !(file << body) || !file.flush()) {
        err << "ecs: cannot write output file '" << common.output << "'\n";
        return kExitIo;
    }
    return kExitOk;
}

int emit(const std::vector<SweepRecord>& records, std::vector<std::string> meta,
         const CommonOpts& common, std::ostream& out, std::ostream& err) {
    if (!common.no_meta) meta.push_back(timestamp_line());
    std::string body;
    if (common.format == "json") {
        for (const auto& line : meta) err << "# " << line << '\n';
        body = records_to_json(records);
    } else {
        body = records_to_csv(records, meta);
    }
    return write_payload(body, common, out, err);
}

int exact_limit_from_env(std::ostream& err) {
    const char* env = std::getenv("ECS_EXACT_LIMIT");
    if (!env) return 50;
    try {
        const int v = std::stoi(env);
        if (v >= 2) return v;
    } catch (const std::exception&) {
    }
    err << "ecs: ignoring invalid ECS_EXACT_LIMIT value '" << env << "'\n";
    return 50;
}

// Shared resolution of (--eta | --epsilon) and (--alpha2 | --delta).
struct PointFlags {
    std::optional<double> eta;
    std::optional<double> epsilon;
    std::optional<double> alpha2;
    std::optional<double> delta;
};

void attach_eta(CLI::App* cmd, PointFlags* flags) {
    auto* eta = cmd->add_option("--eta", flags->eta, "Surviving photon fraction, (0, 1]");
    auto* eps = cmd->add_option("--epsilon", flags->epsilon, "Absorbed fraction, [0, 1)");
    eta->excludes(eps);
    eps->excludes(eta);
}

void attach_amplitude(CLI::App* cmd, PointFlags* flags) {
    auto* a2 = cmd->add_option("--alpha2", flags->alpha2, "Mean photons per mode |alpha|^2");
    auto* dl = cmd->add_option("--delta", flags->delta, "Adjacent-branch squared overlap");
    a2->excludes(dl);
    dl->excludes(a2);
}

double resolve_eta(const PointFlags& flags) {
    if (flags.eta) {
        if (!(*flags.eta > 0.0) || *flags.eta > 1.0)
            throw CLI::ValidationError("--eta", "must lie in (0, 1]");
        return *flags.eta;
    }
    if (flags.epsilon) {
        if (*flags.epsilon < 0.0 || !(*flags.epsilon < 1.0))
            throw CLI::ValidationError("--epsilon", "must lie in [0, 1)");
        return 1.0 - *flags.epsilon;
    }
    throw CLI::RequiredError("--eta or --epsilon");
}

double resolve_alpha2(const PointFlags& flags, int m) {
    if (flags.alpha2) {
        if (*flags.alpha2 < 0.0) throw CLI::ValidationError("--alpha2", "must be >= 0");
        return *flags.alpha2;
    }
    if (flags.delta) {
        if (!(*flags.delta > 0.0) || *flags.delta > 1.0)
            throw CLI::ValidationError("--delta", "must lie in (0, 1]");
        return alpha_from_delta(*flags.delta, m);
    }
    throw CLI::RequiredError("--alpha2 or --delta");
}

std::vector<std::string> base_meta(const std::string& command, const CommonOpts& common,
                                   int exact_limit) {
    std::vector<std::string> meta;
    meta.push_back("ecs " + command);
    meta.push_back("format=" + common.format);
    meta.push_back("exact_limit=" + std::to_string(exact_limit));
    meta.push_back("threads=" + (common.threads > 0 ? std::to_string(common.threads)
                                                    : std::string("auto")));
    return meta;
}

// ----------------------------- compute ------------------------------------

struct ComputeArgs {
    int m = 0;
    PointFlags point;
    std::string method = "auto";
};

int run_compute(const ComputeArgs& args, const CommonOpts& common, int exact_limit,
                std::ostream& out, std::ostream& err) {
    const double eta = resolve_eta(args.point);
    const double alpha2 = resolve_alpha2(args.point, args.m);
    const ExactOptions opts{exact_limit, 1e-10};

    const bool exact = args.method == "exact" ||
                       (args.method == "auto" && args.m <= opts.max_m);

    SweepRecord r;
    r.m = args.m;
    r.alpha2 = alpha2;
    r.eta = eta;
    r.epsilon = 1.0 - eta;
    r.delta = delta_from_alpha2(alpha2, args.m);
    r.delta_n = r.epsilon * alpha2;
    r.rate = entanglement_rate(args.m, r.delta_n);
    if (exact) {
        const SystemParams p{std::sqrt(alpha2), args.m, eta};
        r.e_n = log_negativity_exact(p, opts).e_n;
        r.delta_e_n = r.e_n - pure_state_negativity(p, opts).e_n;
        r.method = Method::exact;
    } else {
        r.e_n = log_negativity_approx(args.m, r.delta_n).e_n;
        r.delta_e_n = r.e_n - std::log2(static_cast<double>(args.m));
        r.method = Method::approx_f;
    }

    std::vector<std::string> meta = base_meta("compute", common, exact_limit);
    meta.push_back("m=" + std::to_string(args.m));
    meta.push_back("eta=" + format_double(eta));
    meta.push_back("alpha2=" + format_double(alpha2));
    meta.push_back("method=" + std::string(method_name(r.method)));
    return emit({r}, std::move(meta), common, out, err);
}

// ----------------------------- figure -------------------------------------

struct FigureArgs {
    std::string name;
    int points = 0;  // 0 = figure default
};

int run_figure(const FigureArgs& args, CommonOpts common, int exact_limit,
               std::ostream& out, std::ostream& err) {
    const ExactOptions opts{exact_limit, 1e-10};
    std::vector<SweepRecord> records;
    if (args.name == "fig1") {
        GridSpec grid = fig1_default_grid();
        if (args.points > 1) grid.points = args.points;
        records = fig1_rate_vs_epsilon({200, 2000}, {1e-2, 1e-4}, grid);
    } else if (args.name == "fig2") {
        GridSpec grid = fig2_default_grid();
        if (args.points > 1) grid.points = args.points;
        records = fig2_delta_en_vs_delta_n(grid, opts);
    } else if (args.name == "fig3") {
        GridSpec grid = fig3_default_grid();
        if (args.points > 1) grid.points = args.points;
        records = fig3_en_vs_epsilon({2, 3, 5, 20, 20000}, 1e-4, grid, opts);
    } else if (args.name == "fig4") {
        records = fig45_en_vs_alpha2({20, 30, 40}, {0.7, 0.49},
                                     args.points > 1 ? args.points : 101, opts);
    } else {
        records = fig45_en_vs_alpha2({2, 3, 4, 5, 6, 7, 8, 9, 10}, {0.7},
                                     args.points > 1 ? args.points : 101, opts);
    }
    if (common.output.empty()) common.output = args.name + ".csv";
    std::vector<std::string> meta = base_meta("figure " + args.name, common, exact_limit);
    meta.push_back("points=" + std::to_string(args.points > 1 ? args.points : 101));
    return emit(records, std::move(meta), common, out, err);
}

// ----------------------------- optimize -----------------------------------

struct OptimizeArgs {
    PointFlags point;
    std::optional<int> m;
    std::string m_range;
};

int run_optimize(const OptimizeArgs& args, const CommonOpts& common, int exact_limit,
                 std::ostream& out, std::ostream& err) {
    const double eta = resolve_eta(args.point);
    const ExactOptions opts{exact_limit, 1e-10};

    int m_opt = 0;
    double alpha2_opt = 0.0;
    double e_n_opt = 0.0;
    if (args.m && !args.m_range.empty())
        throw CLI::ValidationError("--m", "mutually exclusive with --m-range");
    if (args.m) {
        const AlphaOptimum res = optimize_alpha(*args.m, eta, std::nullopt, opts);
        m_opt = *args.m;
        alpha2_opt = res.alpha2_opt;
        e_n_opt = res.e_n_opt;
    } else if (!args.m_range.empty()) {
        const auto colon = args.m_range.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--m-range", "expected lo:hi");
        const int lo = std::stoi(args.m_range.substr(0, colon));
        const int hi = std::stoi(args.m_range.substr(colon + 1));
        const GlobalOptimum res = optimize_global(eta, {lo, hi}, opts);
        m_opt = res.m_opt;
        alpha2_opt = res.alpha2_opt;
        e_n_opt = res.e_n_opt;
    } else {
        throw CLI::RequiredError("--m or --m-range");
    }

    SweepRecord r;
    r.m = m_opt;
    r.alpha2 = alpha2_opt;
    r.eta = eta;
    r.epsilon = 1.0 - eta;
    r.delta = delta_from_alpha2(alpha2_opt, m_opt);
    r.delta_n = r.epsilon * alpha2_opt;
    r.e_n = e_n_opt;
    r.delta_e_n =
        e_n_opt -
        pure_state_negativity(SystemParams{std::sqrt(alpha2_opt), m_opt, 1.0}, opts).e_n;
    r.rate = entanglement_rate(m_opt, r.delta_n);
    r.method = Method::exact;

    std::vector<std::string> meta = base_meta("optimize", common, exact_limit);
    meta.push_back("eta=" + format_double(eta));
    meta.push_back(args.m ? "m=" + std::to_string(*args.m) : "m_range=" + args.m_range);
    return emit({r}, std::move(meta), common, out, err);
}

// ----------------------------- oracle-check -------------------------------

struct OracleArgs {
    int m = 0;
    double alpha2 = 0.0;
    PointFlags point;
};

int run_oracle_check(const OracleArgs& args, const CommonOpts& common, int exact_limit,
                     std::ostream& out, std::ostream& err) {
    if (args.m < 2 || args.m > 5) {
        err << "ecs: --m must lie in [2, 5] for oracle-check\n";
        return kExitFlags;
    }
    if (!(args.alpha2 > 0.0) || args.alpha2 > 4.0) {
        err << "ecs: --alpha2 must lie in (0, 4] for oracle-check\n";
        return kExitFlags;
    }
    const double eta = resolve_eta(args.point);
    const ExactOptions opts{exact_limit, 1e-10};
    const SystemParams p{std::sqrt(args.alpha2), args.m, eta};

    const double exact = log_negativity_exact(p, opts).e_n;
    const int n_max = default_n_max(args.alpha2);
    TwoModeDensity rho = density_from_state(assemble_state_closed_form(p, n_max));
    if (eta < 1.0) rho = loss_channel(rho, eta);
    const double oracle = log_negativity_fock(rho);
    const double diff = std::abs(exact - oracle);

    std::string body = "m,alpha2,eta,n_max,e_n_exact,e_n_oracle,abs_diff\n";
    body += std::to_string(args.m) + ',' + format_double(args.alpha2) + ',' +
            format_double(eta) + ',' + std::to_string(n_max) + ',' +
            format_double(exact) + ',' + format_double(oracle) + ',' +
            format_double(diff) + '\n';
    const int io = write_payload(body, common, out, err);
    if (io != kExitOk) return io;
    return diff <= 1e-3 ? kExitOk : kExitCheckFailed;
}

// ----------------------------- fit-dprime ---------------------------------

struct FitArgs {
    int m = 2000;
    std::vector<double> deltas;
    double eps_lo = 1e-3;
    double eps_hi = 3e-3;
    int eps_points = 8;
};

int run_fit_dprime(const FitArgs& args, const CommonOpts& common, int exact_limit,
                   std::ostream& out, std::ostream& err) {
    std::vector<DPrimePoint> grid;
    const std::vector<double> deltas =
        args.deltas.empty() ? std::vector<double>{1e-2, 1e-3, 1e-4} : args.deltas;
    const std::vector<double> eps =
        make_grid({args.eps_lo, args.eps_hi, args.eps_points, true});
    for (double delta : deltas)
        for (double e : eps) grid.push_back({e, delta, args.m});
    const double d_prime = fit_d_prime(grid);

    std::vector<std::string> meta = base_meta("fit-dprime", common, exact_limit);
    meta.push_back("m=" + std::to_string(args.m));
    meta.push_back("grid_points=" + std::to_string(grid.size()));
    if (!common.no_meta) meta.push_back(timestamp_line());
    std::string body;
    for (const auto& line : meta) body += "# " + line + '\n';
    body += "d_prime\n" + format_double(d_prime) + '\n';
    return write_payload(body, common, out, err);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Logarithmic negativity of lossy multi-branch entangled coherent states"};
    app.require_subcommand(1);

    CommonOpts common;
    ComputeArgs compute_args;
    FigureArgs figure_args;
    OptimizeArgs optimize_args;
    OracleArgs oracle_args;
    FitArgs fit_args;

    auto* compute = app.add_subcommand("compute", "E_N at a single parameter point");
    compute->add_option("--m", compute_args.m, "Branch count m")->required();
    attach_eta(compute, &compute_args.point);
    attach_amplitude(compute, &compute_args.point);
    compute->add_option("--method", compute_args.method, "exact|approx|auto")
        ->check(CLI::IsMember({"exact", "approx", "auto"}));
    attach_common(compute, &common);

    auto* figure = app.add_subcommand("figure", "Regenerate a parameter-study dataset");
    figure->add_option("name", figure_args.name, "fig1..fig5")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5"}));
    figure->add_option("--points", figure_args.points, "Grid points per curve");
    attach_common(figure, &common);

    auto* optimize = app.add_subcommand("optimize", "Optimum |alpha|^2 (and m) for fixed eta");
    attach_eta(optimize, &optimize_args.point);
    optimize->add_option("--m", optimize_args.m, "Single m to optimize");
    optimize->add_option("--m-range", optimize_args.m_range, "Range lo:hi to optimize over");
    attach_common(optimize, &common);

    auto* oracle = app.add_subcommand("oracle-check",
                                      "Compare the exact pipeline against the Fock oracle");
    oracle->add_option("--m", oracle_args.m, "Branch count (2..5)")->required();
    oracle->add_option("--alpha2", oracle_args.alpha2, "Mean photons per mode (<= 4)")
        ->required();
    attach_eta(oracle, &oracle_args.point);
    attach_common(oracle, &common);

    auto* fit = app.add_subcommand("fit-dprime", "Least-squares cutoff constant");
    fit->add_option("--m", fit_args.m, "Branch count for the targets");
    fit->add_option("--delta", fit_args.deltas, "Overlap values (repeatable)");
    fit->add_option("--eps-lo", fit_args.eps_lo, "Smallest epsilon");
    fit->add_option("--eps-hi", fit_args.eps_hi, "Largest epsilon");
    fit->add_option("--eps-points", fit_args.eps_points, "Epsilon grid points");
    attach_common(fit, &common);

    std::vector<std::string> args(argv + 1, argv + argc);
    if (!expand_config_args(args, err)) return kExitFlags;
    std::vector<const char*> argv2;
    argv2.push_back(argc > 0 ? argv[0] : "ecs");
    for (const std::string& a : args) argv2.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv2.size()), argv2.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "ecs: " << e.what() << '\n';
        return kExitFlags;
    }

    const int exact_limit = exact_limit_from_env(err);
    set_max_threads(common.threads);

    try {
        if (compute->parsed())
            return run_compute(compute_args, common, exact_limit, out, err);
        if (figure->parsed()) return run_figure(figure_args, common, exact_limit, out, err);
        if (optimize->parsed())
            return run_optimize(optimize_args, common, exact_limit, out, err);
        if (oracle->parsed())
            return run_oracle_check(oracle_args, common, exact_limit, out, err);
        if (fit->parsed()) return run_fit_dprime(fit_args, common, exact_limit, out, err);
    } catch (const CLI::Error& e) {
        err << "ecs: " << e.what() << '\n';
        return kExitFlags;
    } catch (const ExactSizeLimitError& e) {
        err << "ecs: " << e.what() << '\n';
        return kExitSizeLimit;
    } catch (const MonotoneEdgeError& e) {
        err << "ecs: " << e.what() << '\n';
        return kExitMonotoneEdge;
    } catch (const TruncationError& e) {
        err << "ecs: " << e.what() << '\n';
        return kExitTruncation;
    } catch (const std::invalid_argument& e) {
        err << "ecs: " << e.what() << '\n';
        return kExitFlags;
    } catch (const std::exception& e) {
        err << "ecs: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitFlags;
}

}  // namespace ecs::cli
