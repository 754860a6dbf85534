// holomon: epsilon sweeps, the figure2 preset and the invariant report.
//
//   holomon sweep   [--config file.ini] [--schemes monitored,reference] ...
//   holomon figure2 [--out figure2.csv] [--jobs N]
//   holomon check   [--quick] [--samples N]
//
// Exit codes: 0 ok, 1 failed check, 2 bad flags or config, 3 I/O failure.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "holomon/checks.hpp"
#include "holomon/sweep.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct GlobalFlags {
    std::string out;
    std::string method = "analytic";
    int steps_per_segment = 4096;
    std::string shape = "halfsine";
    double gaussian_width = 0.2;
    unsigned jobs = holomon::default_jobs();
};

struct SweepFlags {
    std::vector<std::string> schemes{"monitored", "reference", "composite"};
    double theta_pi = 0.0;
    double varphi_pi = 0.0;
    double phi_loop_pi = 0.0;
    double c1_re = 1.0 / std::sqrt(2.0), c1_im = 0.0;
    double c2_re = 1.0 / std::sqrt(2.0), c2_im = 0.0;
    double eps_min = 0.0, eps_max = 0.3;
    int eps_steps = 61;
    std::string error_mode = "amplitude";
};

holomon::PulseShape shape_from(const GlobalFlags& g) {
    return holomon::parse_shape(g.shape, g.gaussian_width);
}

void apply_globals(holomon::SweepConfig& cfg, const GlobalFlags& g) {
    cfg.method = holomon::parse_method(g.method);
    cfg.steps_per_segment = g.steps_per_segment;
    cfg.shape = shape_from(g);
    cfg.jobs = g.jobs;
    if (!g.out.empty()) cfg.output_path = g.out;
}

holomon::SweepConfig build_sweep_config(const GlobalFlags& g, const SweepFlags& s) {
    using holomon::kPi;
    holomon::SweepConfig cfg;
    cfg.schemes.clear();
    for (const auto& name : s.schemes) cfg.schemes.push_back(holomon::parse_scheme(name));
    cfg.theta = s.theta_pi * kPi;
    cfg.varphi_axis = s.varphi_pi * kPi;
    cfg.phi_loop = s.phi_loop_pi * kPi;
    cfg.c1 = {s.c1_re, s.c1_im};
    cfg.c2 = {s.c2_re, s.c2_im};
    cfg.eps_min = s.eps_min;
    cfg.eps_max = s.eps_max;
    cfg.eps_steps = s.eps_steps;
    if (s.error_mode == "amplitude") cfg.error_mode = holomon::ErrorSpec::Mode::AmplitudeScale;
    else if (s.error_mode == "time") cfg.error_mode = holomon::ErrorSpec::Mode::TimeStretch;
    else throw holomon::InvalidParams("unknown error mode '" + s.error_mode + "'");
    apply_globals(cfg, g);
    return cfg;
}

int write_sweep(holomon::SweepConfig cfg) {
    cfg = holomon::normalize_config(std::move(cfg), &std::cerr);
    const auto rows = holomon::run_sweep(cfg);
    holomon::write_file_atomic(cfg.output_path, holomon::format_csv(rows));
    std::cout << "wrote " << rows.size() << " rows to " << cfg.output_path << "\n";
    return 0;
}

int run_check(const GlobalFlags& g, bool quick, int samples, bool fault) {
    holomon::CheckOptions opt;
    opt.quick = quick;
    opt.samples = samples;
    opt.steps_per_segment = g.steps_per_segment;
    opt.inject_fault = fault;
    opt.jobs = g.jobs == 0 ? 1 : g.jobs;
    if (opt.steps_per_segment < 16) throw holomon::InvalidParams("steps_per_segment must be >= 16");
    const auto results = holomon::run_checks(opt);
    for (const auto& r : results) std::cout << holomon::format_check_line(r) << "\n";
    return holomon::all_passed(results) ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Error-monitored holonomic gates: sweeps, figure preset and invariant checks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "INI/TOML file; flags override its values");

    GlobalFlags g;
    app.add_option("--out", g.out, "Output CSV path");
    app.add_option("--method", g.method, "analytic, numeric or both")
        ->check(CLI::IsMember({"analytic", "numeric", "both"}));
    app.add_option("--steps-per-segment", g.steps_per_segment, "Integrator steps per pulse segment")
        ->check(CLI::Range(16, 1 << 22));
    app.add_option("--shape", g.shape, "constant, halfsine or gaussian")
        ->check(CLI::IsMember({"constant", "halfsine", "gaussian"}));
    app.add_option("--gaussian-width", g.gaussian_width, "Gaussian width as a fraction of the segment")
        ->check(CLI::Range(1e-3, 10.0));
    app.add_option("--jobs", g.jobs, "Worker threads (default: logical CPUs)")->check(CLI::Range(1u, 1024u));

    SweepFlags s;
    auto* sweep = app.add_subcommand("sweep", "Epsilon sweep to CSV");
    sweep->add_option("--schemes", s.schemes, "monitored,reference,composite,single-loop,dfs")
        ->delimiter(',');
    sweep->add_option("--theta-pi", s.theta_pi, "Axis polar angle in units of pi");
    sweep->add_option("--varphi-pi", s.varphi_pi, "Axis azimuth in units of pi");
    sweep->add_option("--phi-loop-pi", s.phi_loop_pi, "Single-loop phase in units of pi");
    sweep->add_option("--c1-re", s.c1_re);
    sweep->add_option("--c1-im", s.c1_im);
    sweep->add_option("--c2-re", s.c2_re);
    sweep->add_option("--c2-im", s.c2_im);
    sweep->add_option("--eps-min", s.eps_min);
    sweep->add_option("--eps-max", s.eps_max);
    sweep->add_option("--eps-steps", s.eps_steps);
    sweep->add_option("--error-mode", s.error_mode, "amplitude or time")
        ->check(CLI::IsMember({"amplitude", "time"}));

    auto* fig = app.add_subcommand("figure2", "Fixed preset: F, F' and the composite curve on [0, 0.3]");

    bool quick = false, fault = false;
    int samples = 100;
    auto* check = app.add_subcommand("check", "Run the invariant suites");
    check->add_flag("--quick", quick, "Coarse angle grid");
    check->add_option("--samples", samples, "Holonomy time samples")->check(CLI::Range(10, 1 << 20));
    check->add_flag("--inject-fault", fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sweep) return write_sweep(build_sweep_config(g, s));
        if (*fig) {
            holomon::SweepConfig cfg = holomon::figure2_config();
            apply_globals(cfg, g);
            return write_sweep(cfg);
        }
        if (*check) return run_check(g, quick, samples, fault);
    } catch (const holomon::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const holomon::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
