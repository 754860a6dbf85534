#pragma once

// Epsilon sweeps and their CSV output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "holomon/measure.hpp"
#include "holomon/metrics.hpp"
#include "holomon/parallel.hpp"

namespace holomon {

enum class MethodChoice { Analytic, Numeric, Both };

inline MethodChoice parse_method(std::string_view name) {
    if (name == "analytic") return MethodChoice::Analytic;
    if (name == "numeric") return MethodChoice::Numeric;
    if (name == "both") return MethodChoice::Both;
    throw InvalidParams("unknown method '" + std::string(name) + "'");
}

struct SweepConfig {
    std::vector<SchemeKind> schemes{SchemeKind::Monitored, SchemeKind::Reference,
                                    SchemeKind::Composite};
    double theta = 0.0;
    double varphi_axis = 0.0;
    double phi_loop = 0.0;
    cplx c1{1.0 / std::sqrt(2.0), 0.0};
    cplx c2{1.0 / std::sqrt(2.0), 0.0};
    double eps_min = 0.0;
    double eps_max = 0.3;
    int eps_steps = 61;
    PulseShape shape = PulseShape::half_sine();
    ErrorSpec::Mode error_mode = ErrorSpec::Mode::AmplitudeScale;
    MethodChoice method = MethodChoice::Analytic;
    int steps_per_segment = 4096;
    std::string output_path = "sweep.csv";
    unsigned jobs = default_jobs();
};

// Amplitudes off by less than this are renormalized with a warning.
inline constexpr double kAmplitudeRenormLimit = 1e-6;

/// Validates the config; renormalizes slightly-off amplitudes, writing a
/// warning to `warn` when given. Throws InvalidParams otherwise.
inline SweepConfig normalize_config(SweepConfig cfg, std::ostream* warn = nullptr) {
    if (cfg.schemes.empty()) throw InvalidParams("no schemes selected");
    if (!(cfg.eps_min <= cfg.eps_max)) throw InvalidParams("eps_min must not exceed eps_max");
    if (cfg.eps_steps < 2) throw InvalidParams("eps_steps must be >= 2");
    if (cfg.eps_min <= -1.0 || cfg.eps_max >= 1.0) {
        throw InvalidParams("epsilon range must lie inside (-1, 1)");
    }
    if (cfg.steps_per_segment < 16) throw InvalidParams("steps_per_segment must be >= 16");
    if (cfg.jobs == 0) cfg.jobs = 1;
    const double n2 = std::norm(cfg.c1) + std::norm(cfg.c2);
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) >= kAmplitudeRenormLimit) {
        throw InvalidParams("|c1|^2 + |c2|^2 = " + std::to_string(n2) + " is not 1");
    }
    if (n2 != 1.0) {
        const double s = std::sqrt(n2);
        cfg.c1 /= s;
        cfg.c2 /= s;
        if (warn && std::abs(n2 - 1.0) > tol::kNormalized) {
            *warn << "warning: input amplitudes renormalized (|c1|^2 + |c2|^2 was " << n2 << ")\n";
        }
    }
    // Surfaces angle errors now rather than in a worker thread.
    canonical(SchemeParams{cfg.schemes.front(), cfg.theta, cfg.varphi_axis, cfg.phi_loop, cfg.c1, cfg.c2});
    return cfg;
}

inline std::vector<double> epsilon_grid(double lo, double hi, int steps) {
    std::vector<double> g(steps);
    for (int i = 0; i < steps; ++i) {
        g[i] = (i == steps - 1) ? hi : lo + (hi - lo) * i / (steps - 1);
    }
    return g;
}

struct SweepRow {
    double eps = 0.0;
    SchemeKind scheme = SchemeKind::Monitored;
    double theta = 0.0;
    double varphi_axis = 0.0;
    double phi_loop = 0.0;
    std::optional<double> fidelity_closed;
    std::optional<double> fidelity_pipeline;
    std::optional<double> success_probability;
    std::optional<double> closed_pipeline_gap;
};

inline SweepRow evaluate_point(const SweepConfig& cfg, SchemeKind scheme, double eps) {
    const SchemeParams p = canonical({scheme, cfg.theta, cfg.varphi_axis, cfg.phi_loop, cfg.c1, cfg.c2});
    SweepRow row{eps, scheme, p.theta, p.varphi_axis, p.phi_loop, {}, {}, {}, {}};
    if (cfg.method != MethodChoice::Numeric) row.fidelity_closed = fidelity_closed(p, eps);

    PipelineOptions opts;
    opts.realization.shape = cfg.shape;
    opts.realization.error.mode = cfg.error_mode;
    opts.steps_per_segment = cfg.steps_per_segment;
    const Method m = cfg.method == MethodChoice::Analytic ? Method::Analytic : Method::Numeric;
    const PipelineReport rep = run_pipeline(p, eps, m, opts);
    row.fidelity_pipeline = rep.fidelity_vs_target;
    row.success_probability = rep.success_probability;
    if (row.fidelity_closed) {
        row.closed_pipeline_gap = std::abs(*row.fidelity_closed - *row.fidelity_pipeline);
    }
    return row;
}

/// Rows come back in epsilon-then-scheme order whatever the pool width.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    const std::vector<double> eps = epsilon_grid(cfg.eps_min, cfg.eps_max, cfg.eps_steps);
    const std::size_t ns = cfg.schemes.size();
    std::vector<SweepRow> rows(eps.size() * ns);
    parallel_for(rows.size(), cfg.jobs, [&](std::size_t idx) {
        rows[idx] = evaluate_point(cfg, cfg.schemes[idx % ns], eps[idx / ns]);
    });
    return rows;
}

inline constexpr const char* kCsvHeader =
    "epsilon,scheme,theta,varphi_axis,phi_loop,fidelity_closed,fidelity_pipeline,"
    "success_probability,closed_pipeline_gap";

// 12 significant digits, '.' decimal separator (printf in the C locale).
inline std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string format_csv(const std::vector<SweepRow>& rows) {
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& r : rows) {
        out += format_number(r.eps);
        out += ',';
        out += to_string(r.scheme);
        out += ',' + format_number(r.theta) + ',' + format_number(r.varphi_axis) + ',' +
               format_number(r.phi_loop) + ',' + opt(r.fidelity_closed) + ',' +
               opt(r.fidelity_pipeline) + ',' + opt(r.success_probability) + ',' +
               opt(r.closed_pipeline_gap) + '\n';
    }
    return out;
}

/// Writes to a sibling temp file and renames it into place.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path);
    }
}

/// Preset behind `figure2`: c1 = c2 = 1/sqrt2, eps in [0, 0.3] at 61 points,
/// the monitored, reference and composite curves.
inline SweepConfig figure2_config() {
    SweepConfig cfg;
    cfg.schemes = {SchemeKind::Monitored, SchemeKind::Reference, SchemeKind::Composite};
    cfg.c1 = cfg.c2 = cplx(1.0 / std::sqrt(2.0), 0.0);
    cfg.eps_min = 0.0;
    cfg.eps_max = 0.3;
    cfg.eps_steps = 61;
    cfg.output_path = "figure2.csv";
    return cfg;
}

}  // namespace holomon
