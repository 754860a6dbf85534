#pragma once

// Invariant suites behind the `check` subcommand. Each property reports the
// largest residual seen on the grid and passes when it stays under its bound.

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "holomon/evolve.hpp"
#include "holomon/measure.hpp"
#include "holomon/metrics.hpp"
#include "holomon/parallel.hpp"

namespace holomon {

struct CheckOptions {
    bool quick = false;           // 2x2 angle grid instead of 5x4
    int samples = 100;            // holonomy time samples
    int steps_per_segment = 4096;
    bool inject_fault = false;    // flips the sign of composite H2 (harness self-test)
    unsigned jobs = default_jobs();
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double max_residual = 0.0;
    double bound = 0.0;
};

inline std::string format_check_line(const CheckResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", r.max_residual);
    return std::string(r.passed ? "PASS " : "FAIL ") + r.name + " max_residual=" + buf;
}

struct AngleGrid {
    std::vector<double> thetas;
    std::vector<double> varphis;
};

inline AngleGrid angle_grid(bool quick) {
    if (quick) return {{0.0, kPi / 2}, {0.0, kPi / 3}};
    return {{0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi}, {0.0, kPi / 3, kPi, 5 * kPi / 3}};
}

inline constexpr std::array<double, 4> kCheckEpsilons = {-0.2, 0.0, 0.1, 0.3};
inline constexpr double kGridLoopPhase = kPi / 2;

inline std::array<PulseShape, 3> all_shapes() {
    return {PulseShape::constant(), PulseShape::half_sine(), PulseShape::gaussian(0.2)};
}

namespace detail {

struct GridSample {
    SchemeKind scheme;
    double theta, varphi, eps;
    Operator analytic;
    std::array<Operator, 3> numeric;  // per shape, amplitude-scale error
    Operator stretched;               // half-sine, time-stretch error
};

inline std::vector<GridSample> evaluate_grid(const CheckOptions& opt) {
    const AngleGrid g = angle_grid(opt.quick);
    std::vector<GridSample> samples;
    for (SchemeKind s : kAllSchemes)
        for (double th : g.thetas)
            for (double vp : g.varphis)
                for (double e : kCheckEpsilons) samples.push_back({s, th, vp, e, {}, {}, {}});

    parallel_for(samples.size(), opt.jobs, [&](std::size_t i) {
        GridSample& gs = samples[i];
        const SchemeParams p{gs.scheme, gs.theta, gs.varphi, kGridLoopPhase, 1.0, 0.0};
        gs.analytic = propagate_analytic(p, gs.eps).final;
        const auto shapes = all_shapes();
        for (std::size_t k = 0; k < shapes.size(); ++k) {
            RealizationOptions ro{shapes[k], {gs.eps, ErrorSpec::Mode::AmplitudeScale}, 1.0,
                                  opt.inject_fault};
            gs.numeric[k] = integrate_schedule(realize(p, ro), opt.steps_per_segment).final;
        }
        RealizationOptions ro{PulseShape::half_sine(), {gs.eps, ErrorSpec::Mode::TimeStretch}, 1.0,
                              opt.inject_fault};
        gs.stretched = integrate_schedule(realize(p, ro), opt.steps_per_segment).final;
    });
    return samples;
}

inline StateVector dark_state(SchemeKind s, double theta, double varphi) {
    if (s == SchemeKind::DFS) return build_dfs_frame(theta, varphi).Phi1;
    const BasisFrame f = build_basis(theta, varphi);
    if (is_monitored(s)) return kron(f.phi1, f.monitor_a);
    return f.phi1;
}

}  // namespace detail

inline std::vector<CheckResult> run_checks(const CheckOptions& opt) {
    const auto grid = detail::evaluate_grid(opt);
    std::vector<CheckResult> out;
    auto add = [&](std::string name, double residual, double bound) {
        out.push_back({std::move(name), residual < bound, residual, bound});
    };

    double unitarity = 0.0, dark = 0.0, block = 0.0, shape = 0.0, mode = 0.0, calib = 0.0;
    std::array<double, 5> oracle{};
    for (const auto& gs : grid) {
        unitarity = std::max(unitarity, unitarity_residual(gs.analytic));
        for (const auto& n : gs.numeric) unitarity = std::max(unitarity, unitarity_residual(n));

        if (is_monitored(gs.scheme)) {
            const StateVector d = detail::dark_state(gs.scheme, gs.theta, gs.varphi);
            dark = std::max(dark, (gs.analytic * d - d).norm());
            for (const auto& n : gs.numeric) dark = std::max(dark, (n * d - d).norm());
        }

        if (gs.scheme == SchemeKind::Monitored || gs.scheme == SchemeKind::SingleLoop) {
            const InvariantSubspace s = embed_invariant_subspace(build_basis(gs.theta, gs.varphi));
            const std::array<StateVector, 3> inside{s.dark, s.bright, s.auxiliary};
            for (const Operator* U : {&gs.analytic, &gs.numeric[1]}) {
                for (const auto& u : s.unused)
                    for (const auto& v : inside) {
                        block = std::max(block, std::abs(inner_product(u, *U * v)));
                        block = std::max(block, std::abs(inner_product(v, *U * u)));
                    }
            }
        }

        shape = std::max({shape, op_distance(gs.numeric[0], gs.numeric[1]),
                          op_distance(gs.numeric[0], gs.numeric[2])});
        mode = std::max(mode, op_distance(gs.numeric[1], gs.stretched));
        const auto si = static_cast<std::size_t>(gs.scheme);
        for (const auto& n : gs.numeric) {
            oracle[si] = std::max(oracle[si], oracle_distance(gs.scheme, gs.analytic, n));
        }

        if (gs.scheme == SchemeKind::Composite) {
            const BasisFrame f = build_basis(gs.theta, gs.varphi);
            for (const auto& n : gs.numeric) {
                const cplx d2 = inner_product(f.phi2, n * f.phi2);
                calib = std::max(calib, std::abs(d2 - composite_phi2_coefficient(gs.eps)));
            }
        }
    }

    add("unitarity", unitarity, tol::kUnitary);
    add("dark_state_invariance", dark, 1e-10);
    add("block_structure", block, 1e-12);
    add("pulse_shape_invariance", shape, 1e-8);
    add("error_mode_equivalence", mode, 1e-10);
    for (SchemeKind s : kAllSchemes) {
        add("analytic_numeric_" + std::string(to_string(s)), oracle[static_cast<std::size_t>(s)], 1e-6);
    }
    add("composite_calibration", calib, 1e-6);

    // Holonomy at eps = 0.
    {
        const AngleGrid g = angle_grid(opt.quick);
        double cyclic = 0.0, transport = 0.0;
        for (double th : g.thetas)
            for (double vp : g.varphis) {
                std::vector<SchemeParams> cases{
                    {SchemeKind::Monitored, th, vp, 0.0, 1.0, 0.0},
                    {SchemeKind::DFS, th, vp, 0.0, 1.0, 0.0}};
                for (double phi : {0.0, kPi / 2, kPi}) {
                    cases.push_back({SchemeKind::SingleLoop, th, vp, phi, 1.0, 0.0});
                }
                for (const auto& p : cases) {
                    const auto rep = check_holonomy(realize(p), opt.samples);
                    cyclic = std::max(cyclic, rep.cyclic_residual);
                    transport = std::max(transport, rep.parallel_transport_residual);
                }
            }
        add("holonomy_cyclic(samples=" + std::to_string(opt.samples) + ")", cyclic, 1e-8);
        add("holonomy_parallel_transport(samples=" + std::to_string(opt.samples) + ")", transport, 1e-8);
    }

    // DFS structure: invariance, restriction, collective dephasing.
    {
        const AngleGrid g = angle_grid(opt.quick);
        const Operator V = dfs_isometry();
        const Operator outside = identity(8) - V * V.adjoint();
        const Operator sz = collective_sigma_z();
        double resid = (sz * V - V).norm();
        for (double th : g.thetas)
            for (double vp : g.varphis) {
                const Operator H = build_dfs_hamiltonian(1.0, th, vp);
                const DfsFrame d = build_dfs_frame(th, vp);
                const Operator expected = coupling_generator(d.ancilla, d.Phi2);
                resid = std::max(resid, (outside * H * V).norm());
                resid = std::max(resid, (V.adjoint() * (H - expected) * V).norm());
            }
        add("dfs_structure", resid, 1e-12);
    }

    // Postselection closed forms and the fidelity ordering.
    {
        double post = 0.0;
        double ordering = 0.0;
        bool strict = true;
        const double r = 1.0 / std::sqrt(2.0);
        const std::array<std::pair<cplx, cplx>, 4> amps{{{1.0, 0.0}, {r, r}, {0.6, cplx(0.0, 0.8)}, {0.0, 1.0}}};
        for (const auto& [c1, c2] : amps)
            for (double e : kCheckEpsilons) {
                const SchemeParams mon{SchemeKind::Monitored, kPi / 3, kPi / 3, 0.0, c1, c2};
                const SchemeParams loop{SchemeKind::SingleLoop, kPi / 3, kPi / 3, kGridLoopPhase, c1, c2};
                const SchemeParams ref{SchemeKind::Reference, kPi / 3, kPi / 3, 0.0, c1, c2};
                const auto rm = run_pipeline(mon, e, Method::Analytic);
                const auto rl = run_pipeline(loop, e, Method::Analytic);
                const auto rr = run_pipeline(ref, e, Method::Analytic);
                post = std::max(post, std::abs(rm.success_probability - success_probability_monitored(c1, c2, e)));
                post = std::max(post, std::abs(rl.success_probability -
                                               success_probability_single_loop(c1, c2, e, kGridLoopPhase)));
                ordering = std::max(ordering, rr.fidelity_vs_target - rm.fidelity_vs_target);
                if (e != 0.0 && std::abs(c2) > 0.0 && !(rm.fidelity_vs_target > rr.fidelity_vs_target)) {
                    strict = false;
                }
            }
        add("postselection_closed_form", post, 1e-10);
        out.push_back({"fidelity_ordering", ordering <= 0.0 && strict, std::max(ordering, 0.0), 0.0});
    }
    return out;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

}  // namespace holomon
