#pragma once

// Conditional measurement of the monitor and the end-to-end scheme pipelines.

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "holomon/evolve.hpp"
#include "holomon/linalg.hpp"
#include "holomon/model.hpp"

namespace holomon {

enum class MonitorOutcome { A, B, None };

inline std::string_view to_string(MonitorOutcome o) {
    switch (o) {
        case MonitorOutcome::A: return "monitor-a";
        case MonitorOutcome::B: return "monitor-b";
        case MonitorOutcome::None: return "none";
    }
    return "none";
}

struct PostselectionOutcome {
    StateVector state;  // principal subsystem; unit norm when renormalized
    double probability = 0.0;
    MonitorOutcome outcome = MonitorOutcome::None;
};

/// Projects the monitor factor onto monitor_vector and returns the remaining
/// (principal) factors, renormalized unless asked otherwise. factor_dims
/// lists the tensor factors left to right; monitor_position indexes the
/// monitor among them.
inline PostselectionOutcome postselect_monitor(const StateVector& full_state,
                                               const StateVector& monitor_vector,
                                               std::span<const Eigen::Index> factor_dims,
                                               std::size_t monitor_position,
                                               bool renormalize = true) {
    if (monitor_position >= factor_dims.size()) {
        throw OutOfRange("monitor position outside the factor list");
    }
    Eigen::Index left = 1;
    Eigen::Index right = 1;
    for (std::size_t i = 0; i < factor_dims.size(); ++i) {
        if (i < monitor_position) left *= factor_dims[i];
        if (i > monitor_position) right *= factor_dims[i];
    }
    const Eigen::Index mdim = factor_dims[monitor_position];
    if (left * mdim * right != full_state.size()) {
        throw DimMismatch("state dim " + std::to_string(full_state.size()) +
                          " does not match the factor dims");
    }
    if (monitor_vector.size() != mdim) {
        throw DimMismatch("monitor vector dim does not match its factor");
    }

    PostselectionOutcome out;
    out.state = StateVector::Zero(left * right);
    for (Eigen::Index l = 0; l < left; ++l) {
        for (Eigen::Index r = 0; r < right; ++r) {
            cplx amp = 0.0;
            for (Eigen::Index m = 0; m < mdim; ++m) {
                amp += std::conj(monitor_vector(m)) * full_state((l * mdim + m) * right + r);
            }
            out.state(l * right + r) = amp;
        }
    }
    out.probability = out.state.squaredNorm();
    if (mdim == 2 && std::abs(monitor_vector(1)) == 0.0) out.outcome = MonitorOutcome::A;
    else if (mdim == 2 && std::abs(monitor_vector(0)) == 0.0) out.outcome = MonitorOutcome::B;

    if (renormalize) {
        if (out.probability < tol::kZeroBranch) {
            throw ZeroNormBranch("postselected branch has probability " +
                                 std::to_string(out.probability));
        }
        out.state /= std::sqrt(out.probability);
    }
    return out;
}

// Factor layouts of the monitored spaces; the monitor is always last.
inline constexpr std::array<Eigen::Index, 2> kQutritMonitorFactors = {3, 2};
inline constexpr std::array<Eigen::Index, 3> kThreeQubitFactors = {2, 2, 2};

// ---------------------------------------------------------------------------
// Closed-form success probabilities and postselected states.

inline double success_probability_monitored(cplx c1, cplx c2, double eps) {
    const double c = std::cos(eps * kPi);
    return std::norm(c1) + std::norm(c2) * c * c;
}

inline double success_probability_single_loop(cplx c1, cplx c2, double eps, double phi_loop) {
    const double s = std::sin(eps * kPi);
    const double h = std::cos(phi_loop / 2.0);
    return std::norm(c1) + std::norm(c2) * (1.0 - s * s * h * h);
}

/// Postselected qutrit state of the monitored pi-rotation (monitor reads |a>).
inline PostselectionOutcome monitored_postselect_closed(const SchemeParams& p, double eps) {
    const BasisFrame f = build_basis(p.theta, p.varphi_axis);
    const double prob = success_probability_monitored(p.c1, p.c2, eps);
    if (prob < tol::kZeroBranch) throw ZeroNormBranch("monitor-a branch has zero probability");
    PostselectionOutcome out;
    out.state = (p.c1 * f.phi1 - p.c2 * std::cos(eps * kPi) * f.phi2) / std::sqrt(prob);
    out.probability = prob;
    out.outcome = MonitorOutcome::A;
    return out;
}

/// Postselected qutrit state of the single-loop scheme (monitor reads |a>).
inline PostselectionOutcome single_loop_postselect_closed(const SchemeParams& p, double eps) {
    const BasisFrame f = build_basis(p.theta, p.varphi_axis);
    const double sh = std::sin(kPi * eps / 2.0);
    const double ch = std::cos(kPi * eps / 2.0);
    const cplx d2 = sh * sh - ch * ch * std::exp(kI * p.phi_loop);
    const double prob = success_probability_single_loop(p.c1, p.c2, eps, p.phi_loop);
    if (prob < tol::kZeroBranch) throw ZeroNormBranch("monitor-a branch has zero probability");
    PostselectionOutcome out;
    out.state = (p.c1 * f.phi1 + p.c2 * d2 * f.phi2) / std::sqrt(prob);
    out.probability = prob;
    out.outcome = MonitorOutcome::A;
    return out;
}

// ---------------------------------------------------------------------------
// Pipelines: prepare, propagate, (measure), compare with the target.

struct PipelineOptions {
    RealizationOptions realization{};
    int steps_per_segment = 4096;
};

struct PipelineReport {
    SchemeKind scheme = SchemeKind::Monitored;
    double eps = 0.0;
    StateVector output_state;  // principal subsystem; unnormalized for monitor-free schemes
    StateVector target_state;
    double success_probability = 1.0;
    double fidelity_vs_target = 0.0;
};

// Ideal output, expressed in the same space as PipelineReport::output_state.
inline StateVector target_state(const SchemeParams& p) {
    if (p.scheme == SchemeKind::DFS) {
        const DfsFrame d = build_dfs_frame(p.theta, p.varphi_axis);
        const StateVector monitor0 = basis_vector(2, 0);
        const StateVector phi1 =
            postselect_monitor(d.Phi1, monitor0, kThreeQubitFactors, 2, false).state;
        const StateVector phi2 =
            postselect_monitor(d.Phi2, monitor0, kThreeQubitFactors, 2, false).state;
        return p.c1 * phi1 - p.c2 * phi2;
    }
    const BasisFrame f = build_basis(p.theta, p.varphi_axis);
    if (p.scheme == SchemeKind::SingleLoop) {
        return p.c1 * f.phi1 - p.c2 * std::exp(kI * p.phi_loop) * f.phi2;
    }
    return p.c1 * f.phi1 - p.c2 * f.phi2;
}

inline StateVector initial_state(const SchemeParams& p) {
    if (p.scheme == SchemeKind::DFS) {
        const DfsFrame d = build_dfs_frame(p.theta, p.varphi_axis);
        return p.c1 * d.Phi1 + p.c2 * d.Phi2;
    }
    const BasisFrame f = build_basis(p.theta, p.varphi_axis);
    const StateVector principal = p.c1 * f.phi1 + p.c2 * f.phi2;
    return is_monitored(p.scheme) ? StateVector(kron(principal, f.monitor_a)) : principal;
}

inline PipelineReport run_pipeline(const SchemeParams& params, double eps, Method method,
                                   const PipelineOptions& opts = {}) {
    const SchemeParams p = canonical(params);
    PropagatorResult prop;
    if (method == Method::Analytic) {
        prop = propagate_analytic(p, eps);
    } else {
        RealizationOptions ro = opts.realization;
        ro.error.epsilon = eps;
        prop = propagate_numeric(p, ro, opts.steps_per_segment);
    }

    PipelineReport rep;
    rep.scheme = p.scheme;
    rep.eps = eps;
    rep.target_state = target_state(p);
    const StateVector evolved = prop.final * initial_state(p);

    switch (p.scheme) {
        case SchemeKind::Monitored:
        case SchemeKind::SingleLoop: {
            const auto sel = postselect_monitor(evolved, basis_vector(2, 0), kQutritMonitorFactors, 1);
            rep.output_state = sel.state;
            rep.success_probability = sel.probability;
            break;
        }
        case SchemeKind::DFS: {
            const auto sel = postselect_monitor(evolved, basis_vector(2, 0), kThreeQubitFactors, 2);
            rep.output_state = sel.state;
            rep.success_probability = sel.probability;
            break;
        }
        case SchemeKind::Reference:
        case SchemeKind::Composite:
            // The leaked amplitude stays in the output; no renormalization.
            rep.output_state = evolved;
            rep.success_probability = 1.0;
            break;
    }
    rep.fidelity_vs_target = std::abs(inner_product(rep.target_state, rep.output_state));
    return rep;
}

}  // namespace holomon
