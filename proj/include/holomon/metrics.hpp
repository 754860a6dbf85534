#pragma once

#include <algorithm>
#include <cmath>

#include "holomon/evolve.hpp"
#include "holomon/linalg.hpp"
#include "holomon/measure.hpp"

namespace holomon {

/// |<a|b>|. b may be norm-deficient (monitor-free outputs keep their leakage).
inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::abs(inner_product(a, b));
}

/// Postselected monitored scheme: F = (|c1|^2 + |c2|^2 cos) / sqrt(|c1|^2 + |c2|^2 cos^2).
inline double fidelity_monitored_closed(cplx c1, cplx c2, double eps) {
    const double c = std::cos(eps * kPi);
    const double a = std::norm(c1) + std::norm(c2) * c;
    return std::abs(a) / std::sqrt(std::norm(c1) + std::norm(c2) * c * c);
}

/// Reference (monitor-free) scheme: F' = |c1|^2 + |c2|^2 cos(eps pi).
inline double fidelity_reference_closed(cplx c1, cplx c2, double eps) {
    return std::abs(std::norm(c1) + std::norm(c2) * std::cos(eps * kPi));
}

/// Composite scheme: sqrt(A^2 + |c2|^4 sin^4 / 2 + A |c2|^2 sin^2), A as in F'.
inline double fidelity_composite_closed(cplx c1, cplx c2, double eps) {
    const double a = std::norm(c1) + std::norm(c2) * std::cos(eps * kPi);
    const double s2 = std::pow(std::sin(eps * kPi), 2);
    const double n2 = std::norm(c2);
    return std::sqrt(a * a + n2 * n2 * s2 * s2 / 2.0 + a * n2 * s2);
}

// Postselected single-loop output against c1 phi1 - c2 e^{i phi} phi2.
inline double fidelity_single_loop_closed(cplx c1, cplx c2, double eps, double phi_loop) {
    const double sh = std::sin(kPi * eps / 2.0);
    const double ch = std::cos(kPi * eps / 2.0);
    const cplx d2 = sh * sh - ch * ch * std::exp(kI * phi_loop);
    const cplx overlap = std::norm(c1) - std::norm(c2) * std::exp(-kI * phi_loop) * d2;
    return std::abs(overlap) / std::sqrt(success_probability_single_loop(c1, c2, eps, phi_loop));
}

inline double fidelity_closed(const SchemeParams& p, double eps) {
    switch (p.scheme) {
        case SchemeKind::Monitored:
        case SchemeKind::DFS: return fidelity_monitored_closed(p.c1, p.c2, eps);
        case SchemeKind::Reference: return fidelity_reference_closed(p.c1, p.c2, eps);
        case SchemeKind::Composite: return fidelity_composite_closed(p.c1, p.c2, eps);
        case SchemeKind::SingleLoop:
            return fidelity_single_loop_closed(p.c1, p.c2, eps, p.phi_loop);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Holonomy conditions

struct HolonomyCheckReport {
    double cyclic_residual = 0.0;
    double parallel_transport_residual = 0.0;
    int samples = 0;
};

/// Evolves the computational frame with the numerical integrator and
/// measures (i) the distance between the rank-2 projectors at t = 0 and
/// t = tau and (ii) the largest matrix element of H(t) inside the evolved
/// frame over the sampled times. Meaningful as a holonomy test for the
/// error-free realization only; under error it just reports.
inline HolonomyCheckReport check_holonomy(const ScheduleRealization& real, int samples,
                                          int steps_per_segment = 1024) {
    if (samples < 10) throw InvalidParams("check_holonomy needs at least 10 samples");
    const long total_steps = static_cast<long>(real.segments.size()) * std::max(steps_per_segment, samples);
    const int sps = std::max(steps_per_segment, samples);
    const int stride = static_cast<int>(std::max<long>(1, total_steps / (samples - 1)));
    const PropagatorResult prop = integrate_schedule(real, sps, stride);

    auto projector = [&](const Operator& U) {
        Operator P = zero_operator(real.dim);
        for (const auto& v : real.computational) {
            const StateVector w = U * v;
            P += outer(w, w);
        }
        return P;
    };

    HolonomyCheckReport rep;
    rep.samples = static_cast<int>(prop.trajectory.size());
    rep.cyclic_residual = op_distance(projector(prop.trajectory.back().U), projector(identity(real.dim)));
    for (const auto& point : prop.trajectory) {
        const HermitianOperator H = real.hamiltonian_at(point.t);
        for (const auto& vk : real.computational) {
            const StateVector wk = point.U * vk;
            for (const auto& vl : real.computational) {
                const StateVector wl = point.U * vl;
                rep.parallel_transport_residual =
                    std::max(rep.parallel_transport_residual, std::abs(inner_product(wk, H * wl)));
            }
        }
    }
    return rep;
}

}  // namespace holomon
