#pragma once

// Scheme Hamiltonians, closed-form propagators and the numerical
// time-ordered integrator that checks them.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "holomon/linalg.hpp"
#include "holomon/model.hpp"
#include "holomon/pulses.hpp"

namespace holomon {

enum class Method { Analytic, Numeric };

inline std::string_view to_string(Method m) { return m == Method::Analytic ? "analytic" : "numeric"; }

struct TrajectoryPoint {
    double t;
    UnitaryOperator U;
};

struct PropagatorResult {
    UnitaryOperator final;
    std::vector<TrajectoryPoint> trajectory;  // empty unless requested; starts at I
    Method method = Method::Analytic;
};

// e^{-i phase}|to><from| + h.c. for orthonormal to, from.
inline HermitianOperator coupling_generator(const StateVector& to, const StateVector& from,
                                            double phase = 0.0) {
    const cplx ph = std::exp(-kI * phase);
    return ph * outer(to, from) + std::conj(ph) * outer(from, to);
}

// exp(-i w G) for the coupling generator above. G^2 is the projector onto
// span{to, from}, which gives the Rabi-type closed form.
inline UnitaryOperator coupling_rotation(const StateVector& to, const StateVector& from,
                                         double phase, double w) {
    const Eigen::Index n = to.size();
    const Operator span = outer(to, to) + outer(from, from);
    return identity(n) + (std::cos(w) - 1.0) * span - kI * std::sin(w) * coupling_generator(to, from, phase);
}

// ---------------------------------------------------------------------------
// DFS Hamiltonian from two-qubit XY and Dzyaloshinskii-Moriya terms.

// (sigma_x^k sigma_x^l + sigma_y^k sigma_y^l) / 2
inline HermitianOperator exchange_xy(int k, int l) {
    return 0.5 * (single_qubit_op(pauli::x(), k) * single_qubit_op(pauli::x(), l) +
                  single_qubit_op(pauli::y(), k) * single_qubit_op(pauli::y(), l));
}

// (sigma_x^k sigma_y^l - sigma_y^k sigma_x^l) / 2
inline HermitianOperator exchange_dm(int k, int l) {
    return 0.5 * (single_qubit_op(pauli::x(), k) * single_qubit_op(pauli::y(), l) -
                  single_qubit_op(pauli::y(), k) * single_qubit_op(pauli::x(), l));
}

// Nonzero couplings, in units of J. The DM term sits on the (2,3) pair:
// that is the assignment whose single-excitation restriction is
// J|00><Phi2| (x) |1><0| + h.c. under the sigma_y|0> = i|1> convention.
struct DfsCouplings {
    double jx13;
    double jx23;
    double jy23;
};

inline DfsCouplings dfs_couplings(double theta, double varphi_axis) {
    return {-std::cos(theta / 2.0), std::sin(theta / 2.0) * std::cos(varphi_axis),
            std::sin(theta / 2.0) * std::sin(varphi_axis)};
}

inline HermitianOperator build_dfs_hamiltonian(double J, double theta, double varphi_axis) {
    const DfsCouplings c = dfs_couplings(theta, varphi_axis);
    // qubits are 0-based here: (1,3) -> (0,2), (2,3) -> (1,2)
    return J * (c.jx13 * exchange_xy(0, 2) + c.jx23 * exchange_xy(1, 2) +
                c.jy23 * exchange_dm(1, 2));
}

// Columns |010>, |100>, |001>: the single-excitation (decoherence-free) span.
inline Operator dfs_isometry() {
    Operator v = Operator::Zero(8, 3);
    v(qubit_index(0, 1, 0), 0) = 1.0;
    v(qubit_index(1, 0, 0), 1) = 1.0;
    v(qubit_index(0, 0, 1), 2) = 1.0;
    return v;
}

inline Operator compress_to_dfs(const Operator& op) {
    const Operator v = dfs_isometry();
    return v.adjoint() * op * v;
}

// ---------------------------------------------------------------------------
// Closed forms. The error enters only through the pulse area (1 + eps) * nominal.

/// Monitored pi-rotation on principal (x) monitor, identity on the unused
/// complement of the invariant direct sum.
inline PropagatorResult propagate_monitored(const BasisFrame& f, double eps) {
    const InvariantSubspace s = embed_invariant_subspace(f);
    const double c = std::cos(eps * kPi);
    const double sn = std::sin(eps * kPi);
    Operator U = outer(s.dark, s.dark) - c * outer(s.bright, s.bright) -
                 c * outer(s.auxiliary, s.auxiliary) +
                 kI * sn * (outer(s.bright, s.auxiliary) + outer(s.auxiliary, s.bright));
    for (const auto& u : s.unused) U += outer(u, u);
    return {U, {}, Method::Analytic};
}

/// Monitor-free pi-rotation on the qutrit.
inline PropagatorResult propagate_reference(const BasisFrame& f, double eps) {
    const double c = std::cos(eps * kPi);
    const double sn = std::sin(eps * kPi);
    Operator U = outer(f.phi1, f.phi1) - c * outer(f.phi2, f.phi2) - c * outer(f.phib, f.phib) +
                 kI * sn * (outer(f.phi2, f.phib) + outer(f.phib, f.phi2));
    return {U, {}, Method::Analytic};
}

// Elementary composite gate: H1 (plain) then H2 (quadrature), each area w.
// At w = pi/2 this is diag(1, -i, i) on (phi1, phi2, phib); its square is the
// target diag(1, -1) on the computational block. The opposite convention
// (diag(1, +i)) squares to the same target.
inline UnitaryOperator composite_elementary(const BasisFrame& f, double w) {
    const UnitaryOperator r1 = coupling_rotation(f.phib, f.phi2, 0.0, w);
    const UnitaryOperator r2 = coupling_rotation(f.phib, f.phi2, kPi / 2.0, w);
    return r2 * r1;
}

/// Four pulses H1, H2, H1, H2, each of area (1 + eps) pi / 2. The full
/// product keeps the phi2 <-> phib leakage terms.
inline PropagatorResult propagate_composite(const BasisFrame& f, double eps) {
    const UnitaryOperator e = composite_elementary(f, (1.0 + eps) * kPi / 2.0);
    return {e * e, {}, Method::Analytic};
}

// Diagonal phi2 coefficient of the erroneous composite gate,
// -(cos(eps pi) + sin^2(eps pi) e^{i pi/4} / sqrt 2).
inline cplx composite_phi2_coefficient(double eps) {
    const double c = std::cos(eps * kPi);
    const double s = std::sin(eps * kPi);
    return -(c + s * s * std::exp(kI * kPi / 4.0) / std::sqrt(2.0));
}

/// Two pulses of area (1 + eps) pi / 2: H1 then the phase-shifted H2.
inline PropagatorResult propagate_single_loop(const BasisFrame& f, double eps, double phi_loop) {
    const InvariantSubspace s = embed_invariant_subspace(f);
    const double sh = std::sin(kPi * eps / 2.0);
    const double ch = std::cos(kPi * eps / 2.0);
    const cplx d2 = sh * sh - ch * ch * std::exp(kI * phi_loop);
    const cplx db = sh * sh - ch * ch * std::exp(-kI * phi_loop);
    const double leak = std::sin(kPi * eps) * std::cos(phi_loop / 2.0);
    Operator U = outer(s.dark, s.dark) + d2 * outer(s.bright, s.bright) +
                 db * outer(s.auxiliary, s.auxiliary) +
                 kI * leak * std::exp(kI * phi_loop / 2.0) * outer(s.bright, s.auxiliary) +
                 kI * leak * std::exp(-kI * phi_loop / 2.0) * outer(s.auxiliary, s.bright);
    for (const auto& u : s.unused) U += outer(u, u);
    return {U, {}, Method::Analytic};
}

/// DFS pi-rotation; identity on the 5-dim complement of the DFS.
inline PropagatorResult propagate_dfs(const DfsFrame& d, double eps) {
    const double c = std::cos(eps * kPi);
    const double sn = std::sin(eps * kPi);
    const Operator dfs_proj =
        outer(d.Phi1, d.Phi1) + outer(d.Phi2, d.Phi2) + outer(d.ancilla, d.ancilla);
    Operator U = identity(8) - dfs_proj + outer(d.Phi1, d.Phi1) - c * outer(d.Phi2, d.Phi2) -
                 c * outer(d.ancilla, d.ancilla) +
                 kI * sn * (outer(d.Phi2, d.ancilla) + outer(d.ancilla, d.Phi2));
    return {U, {}, Method::Analytic};
}

inline PropagatorResult propagate_analytic(const SchemeParams& p, double eps) {
    switch (p.scheme) {
        case SchemeKind::Monitored:
            return propagate_monitored(build_basis(p.theta, p.varphi_axis), eps);
        case SchemeKind::Reference:
            return propagate_reference(build_basis(p.theta, p.varphi_axis), eps);
        case SchemeKind::Composite:
            return propagate_composite(build_basis(p.theta, p.varphi_axis), eps);
        case SchemeKind::SingleLoop:
            return propagate_single_loop(build_basis(p.theta, p.varphi_axis), eps, p.phi_loop);
        case SchemeKind::DFS:
            return propagate_dfs(build_dfs_frame(p.theta, p.varphi_axis), eps);
    }
    throw InvalidParams("unknown scheme");
}

// ---------------------------------------------------------------------------
// Time-dependent realization: H(t) = Omega_i(t) * G_i on segment i.

struct ScheduleRealization {
    SchemeKind scheme = SchemeKind::Monitored;
    Eigen::Index dim = 0;
    std::vector<PulseSegment> segments;
    std::vector<HermitianOperator> generators;  // one per segment
    std::array<StateVector, 2> computational;   // initial logical frame (dark first)
    StateVector dark;

    HermitianOperator hamiltonian_of(std::size_t segment, double t_local) const {
        return amplitude_at(segments.at(segment), t_local) * generators.at(segment);
    }

    double duration() const { return schedule_duration(segments); }

    // Segment owning global time t (a boundary belongs to the later segment).
    HermitianOperator hamiltonian_at(double t) const {
        double start = 0.0;
        for (std::size_t i = 0; i < segments.size(); ++i) {
            const double end = start + segments[i].duration;
            if (t < end || i + 1 == segments.size()) {
                const double local = std::clamp(t - start, 0.0, segments[i].duration);
                return hamiltonian_of(i, local);
            }
            start = end;
        }
        return zero_operator(dim);
    }
};

struct RealizationOptions {
    PulseShape shape = PulseShape::half_sine();
    ErrorSpec error{};
    double segment_duration = 1.0;
    bool flip_composite_h2 = false;  // fault injection for harness self-tests
};

inline std::vector<PulseSegment> nominal_schedule(SchemeKind kind, const PulseShape& shape,
                                                  double duration = 1.0) {
    auto seg = [&](double area, GeneratorTag tag) {
        return PulseSegment{shape, duration, area, tag, 1.0};
    };
    switch (kind) {
        case SchemeKind::Monitored: return {seg(kPi, GeneratorTag::MonitorCoupling)};
        case SchemeKind::Reference: return {seg(kPi, GeneratorTag::PlainCoupling)};
        case SchemeKind::Composite:
            return {seg(kPi / 2, GeneratorTag::PlainCoupling),
                    seg(kPi / 2, GeneratorTag::QuadratureCoupling),
                    seg(kPi / 2, GeneratorTag::PlainCoupling),
                    seg(kPi / 2, GeneratorTag::QuadratureCoupling)};
        case SchemeKind::SingleLoop:
            return {seg(kPi / 2, GeneratorTag::MonitorCoupling),
                    seg(kPi / 2, GeneratorTag::LoopPhaseCoupling)};
        case SchemeKind::DFS: return {seg(kPi, GeneratorTag::DfsExchange)};
    }
    throw InvalidParams("unknown scheme");
}

inline ScheduleRealization realize(const SchemeParams& p, const RealizationOptions& opt = {}) {
    ScheduleRealization r;
    r.scheme = p.scheme;
    r.dim = scheme_dim(p.scheme);
    r.segments = apply_error(nominal_schedule(p.scheme, opt.shape, opt.segment_duration), opt.error);
    for (const auto& s : r.segments) validate(s);

    const BasisFrame f = build_basis(p.theta, p.varphi_axis);
    const InvariantSubspace inv = embed_invariant_subspace(f);
    const DfsFrame dfs = build_dfs_frame(p.theta, p.varphi_axis);

    for (const auto& s : r.segments) {
        switch (s.generator_tag) {
            case GeneratorTag::MonitorCoupling:
                r.generators.push_back(coupling_generator(inv.auxiliary, inv.bright));
                break;
            case GeneratorTag::LoopPhaseCoupling:
                r.generators.push_back(coupling_generator(inv.auxiliary, inv.bright, p.phi_loop));
                break;
            case GeneratorTag::PlainCoupling:
                r.generators.push_back(coupling_generator(f.phib, f.phi2));
                break;
            case GeneratorTag::QuadratureCoupling: {
                const double phase = opt.flip_composite_h2 ? -kPi / 2 : kPi / 2;
                r.generators.push_back(coupling_generator(f.phib, f.phi2, phase));
                break;
            }
            case GeneratorTag::DfsExchange:
                r.generators.push_back(build_dfs_hamiltonian(1.0, p.theta, p.varphi_axis));
                break;
        }
    }

    switch (p.scheme) {
        case SchemeKind::Monitored:
        case SchemeKind::SingleLoop:
            r.computational = {inv.dark, inv.bright};
            break;
        case SchemeKind::Reference:
        case SchemeKind::Composite:
            r.computational = {f.phi1, f.phi2};
            break;
        case SchemeKind::DFS:
            r.computational = {dfs.Phi1, dfs.Phi2};
            break;
    }
    r.dark = r.computational[0];
    return r;
}

// ---------------------------------------------------------------------------
// Numerical propagation.

namespace detail {
// Two-point Gauss nodes on [t0, t0 + h] sit at the midpoint -+ h * sqrt(3) / 6.
inline constexpr double kGaussOffset = 0.28867513459481288225;  // sqrt(3) / 6
}  // namespace detail

/// Time-ordered product of fourth-order Magnus steps. Each segment has a
/// fixed generator, so its eigendecomposition is computed once and every
/// step exponential exp(-i a_k G) is rebuilt from it, a_k being the
/// two-point Gauss area of the step. record_stride > 0 stores U every that
/// many steps (plus t = 0 and the final time).
inline PropagatorResult integrate_schedule(const ScheduleRealization& real, int steps_per_segment,
                                           int record_stride = 0) {
    if (steps_per_segment < 16) {
        throw InvalidParams("steps_per_segment must be >= 16");
    }
    if (real.generators.size() != real.segments.size()) {
        throw InvalidParams("realization needs one generator per segment");
    }
    PropagatorResult out{identity(real.dim), {}, Method::Numeric};
    if (record_stride > 0) out.trajectory.push_back({0.0, out.final});

    long step_count = 0;
    double t_start = 0.0;
    for (std::size_t i = 0; i < real.segments.size(); ++i) {
        const PulseSegment& seg = real.segments[i];
        const Eigensystem es = eigh(real.generators[i]);
        const double h = seg.duration / steps_per_segment;
        for (int k = 0; k < steps_per_segment; ++k) {
            const double mid = (k + 0.5) * h;
            const double lo = std::max(0.0, mid - detail::kGaussOffset * h);
            const double hi = std::min(seg.duration, mid + detail::kGaussOffset * h);
            const double area = 0.5 * h * (amplitude_at(seg, lo) + amplitude_at(seg, hi));
            out.final = exp_from_eigensystem(es, area) * out.final;
            ++step_count;
            if (record_stride > 0 && step_count % record_stride == 0) {
                out.trajectory.push_back({t_start + (k + 1) * h, out.final});
            }
        }
        t_start += seg.duration;
    }
    if (record_stride > 0 && step_count % record_stride != 0) {
        out.trajectory.push_back({t_start, out.final});
    }
    return out;
}

/// Generic fourth-order Magnus integrator for an arbitrary H(t) on
/// [0, duration]; one Hermitian exponential per step, including the
/// commutator correction.
inline PropagatorResult integrate_hamiltonian(
    const std::function<HermitianOperator(double)>& hamiltonian, double duration, int steps) {
    if (steps < 1 || !(duration > 0.0)) {
        throw InvalidParams("integrate_hamiltonian needs steps >= 1 and duration > 0");
    }
    const double h = duration / steps;
    HermitianOperator first = hamiltonian(0.0);
    PropagatorResult out{identity(first.rows()), {}, Method::Numeric};
    for (int k = 0; k < steps; ++k) {
        const double mid = (k + 0.5) * h;
        const HermitianOperator h1 = hamiltonian(mid - detail::kGaussOffset * h);
        const HermitianOperator h2 = hamiltonian(mid + detail::kGaussOffset * h);
        const Operator comm = h2 * h1 - h1 * h2;
        // -i * (sqrt3 / 12) h^2 [H2, H1] is Hermitian.
        const HermitianOperator k_eff =
            0.5 * h * (h1 + h2) - kI * (std::sqrt(3.0) / 12.0) * h * h * comm;
        out.final = expm_hermitian(k_eff, 1.0) * out.final;
    }
    return out;
}

inline PropagatorResult propagate_numeric(const SchemeParams& p, const RealizationOptions& opt,
                                          int steps_per_segment) {
    return integrate_schedule(realize(p, opt), steps_per_segment);
}

// Distance between closed form and numerics in the space where they are
// meant to agree: the full space except for DFS, where the Pauli-built
// Hamiltonian also moves the two-excitation sector and only the DFS block
// is modelled by the closed form.
inline double oracle_distance(SchemeKind kind, const Operator& analytic, const Operator& numeric) {
    if (kind == SchemeKind::DFS) {
        return op_distance(compress_to_dfs(analytic), compress_to_dfs(numeric));
    }
    return op_distance(analytic, numeric);
}

}  // namespace holomon
