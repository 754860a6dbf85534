#pragma once

// Hilbert-space layouts and bases.
//
// Conventions used everywhere in the library:
//   qutrit order (|0>, |1>, |e>), monitor order (|a>, |b>), and the composite
//   principal (x) monitor space has index 2*p + m (left factor outermost);
//   three-qubit order q1 (x) q2 (x) q3 with |0> before |1>, so |q1 q2 q3> has
//   index 4*q1 + 2*q2 + q3;
//   sigma_z|0> = +|0>, sigma_x|0> = |1>, sigma_y|0> = i|1>.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "holomon/linalg.hpp"

namespace holomon {

inline constexpr double kPi = std::numbers::pi;

enum class SchemeKind { Monitored, Reference, Composite, SingleLoop, DFS };

inline constexpr std::array<SchemeKind, 5> kAllSchemes = {
    SchemeKind::Monitored, SchemeKind::Reference, SchemeKind::Composite,
    SchemeKind::SingleLoop, SchemeKind::DFS};

inline std::string_view to_string(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::Monitored: return "monitored";
        case SchemeKind::Reference: return "reference";
        case SchemeKind::Composite: return "composite";
        case SchemeKind::SingleLoop: return "single-loop";
        case SchemeKind::DFS: return "dfs";
    }
    return "unknown";
}

inline SchemeKind parse_scheme(std::string_view name) {
    for (SchemeKind k : kAllSchemes) {
        if (to_string(k) == name) return k;
    }
    if (name == "singleloop" || name == "single_loop") return SchemeKind::SingleLoop;
    throw InvalidParams("unknown scheme '" + std::string(name) + "'");
}

// Whether the scheme carries a monitor qubit that is measured at the end.
inline bool is_monitored(SchemeKind kind) {
    return kind == SchemeKind::Monitored || kind == SchemeKind::SingleLoop ||
           kind == SchemeKind::DFS;
}

inline Eigen::Index scheme_dim(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::Monitored:
        case SchemeKind::SingleLoop: return 6;
        case SchemeKind::Reference:
        case SchemeKind::Composite: return 3;
        case SchemeKind::DFS: return 8;
    }
    return 0;
}

namespace pauli {
inline Operator x() {
    Operator m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}
inline Operator y() {
    Operator m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}
inline Operator z() {
    Operator m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}
}  // namespace pauli

// Wrap into [0, 2pi).
inline double wrap_angle(double a) {
    double w = std::fmod(a, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    if (w >= 2.0 * kPi) w = 0.0;
    return w;
}

struct SchemeParams {
    SchemeKind scheme = SchemeKind::Monitored;
    double theta = 0.0;        // axis polar angle, [0, pi]
    double varphi_axis = 0.0;  // axis azimuth, [0, 2pi)
    double phi_loop = 0.0;     // single-loop phase, [0, 2pi)
    cplx c1{1.0, 0.0};
    cplx c2{0.0, 0.0};
};

// Checks amplitudes and angle ranges; returns a copy with azimuths wrapped.
inline SchemeParams canonical(SchemeParams p) {
    if (!std::isfinite(p.theta) || !std::isfinite(p.varphi_axis) || !std::isfinite(p.phi_loop)) {
        throw InvalidParams("angles must be finite");
    }
    if (p.theta < 0.0 || p.theta > kPi) {
        throw InvalidParams("theta must lie in [0, pi], got " + std::to_string(p.theta));
    }
    const double n2 = std::norm(p.c1) + std::norm(p.c2);
    if (std::abs(n2 - 1.0) > tol::kNormalized) {
        throw InvalidParams("|c1|^2 + |c2|^2 must be 1, got " + std::to_string(n2));
    }
    p.varphi_axis = wrap_angle(p.varphi_axis);
    p.phi_loop = wrap_angle(p.phi_loop);
    return p;
}

struct BasisFrame {
    StateVector phi1;  // dark state, eigenvector of n.sigma with +1
    StateVector phi2;  // bright state, eigenvector with -1
    StateVector phib;  // |e>
    StateVector monitor_a;
    StateVector monitor_b;
};

inline BasisFrame build_basis(double theta, double varphi_axis) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cplx ph = std::exp(kI * varphi_axis);
    BasisFrame f;
    f.phi1 = StateVector::Zero(3);
    f.phi1 << c, s * ph, 0.0;
    f.phi2 = StateVector::Zero(3);
    f.phi2 << s * std::conj(ph), -c, 0.0;
    f.phib = basis_vector(3, 2);
    f.monitor_a = basis_vector(2, 0);
    f.monitor_b = basis_vector(2, 1);
    return f;
}

// n.sigma on the {|0>, |1>} block of the qutrit.
inline Operator axis_operator(double theta, double varphi_axis) {
    Operator m = zero_operator(3);
    const cplx ph = std::exp(kI * varphi_axis);
    m(0, 0) = std::cos(theta);
    m(0, 1) = std::sin(theta) * std::conj(ph);
    m(1, 0) = std::sin(theta) * ph;
    m(1, 1) = -std::cos(theta);
    return m;
}

struct InvariantSubspace {
    StateVector dark;      // phi1 (x) a
    StateVector bright;    // phi2 (x) a
    StateVector auxiliary; // phib (x) b
    // Product vectors outside the invariant direct sum.
    std::array<StateVector, 3> unused;  // phi1 (x) b, phi2 (x) b, phib (x) a
};

inline InvariantSubspace embed_invariant_subspace(const BasisFrame& f) {
    return {kron(f.phi1, f.monitor_a),
            kron(f.phi2, f.monitor_a),
            kron(f.phib, f.monitor_b),
            {kron(f.phi1, f.monitor_b), kron(f.phi2, f.monitor_b), kron(f.phib, f.monitor_a)}};
}

// Three-qubit index of |q1 q2 q3>.
inline constexpr Eigen::Index qubit_index(int q1, int q2, int q3) { return 4 * q1 + 2 * q2 + q3; }

struct DfsFrame {
    StateVector logical0;  // |010> = |0>_L |0>
    StateVector logical1;  // |100> = |1>_L |0>
    StateVector ancilla;   // |001> = |00> |1>
    StateVector Phi1;      // dark logical state (x) |0>
    StateVector Phi2;      // bright logical state (x) |0>
};

inline DfsFrame build_dfs_frame(double theta, double varphi_axis) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cplx ph = std::exp(kI * varphi_axis);
    DfsFrame f;
    f.logical0 = basis_vector(8, qubit_index(0, 1, 0));
    f.logical1 = basis_vector(8, qubit_index(1, 0, 0));
    f.ancilla = basis_vector(8, qubit_index(0, 0, 1));
    f.Phi1 = c * f.logical0 + s * ph * f.logical1;
    f.Phi2 = s * std::conj(ph) * f.logical0 - c * f.logical1;
    return f;
}

// sigma^(k) acting on qubit k (0-based) of three.
inline Operator single_qubit_op(const Operator& op, int k) {
    Operator out = Operator::Identity(1, 1);
    for (int q = 0; q < 3; ++q) {
        out = kron(out, q == k ? op : identity(2));
    }
    return out;
}

// sigma_z^(1) + sigma_z^(2) + sigma_z^(3): the collective dephasing coupling.
inline Operator collective_sigma_z() {
    Operator s = zero_operator(8);
    for (int k = 0; k < 3; ++k) s += single_qubit_op(pauli::z(), k);
    return s;
}

}  // namespace holomon
