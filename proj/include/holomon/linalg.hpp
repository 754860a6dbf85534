#pragma once

// Dense complex kernels for the small Hilbert spaces used here (dim <= 8).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "holomon/errors.hpp"

namespace holomon {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 8;
inline constexpr cplx kI{0.0, 1.0};

// Storage never exceeds 8x8, so everything lives inline (no heap traffic).
using Operator = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using StateVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using RealVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

// Role aliases; invariants are checked by the residual helpers below.
using UnitaryOperator = Operator;
using HermitianOperator = Operator;

namespace tol {
inline constexpr double kHermitian = 1e-12;  // ||H - H^dag||_F, relative to max(1, ||H||_F)
inline constexpr double kUnitary = 1e-10;    // ||U^dag U - I||_F
inline constexpr double kNormalized = 1e-12; // | ||psi||^2 - 1 |
inline constexpr double kZeroBranch = 1e-12; // postselection probability floor
}  // namespace tol

inline Operator identity(Eigen::Index dim) { return Operator::Identity(dim, dim); }

inline Operator zero_operator(Eigen::Index dim) { return Operator::Zero(dim, dim); }

inline StateVector basis_vector(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) {
        throw OutOfRange("basis index " + std::to_string(index) + " outside dim " +
                         std::to_string(dim));
    }
    StateVector v = StateVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

// |a><b|
inline Operator outer(const StateVector& a, const StateVector& b) { return a * b.adjoint(); }

// Left factor outermost: (a (x) b)(i*db + k, j*db + l) = a(i,j) * b(k,l).
inline Operator kron(const Operator& a, const Operator& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols()) {
        throw DimMismatch("kron expects square operands");
    }
    const Eigen::Index da = a.rows();
    const Eigen::Index db = b.rows();
    if (da * db > kMaxDim) {
        throw std::length_error("kron result dimension " + std::to_string(da * db) +
                                " exceeds " + std::to_string(kMaxDim));
    }
    Operator out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) {
            out.block(i * db, j * db, db, db) = a(i, j) * b;
        }
    }
    return out;
}

inline StateVector kron(const StateVector& a, const StateVector& b) {
    const Eigen::Index da = a.size();
    const Eigen::Index db = b.size();
    if (da * db > kMaxDim) {
        throw std::length_error("kron result dimension exceeds " + std::to_string(kMaxDim));
    }
    StateVector out(da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        out.segment(i * db, db) = a(i) * b;
    }
    return out;
}

inline double hermiticity_residual(const Operator& h) { return (h - h.adjoint()).norm(); }

inline double unitarity_residual(const Operator& u) {
    return (u.adjoint() * u - identity(u.rows())).norm();
}

inline bool is_hermitian(const Operator& h) {
    return h.rows() == h.cols() &&
           hermiticity_residual(h) < tol::kHermitian * std::max(1.0, h.norm());
}

inline bool is_unitary(const Operator& u) {
    return u.rows() == u.cols() && unitarity_residual(u) < tol::kUnitary;
}

struct Eigensystem {
    RealVector values;
    Operator vectors;  // columns are orthonormal eigenvectors
};

inline Eigensystem eigh(const HermitianOperator& h) {
    if (!is_hermitian(h)) {
        throw NonHermitianInput("operator is not Hermitian: residual " +
                                std::to_string(hermiticity_residual(h)));
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    const Operator sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> solver(sym);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// exp(-i * angle * diag(values)) conjugated by the eigenvector basis.
inline UnitaryOperator exp_from_eigensystem(const Eigensystem& es, double angle) {
    const Eigen::Index n = es.values.size();
    Operator scaled = es.vectors;
    for (Eigen::Index k = 0; k < n; ++k) {
        scaled.col(k) *= std::exp(-kI * (angle * es.values(k)));
    }
    return scaled * es.vectors.adjoint();
}

/// exp(-i * angle * h) for Hermitian h, via eigendecomposition.
inline UnitaryOperator expm_hermitian(const HermitianOperator& h, double angle) {
    return exp_from_eigensystem(eigh(h), angle);
}

/// <a|b>, conjugate-linear in the first argument.
inline cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) {
        throw DimMismatch("inner_product: dims " + std::to_string(a.size()) + " and " +
                          std::to_string(b.size()));
    }
    return a.dot(b);  // Eigen's dot conjugates the left operand
}

/// Frobenius distance; no quotient by global phase.
inline double op_distance(const Operator& a, const Operator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimMismatch("op_distance: operator shapes differ");
    }
    return (a - b).norm();
}

inline double norm_squared(const StateVector& v) { return v.squaredNorm(); }

inline bool is_normalized(const StateVector& v) {
    return std::abs(v.squaredNorm() - 1.0) < tol::kNormalized;
}

inline bool all_finite(const Operator& m) {
    return m.unaryExpr([](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); })
        .all();
}

}  // namespace holomon
