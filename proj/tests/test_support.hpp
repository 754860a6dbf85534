#pragma once

// Shared helpers for the unit tests: a seeded RNG and random operators.

#include <random>

#include "holomon/linalg.hpp"

namespace holomon::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed1234u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline cplx random_cplx() {
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(rng()), n(rng())};
}

inline Operator random_matrix(Eigen::Index dim) {
    Operator m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = random_cplx();
    return m;
}

inline HermitianOperator random_hermitian(Eigen::Index dim) {
    const Operator m = random_matrix(dim);
    return 0.5 * (m + m.adjoint());
}

inline StateVector random_state(Eigen::Index dim) {
    StateVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = random_cplx();
    return v / v.norm();
}

}  // namespace holomon::testing
