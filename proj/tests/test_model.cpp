#include <gtest/gtest.h>

#include "holomon/model.hpp"

using namespace holomon;

namespace {
const std::vector<double> kThetas{0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi};
const std::vector<double> kVarphis{0.0, kPi / 3, kPi, 5 * kPi / 3};
}  // namespace

TEST(Scheme, NamesRoundTrip) {
    for (SchemeKind k : kAllSchemes) EXPECT_EQ(parse_scheme(to_string(k)), k);
    EXPECT_THROW(parse_scheme("bogus"), InvalidParams);
    EXPECT_EQ(scheme_dim(SchemeKind::Monitored), 6);
    EXPECT_EQ(scheme_dim(SchemeKind::Reference), 3);
    EXPECT_EQ(scheme_dim(SchemeKind::DFS), 8);
}

TEST(Pauli, Convention) {
    const StateVector zero = basis_vector(2, 0);
    const StateVector one = basis_vector(2, 1);
    EXPECT_LT((pauli::z() * zero - zero).norm(), 1e-15);
    EXPECT_LT((pauli::y() * zero - kI * one).norm(), 1e-15);
    EXPECT_LT((pauli::x() * zero - one).norm(), 1e-15);
}

TEST(BasisFrame, OrthonormalEigenvectorsOfAxis) {
    for (double th : kThetas)
        for (double vp : kVarphis) {
            const BasisFrame f = build_basis(th, vp);
            const std::array<StateVector, 3> v{f.phi1, f.phi2, f.phib};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    EXPECT_NEAR(std::abs(inner_product(v[i], v[j])), i == j ? 1.0 : 0.0, 1e-14);
            const Operator n = axis_operator(th, vp);
            EXPECT_LT((n * f.phi1 - f.phi1).norm(), 1e-14);
            EXPECT_LT((n * f.phi2 + f.phi2).norm(), 1e-14);
        }
}

TEST(BasisFrame, PolesReduceToComputationalStates) {
    const BasisFrame north = build_basis(0.0, 0.7);
    EXPECT_LT((north.phi1 - basis_vector(3, 0)).norm(), 1e-15);
    EXPECT_LT((north.phi2 + basis_vector(3, 1)).norm(), 1e-15);
}

TEST(InvariantSubspace, SixOrthonormalVectors) {
    for (double th : kThetas)
        for (double vp : kVarphis) {
            const InvariantSubspace s = embed_invariant_subspace(build_basis(th, vp));
            const std::vector<StateVector> all{s.dark, s.bright, s.auxiliary,
                                               s.unused[0], s.unused[1], s.unused[2]};
            Operator gram(6, 6);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) gram(i, j) = inner_product(all[i], all[j]);
            EXPECT_LT(op_distance(gram, identity(6)), 1e-14);
        }
}

TEST(Canonical, ValidatesAndWraps) {
    SchemeParams p{SchemeKind::Monitored, kPi / 2, 3 * kPi, -kPi / 2, 1.0, 0.0};
    const SchemeParams c = canonical(p);
    EXPECT_NEAR(c.varphi_axis, kPi, 1e-12);
    EXPECT_NEAR(c.phi_loop, 1.5 * kPi, 1e-12);
    EXPECT_THROW(canonical({SchemeKind::Monitored, -0.1, 0.0, 0.0, 1.0, 0.0}), InvalidParams);
    EXPECT_THROW(canonical({SchemeKind::Monitored, 4.0, 0.0, 0.0, 1.0, 0.0}), InvalidParams);
    EXPECT_THROW(canonical({SchemeKind::Monitored, 0.0, 0.0, 0.0, 1.0, 1.0}), InvalidParams);
    EXPECT_THROW(canonical({SchemeKind::Monitored, std::nan(""), 0.0, 0.0, 1.0, 0.0}), InvalidParams);
}

TEST(Dfs, FrameIndicesAndCollectiveDephasing) {
    EXPECT_EQ(qubit_index(0, 1, 0), 2);
    EXPECT_EQ(qubit_index(1, 0, 0), 4);
    EXPECT_EQ(qubit_index(0, 0, 1), 1);
    const Operator sz = collective_sigma_z();
    for (double th : kThetas)
        for (double vp : kVarphis) {
            const DfsFrame d = build_dfs_frame(th, vp);
            for (const StateVector* v : {&d.logical0, &d.logical1, &d.ancilla, &d.Phi1, &d.Phi2}) {
                EXPECT_LT((sz * *v - *v).norm(), 1e-15);
                EXPECT_NEAR(v->norm(), 1.0, 1e-15);
            }
            EXPECT_LT(std::abs(inner_product(d.Phi1, d.Phi2)), 1e-15);
        }
}

TEST(Dfs, SingleQubitOperatorsActOnTheRightFactor) {
    // sigma_x on qubit 0 maps |000> to |100>.
    const StateVector v = single_qubit_op(pauli::x(), 0) * basis_vector(8, 0);
    EXPECT_LT((v - basis_vector(8, qubit_index(1, 0, 0))).norm(), 1e-15);
    const StateVector w = single_qubit_op(pauli::x(), 2) * basis_vector(8, 0);
    EXPECT_LT((w - basis_vector(8, qubit_index(0, 0, 1))).norm(), 1e-15);
}
