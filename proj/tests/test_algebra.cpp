// Copyright 2026 The qnksim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qnk/algebra.hpp"
#include "qnk/rng.hpp"

namespace qnk::algebra {
namespace {

constexpr double kPi = std::numbers::pi;

OperatorFamily single(const std::string& label, const UnitaryOp& u) { return OperatorFamily{label, {u}}; }

TEST(Phase, ScalarIdentityPhase) {
    const Matrix m = std::polar(1.0, 0.3) * Matrix::Identity(4, 4);
    ASSERT_TRUE(scalar_identity_phase(m).has_value());
    EXPECT_NEAR(*scalar_identity_phase(m), 0.3, 1e-15);
    EXPECT_FALSE(scalar_identity_phase(gates::Z().matrix()).has_value());
    EXPECT_FALSE(scalar_identity_phase(0.5 * Matrix::Identity(2, 2)).has_value());
    EXPECT_NEAR(phase_gap(-kPi + 0.01, kPi - 0.01), 0.02, 1e-12);
}

TEST(Family, GeneratedFamilyOrder) {
    const OperatorFamily f = generated_family("g", gates::X(), gates::Z(), 1);
    ASSERT_EQ(f.size(), 4u);
    EXPECT_LE(max_abs(f.members[0].matrix() - Matrix::Identity(2, 2)), 0);
    EXPECT_LE(max_abs(f.members[1].matrix() - gates::Z().matrix()), 0);
    EXPECT_LE(max_abs(f.members[2].matrix() - gates::X().matrix()), 0);
    EXPECT_LE(max_abs(f.members[3].matrix() - gates::X().matrix() * gates::Z().matrix()), 0);
    EXPECT_EQ(generated_family("g", gates::X(), gates::Z(), 2).size(), 16u);
    EXPECT_THROW(generated_family("g", UnitaryOp::identity(2), gates::Z(), 1), ShapeError);
}

TEST(Basis, PauliFamilyIsCompleteOrthogonalBasis) {
    for (std::size_t n : {1u, 2u}) {
        const BasisReport r = check_orthogonal_basis(pauli_family(n));
        EXPECT_TRUE(r.passed) << n;
        EXPECT_LE(r.max_gram_deviation, 1e-12);
    }
}

TEST(Basis, ReconstructsArbitraryMatrix) {
    Rng r(31);
    const Matrix rho = random_complex_matrix(4, 4, r);
    const BasisReport rep = check_orthogonal_basis(pauli_family(2), rho);
    EXPECT_LE(rep.reconstruction_error, 1e-12);
    // [DERIVED] identity coefficient equals Tr(rho)/d.
    EXPECT_LE(std::abs(rep.coefficients[0] - rho.trace() / 4.0), 1e-13);
}

TEST(Basis, IncompleteOrNonOrthogonalFamiliesFail) {
    OperatorFamily f = pauli_family(1);
    f.members.pop_back();
    const BasisReport a = check_orthogonal_basis(f);
    EXPECT_TRUE(a.orthogonal);
    EXPECT_FALSE(a.complete);
    EXPECT_FALSE(a.passed);
    const OperatorFamily g{"g", {gates::I(), gates::X(), gates::H(), gates::Z()}};
    EXPECT_FALSE(check_orthogonal_basis(g).orthogonal);
}

TEST(Lemma1, RandomInstancesAreWitnessed) {
    Rng r(41);
    for (std::size_t d : {2u, 4u, 8u}) {
        const Lemma1Instance in = random_lemma1_instance(d, r);
        const Lemma1Residuals res = verify_lemma1(in.n, in.m, in.a, in.b, in.p);
        EXPECT_TRUE(res.witnessed()) << d << " " << res.first << " " << res.second;
    }
}

TEST(Lemma1, PreconditionViolationsThrow) {
    Rng r(42);
    Lemma1Instance in = random_lemma1_instance(2, r);
    EXPECT_THROW(verify_lemma1(in.n, in.m, in.a, gates::X(), in.p), PreconditionError);
    EXPECT_THROW(verify_lemma1(in.n, in.m, in.a, in.b, UnitaryOp::identity(2)), ShapeError);
}

TEST(Theorem1, PauliConjugationFamilies) {
    const OperatorFamily fa = pauli_family(1);
    const OperatorFamily fc = adjoint_family(fa, "C");
    const PhaseTable t = derive_phases(fa, fa, fc, fc);
    // [DERIVED] B^dag A^dag B A = -I exactly when the two Paulis anticommute:
    // only pairs of distinct non-identity Paulis do.
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l) {
            const bool anti = k != 0 && l != 0 && k != l;
            EXPECT_LE(phase_gap(t.at(k, l), anti ? kPi : 0.0), 1e-12) << k << l;
        }
    const Theorem1Report r = verify_theorem1(fa, fa, fc, fc, t);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.pairs, 16u);
    EXPECT_LE(max_abs(r.m - Matrix::Identity(2, 2)), 1e-12);
}

TEST(Theorem1, WrongPhaseTableNamesThePair) {
    const OperatorFamily fa = pauli_family(1);
    const OperatorFamily fc = adjoint_family(fa, "C");
    PhaseTable t = derive_phases(fa, fa, fc, fc);
    t.set(1, 2, 0.0);
    try {
        verify_theorem1(fa, fa, fc, fc, t);
        FAIL() << "expected a pair precondition error";
    } catch (const PairPreconditionError& e) {
        EXPECT_EQ(e.k(), 1u);
        EXPECT_EQ(e.l(), 2u);
    }
}

TEST(Theorem1, NonScalarProductRejected) {
    Rng r(5);
    const OperatorFamily fa = single("A", random_unitary(2, r));
    const OperatorFamily fb = single("B", random_unitary(2, r));
    EXPECT_THROW(derive_phases(fa, fb, adjoint_family(fa, "C"), adjoint_family(fb, "D")), PairPreconditionError);
}

TEST(Theorem2, PaulisAgreeAndRandomUnitariesFailBoth) {
    const Theorem2Report p = verify_theorem2(pauli_family(1), pauli_family(1));
    EXPECT_TRUE(p.passed());
    EXPECT_EQ(p.pairs, 16u);
    Rng r(6);
    const Theorem2Report q = verify_theorem2(single("A", random_unitary(4, r)), single("B", random_unitary(4, r)));
    EXPECT_TRUE(q.passed());
    EXPECT_EQ(q.neither_holds, 1u);
}

TEST(Prop1, CommutingAndNoncommutingPairs) {
    const Prop1Result c = verify_prop1(rotation(Axis::z_axis(), 0.4), rotation(Axis::z_axis(), 1.1));
    EXPECT_TRUE(c.all());
    const Prop1Result nc = verify_prop1(gates::X(), gates::Z());
    EXPECT_TRUE(nc.agree());
    EXPECT_FALSE(nc.ab_eq_ba);
}

TEST(Prop1, RandomPairsAgree) {
    Rng r(7);
    for (int i = 0; i < 20; ++i) {
        const UnitaryOp a = random_unitary(4, r);
        EXPECT_TRUE(verify_prop1(a, a * a).all());
        EXPECT_TRUE(verify_prop1(a, random_unitary(4, r)).agree());
    }
}

TEST(Rotation, CommutatorMatchesClosedForm) {
    Rng r(8);
    for (int i = 0; i < 20; ++i) {
        const Axis n1 = Axis::normalized(r.normal(), r.normal(), r.normal());
        const Axis n2 = Axis::normalized(r.normal(), r.normal(), r.normal());
        const double p1 = r.uniform() * 4 * kPi, p2 = r.uniform() * 4 * kPi;
        const Matrix direct = commutator(rotation(n1, p1), rotation(n2, p2));
        EXPECT_LE(max_abs(direct - rotation_commutator_formula(n1, p1, n2, p2)), 1e-12);
        EXPECT_NEAR(rotation_commutator_norm(n1, p1, n2, p2), max_abs(direct), 1e-15);
    }
    EXPECT_LE(rotation_commutator_norm(Axis::x_axis(), 0.3, Axis::x_axis(), 1.7), 1e-15);
}

TEST(Remark1, ShiftsAlwaysCommute) {
    const Remark1Pair p = remark1_shift(parse_bits("101"), parse_bits("011"));
    EXPECT_TRUE(p.commute.all());
    EXPECT_EQ(p.layout.total_qubits(), 3u);
}

TEST(Remark1, XorOraclesCommuteOnSharedOrSeparateTargets) {
    Rng r(9);
    const BooleanTable fa = BooleanTable::random(2, 1, r), fb = BooleanTable::random(2, 1, r);
    EXPECT_TRUE(remark1_single_register(fa, fb).commute.all());
    EXPECT_TRUE(remark1_two_registers(fa, fb).commute.all());
    EXPECT_THROW(remark1_two_registers(fa, BooleanTable::zero(3, 1)), ShapeError);
}

}  // namespace
}  // namespace qnk::algebra
