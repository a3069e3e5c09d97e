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


#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnk/bits.hpp"
#include "qnk/boolean_table.hpp"
#include "qnk/error.hpp"
#include "qnk/state.hpp"
#include "qnk/unitary.hpp"

namespace qnk::algebra {

/// A labelled list of unitaries of a common dimension.
struct OperatorFamily {
    std::string label;
    std::vector<UnitaryOp> members;

    /// Throws ShapeError on an empty family or mixed dimensions.
    std::size_t dim() const;
    std::size_t size() const { return members.size(); }
};

/// phi(k, l) indexed by family positions.
struct PhaseTable {
    std::map<std::pair<std::size_t, std::size_t>, double> entries;

    double at(std::size_t k, std::size_t l) const;
    void set(std::size_t k, std::size_t l, double phi) { entries[{k, l}] = phi; }
};

/// Raised when a pairwise precondition fails; carries the offending indices.
class PairPreconditionError : public PreconditionError {
   public:
    PairPreconditionError(const std::string& what, std::size_t k, std::size_t l)
        : PreconditionError(what), k_(k), l_(l) {}
    std::size_t k() const { return k_; }
    std::size_t l() const { return l_; }

   private:
    std::size_t k_;
    std::size_t l_;
};

/// Distance between two angles on the circle, in [0, pi].
double phase_gap(double a, double b);

/// arg(tr(m)/d) when m = e^{i phi} I within tolerance, else nothing.
std::optional<double> scalar_identity_phase(const Matrix& m, double tolerance = kTolerance);

/// Member-wise adjoints.
OperatorFamily adjoint_family(const OperatorFamily& f, const std::string& label);

/// Families generated as U1^a U2^b over a, b in {0,1}^n, indexed by (a, b)
/// with a the more significant half; member index i <-> bits of a then b.
OperatorFamily generated_family(const std::string& label, const UnitaryOp& u1, const UnitaryOp& u2,
                                std::size_t n);
/// All n-fold tensor products of {I, X, Y, Z}.
OperatorFamily pauli_family(std::size_t n);

struct BasisReport {
    Matrix gram;
    double max_gram_deviation = 0;  // max |G_ij - d delta_ij|
    bool orthogonal = false;
    bool complete = false;          // |members| = d^2
    bool passed = false;
    std::vector<Complex> coefficients;
    double reconstruction_error = 0;  // max |sum a_i M_i - rho|
};

/// Gram matrix check; with `test` supplied, also expands it in the family.
BasisReport check_orthogonal_basis(const OperatorFamily& f, const std::optional<Matrix>& test = std::nullopt);

struct Lemma1Residuals {
    double first = 0;   // |[N P^-1 (x) (P M)^T - I] vec(B)|
    double second = 0;  // |[N (x) M^T - P' ^-1 (x) P'^T] vec(A)| with P' = P^-1
    bool witnessed() const { return first <= kTolerance && second <= kTolerance; }
};

/// Requires N A M = B and P^-1 B P = A; throws PreconditionError otherwise.
Lemma1Residuals verify_lemma1(const UnitaryOp& n, const UnitaryOp& m, const UnitaryOp& a, const UnitaryOp& b,
                              const UnitaryOp& p);

struct Lemma1Instance {
    UnitaryOp n, m, a, b, p;
};
/// Random unitaries N, P, A; B = P A P^-1 and M = A^dag N^dag B.
Lemma1Instance random_lemma1_instance(std::size_t dim, Rng& rng);

struct Theorem1Report {
    std::size_t pairs = 0;
    Matrix m;  // C_k A_k for k = 0
    Matrix n;  // D_l B_l for l = 0
    double m_spread = 0;  // max_k |C_k A_k - M|
    double n_spread = 0;  // max_l |D_l B_l - N|
    double max_residual = 0;
    bool passed = false;
};

/// Checks D_l C_k B_l A_k = e^{i phi(k,l)} I for every pair (throwing
/// PairPreconditionError at the first failure), then the k/l independence of
/// M and N and the realignment residuals.
Theorem1Report verify_theorem1(const OperatorFamily& fa, const OperatorFamily& fb, const OperatorFamily& fc,
                               const OperatorFamily& fd, const PhaseTable& phases);

/// phi(k,l) read off D_l C_k B_l A_k; throws PairPreconditionError when a
/// product is not a scalar.
PhaseTable derive_phases(const OperatorFamily& fa, const OperatorFamily& fb, const OperatorFamily& fc,
                         const OperatorFamily& fd);

struct Theorem2Report {
    std::size_t pairs = 0;
    std::size_t both_hold = 0;
    std::size_t neither_holds = 0;
    std::vector<std::pair<std::size_t, std::size_t>> falsified;
    bool passed() const { return falsified.empty(); }
};

/// With C = A^dag and D = B^dag, compares "C_k B_l = e^{i phi} B_l C_k" against
/// "D_l C_k B_l A_k = e^{i phi} I" pair by pair.
Theorem2Report verify_theorem2(const OperatorFamily& fa, const OperatorFamily& fb);

struct Prop1Result {
    bool ab_eq_ba = false;        // U_A U_B = U_B U_A
    bool bdag_adag = false;       // U_B^dag U_A^dag = U_A^dag U_B^dag
    bool b_adag = false;          // U_B U_A^dag = U_A^dag U_B
    bool agree() const { return ab_eq_ba == bdag_adag && bdag_adag == b_adag; }
    bool all() const { return ab_eq_ba && bdag_adag && b_adag; }
};

Prop1Result verify_prop1(const UnitaryOp& ua, const UnitaryOp& ub);

/// max |[R(n1, phi1), R(n2, phi2)]|
double rotation_commutator_norm(const Axis& n1, double phi1, const Axis& n2, double phi2);
/// -2i sin(phi1/2) sin(phi2/2) (n1 x n2) . sigma
Matrix rotation_commutator_formula(const Axis& n1, double phi1, const Axis& n2, double phi2);

struct Remark1Pair {
    Layout layout;
    UnitaryOp ua;
    UnitaryOp ub;
    Prop1Result commute;
};

/// Kind 1: |m> -> |m xor s> on one register.
Remark1Pair remark1_shift(const Bits& s_a, const Bits& s_b);
/// Kind 2: both parties XOR F(m) into one auxiliary register.
Remark1Pair remark1_single_register(const BooleanTable& f_a, const BooleanTable& f_b);
/// Kind 3: each party XORs F(m) into its own auxiliary register.
Remark1Pair remark1_two_registers(const BooleanTable& f_a, const BooleanTable& f_b);

}  // namespace qnk::algebra
