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
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qnk/rng.hpp"

namespace qnk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerance for algebraic identities (unitarity, trace, factorization).
inline constexpr double kTolerance = 1e-9;
/// Tolerance for scalar constructions (axis normalization, rotations).
inline constexpr double kScalarTolerance = 1e-12;

/// Largest absolute entry.
double max_abs(const Matrix& m);
bool is_power_of_two(std::size_t n);
/// log2 of a power of two.
std::size_t log2_exact(std::size_t n);

/// Unit vector on the Bloch sphere.
class Axis {
   public:
    /// Throws NormalizationError unless x^2 + y^2 + z^2 = 1 within 1e-12.
    Axis(double x, double y, double z);
    /// Rescales a nonzero vector onto the unit sphere.
    static Axis normalized(double x, double y, double z);
    static Axis x_axis() { return Axis(1, 0, 0); }
    static Axis y_axis() { return Axis(0, 1, 0); }
    static Axis z_axis() { return Axis(0, 0, 1); }

    double x() const { return v_[0]; }
    double y() const { return v_[1]; }
    double z() const { return v_[2]; }
    const std::array<double, 3>& components() const { return v_; }

    /// n . sigma
    Matrix pauli_combination() const;
    /// |n1 x n2|
    double cross_norm(const Axis& other) const;

   private:
    std::array<double, 3> v_;
};

/// A dense unitary matrix whose dimension is a power of two.
class UnitaryOp {
   public:
    /// Validates squareness, power-of-two dimension and U U^dagger = I within 1e-9.
    explicit UnitaryOp(Matrix m);
    static UnitaryOp identity(std::size_t qubits);

    const Matrix& matrix() const { return m_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    std::size_t qubits() const { return log2_exact(dim()); }

    UnitaryOp adjoint() const;
    /// max |U U^dagger - I|
    double unitarity_defect() const;

    friend UnitaryOp operator*(const UnitaryOp& a, const UnitaryOp& b);
    friend UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b);
    friend UnitaryOp permutation_unitary(std::size_t qubits,
                                         const std::function<std::uint64_t(std::uint64_t)>& map);

   private:
    struct Trusted {};
    UnitaryOp(Matrix m, Trusted) : m_(std::move(m)) {}

    Matrix m_;
};

Matrix kron(const Matrix& a, const Matrix& b);
/// Kronecker product; the first operand acts on the more significant qubits.
UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b);
UnitaryOp tensor_all(const std::vector<UnitaryOp>& ops);
/// U^power for a non-negative integer power.
UnitaryOp power(const UnitaryOp& u, unsigned exponent);

namespace gates {
const UnitaryOp& I();
const UnitaryOp& X();
const UnitaryOp& Y();
const UnitaryOp& Z();
const UnitaryOp& H();
/// H on each of `qubits` qubits.
UnitaryOp hadamard_layer(std::size_t qubits);
}  // namespace gates

/// cos(phi/2) I + i sin(phi/2) (n . sigma)
UnitaryOp rotation(const Axis& n, double phi);

/// Polarization rotation R(theta) taking |0> to cos(theta)|0> + sin(theta)|1>.
/// Equal to rotation(-y, 2 theta).
UnitaryOp polarization_rotation(double theta);

/// a b - b a
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix commutator(const UnitaryOp& a, const UnitaryOp& b);

/// Hilbert-Schmidt inner product Tr(m1 m2^dagger).
Complex hs_inner(const Matrix& m1, const Matrix& m2);

/// Row-major vectorization. realign(A X B) = (A kron B^T) realign(X).
Vector realign(const Matrix& m);

/// Permutation unitary |x> -> |map(x)> on `qubits` qubits; `map` must be a bijection.
UnitaryOp permutation_unitary(std::size_t qubits, const std::function<std::uint64_t(std::uint64_t)>& map);

/// QR-orthonormalized complex Gaussian matrix.
UnitaryOp random_unitary(std::size_t dim, Rng& rng);
Matrix random_complex_matrix(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace qnk
