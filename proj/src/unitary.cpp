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

#include "qnk/unitary.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qnk/error.hpp"

namespace qnk {

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

std::size_t log2_exact(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    return k;
}

Axis::Axis(double x, double y, double z) : v_{x, y, z} {
    const double norm2 = x * x + y * y + z * z;
    if (std::abs(norm2 - 1.0) > kScalarTolerance) {
        throw NormalizationError("rotation axis is not a unit vector (|n|^2 = " + std::to_string(norm2) + ")");
    }
}

Axis Axis::normalized(double x, double y, double z) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (norm < kScalarTolerance) {
        throw NormalizationError("cannot normalize a zero axis");
    }
    return Axis(x / norm, y / norm, z / norm);
}

Matrix Axis::pauli_combination() const {
    Matrix m(2, 2);
    m << Complex(v_[2], 0), Complex(v_[0], -v_[1]), Complex(v_[0], v_[1]), Complex(-v_[2], 0);
    return m;
}

double Axis::cross_norm(const Axis& o) const {
    const double cx = v_[1] * o.v_[2] - v_[2] * o.v_[1];
    const double cy = v_[2] * o.v_[0] - v_[0] * o.v_[2];
    const double cz = v_[0] * o.v_[1] - v_[1] * o.v_[0];
    return std::sqrt(cx * cx + cy * cy + cz * cz);
}

UnitaryOp::UnitaryOp(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw ShapeError("unitary must be square, got " + std::to_string(m_.rows()) + "x" +
                         std::to_string(m_.cols()));
    }
    if (!is_power_of_two(static_cast<std::size_t>(m_.rows()))) {
        throw ShapeError("unitary dimension " + std::to_string(m_.rows()) + " is not a power of two");
    }
    const double defect = unitarity_defect();
    if (defect > kTolerance) {
        throw NormalizationError("matrix is not unitary (max |UU^dag - I| = " + std::to_string(defect) + ")");
    }
}

UnitaryOp UnitaryOp::identity(std::size_t qubits) {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << qubits);
    return UnitaryOp(Matrix::Identity(d, d), Trusted{});
}

UnitaryOp UnitaryOp::adjoint() const {
    return UnitaryOp(m_.adjoint(), Trusted{});
}

double UnitaryOp::unitarity_defect() const {
    return max_abs(m_ * m_.adjoint() - Matrix::Identity(m_.rows(), m_.cols()));
}

UnitaryOp operator*(const UnitaryOp& a, const UnitaryOp& b) {
    if (a.dim() != b.dim()) {
        throw ShapeError("cannot multiply unitaries of dimension " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()));
    }
    return UnitaryOp(a.m_ * b.m_, UnitaryOp::Trusted{});
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b) {
    return UnitaryOp(kron(a.matrix(), b.matrix()), UnitaryOp::Trusted{});
}

UnitaryOp tensor_all(const std::vector<UnitaryOp>& ops) {
    UnitaryOp acc = UnitaryOp::identity(0);
    for (const auto& op : ops) {
        acc = tensor(acc, op);
    }
    return acc;
}

UnitaryOp power(const UnitaryOp& u, unsigned exponent) {
    UnitaryOp acc = UnitaryOp::identity(u.qubits());
    for (unsigned i = 0; i < exponent; ++i) {
        acc = acc * u;
    }
    return acc;
}

namespace gates {

namespace {
UnitaryOp make2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return UnitaryOp(std::move(m));
}
}  // namespace

const UnitaryOp& I() {
    static const UnitaryOp g = make2(1, 0, 0, 1);
    return g;
}
const UnitaryOp& X() {
    static const UnitaryOp g = make2(0, 1, 1, 0);
    return g;
}
const UnitaryOp& Y() {
    static const UnitaryOp g = make2(0, Complex(0, -1), Complex(0, 1), 0);
    return g;
}
const UnitaryOp& Z() {
    static const UnitaryOp g = make2(1, 0, 0, -1);
    return g;
}
const UnitaryOp& H() {
    static const double s = 1.0 / std::sqrt(2.0);
    static const UnitaryOp g = make2(s, s, s, -s);
    return g;
}

UnitaryOp hadamard_layer(std::size_t qubits) {
    return tensor_all(std::vector<UnitaryOp>(qubits, H()));
}

}  // namespace gates

UnitaryOp rotation(const Axis& n, double phi) {
    Matrix m = std::cos(phi / 2) * Matrix::Identity(2, 2) +
               Complex(0, std::sin(phi / 2)) * n.pauli_combination();
    return UnitaryOp(std::move(m));
}

UnitaryOp polarization_rotation(double theta) {
    return rotation(Axis(0, -1, 0), 2 * theta);
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw ShapeError("commutator operands must be square matrices of equal dimension");
    }
    return a * b - b * a;
}

Matrix commutator(const UnitaryOp& a, const UnitaryOp& b) {
    return commutator(a.matrix(), b.matrix());
}

Complex hs_inner(const Matrix& m1, const Matrix& m2) {
    if (m1.rows() != m2.rows() || m1.cols() != m2.cols()) {
        throw ShapeError("Hilbert-Schmidt inner product of matrices with different shapes");
    }
    // Tr(m1 m2^dag) = sum_ij m1_ij conj(m2_ij)
    return (m1.array() * m2.array().conjugate()).sum();
}

Vector realign(const Matrix& m) {
    Vector v(m.size());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            v(k++) = m(i, j);
        }
    }
    return v;
}

UnitaryOp permutation_unitary(std::size_t qubits, const std::function<std::uint64_t(std::uint64_t)>& map) {
    const std::uint64_t d = std::uint64_t{1} << qubits;
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    std::vector<bool> hit(d, false);
    for (std::uint64_t x = 0; x < d; ++x) {
        const std::uint64_t y = map(x);
        if (y >= d || hit[y]) {
            throw PreconditionError("basis map is not a permutation");
        }
        hit[y] = true;
        m(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = 1.0;
    }
    return UnitaryOp(std::move(m), UnitaryOp::Trusted{});
}

Matrix random_complex_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            m(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    return m;
}

UnitaryOp random_unitary(std::size_t dim, Rng& rng) {
    Matrix g = random_complex_matrix(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
    return UnitaryOp(std::move(q));
}

}  // namespace qnk
