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


#include "qnk/pqc.hpp"

#include "qnk/error.hpp"

namespace qnk::pqc {

GeneratorReport validate_generators(const UnitaryOp& u1, const UnitaryOp& u2) {
    if (u1.dim() != 2 || u2.dim() != 2) {
        throw ShapeError("generators must be 2x2");
    }
    const Matrix& a = u1.matrix();
    const Matrix& b = u2.matrix();
    GeneratorReport r;
    r.tr_u1 = a.trace();
    r.tr_u2 = b.trace();
    r.tr_u1u2 = (a * b).trace();
    r.tr_u1dag_u2 = (a.adjoint() * b).trace();
    r.anticommutator = max_abs(a * b + b * a);
    r.passed = std::abs(r.tr_u1) <= kTolerance && std::abs(r.tr_u2) <= kTolerance &&
               std::abs(r.tr_u1u2) <= kTolerance && std::abs(r.tr_u1dag_u2) <= kTolerance &&
               r.anticommutator <= kTolerance;
    return r;
}

PqcKey PqcKey::operator^(const PqcKey& other) const {
    return PqcKey{xor_bits(alpha, other.alpha), xor_bits(beta, other.beta)};
}

std::string PqcKey::to_string() const {
    return format_bits(alpha) + ":" + format_bits(beta);
}

PqcScheme::PqcScheme(std::string name, UnitaryOp u1, UnitaryOp u2, std::size_t n)
    : name_(std::move(name)), u1_(std::move(u1)), u2_(std::move(u2)), n_(n) {
    if (!validate_generators(u1_, u2_).passed) {
        throw PreconditionError("generators of scheme '" + name_ + "' are not a valid anticommuting pair");
    }
    if (n_ == 0 || 2 * n_ > 62) {
        throw ConfigError("scheme qubit count must be in 1..31");
    }
}

PqcScheme PqcScheme::named(const std::string& name, std::size_t n) {
    if (name == "XZ") {
        return PqcScheme(name, gates::X(), gates::Z(), n);
    }
    if (name == "XY") {
        return PqcScheme(name, gates::X(), gates::Y(), n);
    }
    if (name == "YH") {
        return PqcScheme(name, gates::Y(), gates::H(), n);
    }
    throw ConfigError("unknown scheme '" + name + "' (expected XZ, XY or YH)");
}

PqcKey PqcScheme::key_at(std::uint64_t index) const {
    if (index >= key_count()) {
        throw ShapeError("key index out of range");
    }
    return PqcKey{index_to_bits(index >> n_, n_), index_to_bits(index & ((std::uint64_t{1} << n_) - 1), n_)};
}

PqcKey PqcScheme::random_key(Rng& rng) const {
    Bits alpha = random_bits(n_, rng);
    Bits beta = random_bits(n_, rng);
    return PqcKey{std::move(alpha), std::move(beta)};
}

void PqcScheme::check_key(const PqcKey& k) const {
    if (k.alpha.size() != n_ || k.beta.size() != n_) {
        throw ShapeError("key length does not match the scheme's " + std::to_string(n_) + " qubits");
    }
}

UnitaryOp key_unitary(const PqcScheme& s, const PqcKey& k) {
    s.check_key(k);
    const UnitaryOp u1u2 = s.u1() * s.u2();
    UnitaryOp acc = UnitaryOp::identity(0);
    for (std::size_t q = 0; q < s.n(); ++q) {
        const bool a = k.alpha[q];
        const bool b = k.beta[q];
        const UnitaryOp& f = a ? (b ? u1u2 : s.u1()) : (b ? s.u2() : gates::I());
        acc = tensor(acc, f);
    }
    return acc;
}

QState average_cipher(const PqcScheme& s, const QState& rho) {
    if (s.n() > kMaxAverageQubits) {
        throw ResourceLimitError("key enumeration over " + std::to_string(s.n()) + " qubits exceeds the " +
                                 std::to_string(kMaxAverageQubits) + "-qubit limit");
    }
    if (rho.qubits() != s.n()) {
        throw ShapeError("state has " + std::to_string(rho.qubits()) + " qubits, scheme expects " +
                         std::to_string(s.n()));
    }
    const Matrix r = rho.density_matrix();
    Matrix acc = Matrix::Zero(r.rows(), r.cols());
    for (std::uint64_t i = 0; i < s.key_count(); ++i) {
        const UnitaryOp op = key_unitary(s, s.key_at(i));
        const Matrix& u = op.matrix();
        acc += u * r * u.adjoint();
    }
    acc /= static_cast<double>(s.key_count());
    return QState::mixed(rho.layout(), std::move(acc));
}

int generalized_commutation_phase(const PqcScheme& s, const PqcKey& k, const PqcKey& l) {
    s.check_key(k);
    s.check_key(l);
    const int e = dot_bits(k.beta, l.alpha) + dot_bits(k.alpha, l.beta);
    return (e & 1) ? -1 : 1;
}

std::vector<NamedUnitary> standard_candidates() {
    return {{"I", gates::I()}, {"X", gates::X()}, {"Y", gates::Y()}, {"Z", gates::Z()}, {"H", gates::H()}};
}

std::vector<std::pair<std::string, std::string>> search_generator_pairs(const std::vector<NamedUnitary>& candidates) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [na, ua] : candidates) {
        for (const auto& [nb, ub] : candidates) {
            if (ua.dim() == 2 && ub.dim() == 2 && validate_generators(ua, ub).passed) {
                out.emplace_back(na, nb);
            }
        }
    }
    return out;
}

}  // namespace qnk::pqc
