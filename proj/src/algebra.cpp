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


#include "qnk/algebra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qnk::algebra {

namespace {

std::string pair_label(std::size_t k, std::size_t l) {
    return "(k=" + std::to_string(k) + ", l=" + std::to_string(l) + ")";
}

bool close(const Matrix& a, const Matrix& b) {
    return max_abs(a - b) <= kTolerance;
}

}  // namespace

std::size_t OperatorFamily::dim() const {
    if (members.empty()) {
        throw ShapeError("operator family '" + label + "' is empty");
    }
    const std::size_t d = members.front().dim();
    for (const auto& m : members) {
        if (m.dim() != d) {
            throw ShapeError("operator family '" + label + "' mixes dimensions " + std::to_string(d) + " and " +
                             std::to_string(m.dim()));
        }
    }
    return d;
}

double PhaseTable::at(std::size_t k, std::size_t l) const {
    auto it = entries.find({k, l});
    if (it == entries.end()) {
        throw PreconditionError("phase table has no entry for " + pair_label(k, l));
    }
    return it->second;
}

double phase_gap(double a, double b) {
    const double two_pi = 2 * std::numbers::pi;
    double d = std::fmod(std::abs(a - b), two_pi);
    return std::min(d, two_pi - d);
}

std::optional<double> scalar_identity_phase(const Matrix& m, double tolerance) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        return std::nullopt;
    }
    const Complex c = m.trace() / static_cast<double>(m.rows());
    if (std::abs(std::abs(c) - 1.0) > tolerance) {
        return std::nullopt;
    }
    Matrix diff = m;
    diff.diagonal().array() -= c;
    if (max_abs(diff) > tolerance) {
        return std::nullopt;
    }
    return std::arg(c);
}

OperatorFamily adjoint_family(const OperatorFamily& f, const std::string& label) {
    OperatorFamily out{label, {}};
    for (const auto& m : f.members) {
        out.members.push_back(m.adjoint());
    }
    return out;
}

OperatorFamily generated_family(const std::string& label, const UnitaryOp& u1, const UnitaryOp& u2,
                                std::size_t n) {
    if (u1.dim() != 2 || u2.dim() != 2) {
        throw ShapeError("generators must be single-qubit unitaries");
    }
    OperatorFamily out{label, {}};
    const std::uint64_t half = std::uint64_t{1} << n;
    const UnitaryOp factors[2][2] = {{UnitaryOp::identity(1), u2}, {u1, u1 * u2}};
    for (std::uint64_t a = 0; a < half; ++a) {
        for (std::uint64_t b = 0; b < half; ++b) {
            UnitaryOp acc = UnitaryOp::identity(0);
            for (std::size_t q = 0; q < n; ++q) {
                const std::size_t shift = n - 1 - q;
                acc = tensor(acc, factors[(a >> shift) & 1u][(b >> shift) & 1u]);
            }
            out.members.push_back(acc);
        }
    }
    return out;
}

OperatorFamily pauli_family(std::size_t n) {
    const UnitaryOp* paulis[4] = {&gates::I(), &gates::X(), &gates::Y(), &gates::Z()};
    OperatorFamily out{"pauli" + std::to_string(n), {}};
    const std::uint64_t count = std::uint64_t{1} << (2 * n);
    for (std::uint64_t i = 0; i < count; ++i) {
        UnitaryOp acc = UnitaryOp::identity(0);
        for (std::size_t q = 0; q < n; ++q) {
            acc = tensor(acc, *paulis[(i >> (2 * (n - 1 - q))) & 3u]);
        }
        out.members.push_back(acc);
    }
    return out;
}

BasisReport check_orthogonal_basis(const OperatorFamily& f, const std::optional<Matrix>& test) {
    const std::size_t d = f.dim();
    const auto count = static_cast<Eigen::Index>(f.size());
    BasisReport r;
    r.gram = Matrix::Zero(count, count);
    for (Eigen::Index i = 0; i < count; ++i) {
        for (Eigen::Index j = 0; j < count; ++j) {
            r.gram(i, j) = hs_inner(f.members[i].matrix(), f.members[j].matrix());
            const Complex expected = i == j ? Complex(static_cast<double>(d), 0) : Complex(0, 0);
            r.max_gram_deviation = std::max(r.max_gram_deviation, std::abs(r.gram(i, j) - expected));
        }
    }
    r.orthogonal = r.max_gram_deviation <= kTolerance;
    r.complete = f.size() == d * d;
    r.passed = r.orthogonal && r.complete;
    if (test) {
        if (static_cast<std::size_t>(test->rows()) != d || static_cast<std::size_t>(test->cols()) != d) {
            throw ShapeError("test matrix does not match the family dimension");
        }
        Matrix rebuilt = Matrix::Zero(test->rows(), test->cols());
        for (const auto& m : f.members) {
            // a_i = Tr(rho M_i^dag) / d
            const Complex a = hs_inner(*test, m.matrix()) / static_cast<double>(d);
            r.coefficients.push_back(a);
            rebuilt += a * m.matrix();
        }
        r.reconstruction_error = max_abs(rebuilt - *test);
    }
    return r;
}

Lemma1Residuals verify_lemma1(const UnitaryOp& n, const UnitaryOp& m, const UnitaryOp& a, const UnitaryOp& b,
                              const UnitaryOp& p) {
    const std::size_t d = a.dim();
    for (const UnitaryOp* op : {&n, &m, &b, &p}) {
        if (op->dim() != d) {
            throw ShapeError("lemma inputs must share one dimension");
        }
    }
    const Matrix& P = p.matrix();
    const Matrix Pinv = P.adjoint();
    const double nam = max_abs(n.matrix() * a.matrix() * m.matrix() - b.matrix());
    if (nam > kTolerance) {
        std::ostringstream os;
        os << "N A M != B (max deviation " << nam << ")";
        throw PreconditionError(os.str());
    }
    const double sim = max_abs(Pinv * b.matrix() * P - a.matrix());
    if (sim > kTolerance) {
        std::ostringstream os;
        os << "P^-1 B P != A (max deviation " << sim << ")";
        throw PreconditionError(os.str());
    }
    const auto dd = static_cast<Eigen::Index>(d * d);
    Lemma1Residuals r;
    const Matrix first = kron(n.matrix() * Pinv, (P * m.matrix()).transpose()) - Matrix::Identity(dd, dd);
    r.first = (first * realign(b.matrix())).norm();
    // P' = P^-1 satisfies P'^-1 A P' = B.
    const Matrix& Pp = Pinv;
    const Matrix second = kron(n.matrix(), m.matrix().transpose()) - kron(Pp.adjoint(), Pp.transpose());
    r.second = (second * realign(a.matrix())).norm();
    return r;
}

Lemma1Instance random_lemma1_instance(std::size_t dim, Rng& rng) {
    UnitaryOp n = random_unitary(dim, rng);
    UnitaryOp p = random_unitary(dim, rng);
    UnitaryOp a = random_unitary(dim, rng);
    UnitaryOp b = p * a * p.adjoint();
    UnitaryOp m = a.adjoint() * n.adjoint() * b;
    return Lemma1Instance{n, m, a, b, p};
}

PhaseTable derive_phases(const OperatorFamily& fa, const OperatorFamily& fb, const OperatorFamily& fc,
                         const OperatorFamily& fd) {
    PhaseTable t;
    for (std::size_t k = 0; k < fa.size(); ++k) {
        for (std::size_t l = 0; l < fb.size(); ++l) {
            const Matrix prod =
                fd.members[l].matrix() * fc.members[k].matrix() * fb.members[l].matrix() * fa.members[k].matrix();
            auto phi = scalar_identity_phase(prod);
            if (!phi) {
                throw PairPreconditionError("D_l C_k B_l A_k is not a scalar at " + pair_label(k, l), k, l);
            }
            t.set(k, l, *phi);
        }
    }
    return t;
}

Theorem1Report verify_theorem1(const OperatorFamily& fa, const OperatorFamily& fb, const OperatorFamily& fc,
                               const OperatorFamily& fd, const PhaseTable& phases) {
    const std::size_t d = fa.dim();
    if (fb.dim() != d || fc.dim() != d || fd.dim() != d) {
        throw ShapeError("theorem families must share one dimension");
    }
    if (fa.size() != fc.size() || fb.size() != fd.size()) {
        throw ShapeError("families A/C and B/D must be indexed alike");
    }
    for (std::size_t k = 0; k < fa.size(); ++k) {
        for (std::size_t l = 0; l < fb.size(); ++l) {
            const Matrix prod =
                fd.members[l].matrix() * fc.members[k].matrix() * fb.members[l].matrix() * fa.members[k].matrix();
            auto phi = scalar_identity_phase(prod);
            const double expected = phases.at(k, l);
            if (!phi) {
                throw PairPreconditionError("D_l C_k B_l A_k is not a scalar at " + pair_label(k, l), k, l);
            }
            if (phase_gap(*phi, expected) > kTolerance) {
                std::ostringstream os;
                os << "D_l C_k B_l A_k = e^{i " << *phi << "} I but the table says " << expected << " at "
                   << pair_label(k, l);
                throw PairPreconditionError(os.str(), k, l);
            }
        }
    }

    Theorem1Report r;
    r.m = fc.members[0].matrix() * fa.members[0].matrix();
    r.n = fd.members[0].matrix() * fb.members[0].matrix();
    for (std::size_t k = 0; k < fa.size(); ++k) {
        r.m_spread = std::max(r.m_spread, max_abs(fc.members[k].matrix() * fa.members[k].matrix() - r.m));
    }
    for (std::size_t l = 0; l < fb.size(); ++l) {
        r.n_spread = std::max(r.n_spread, max_abs(fd.members[l].matrix() * fb.members[l].matrix() - r.n));
    }
    const Matrix n_kron_mt = kron(r.n, r.m.transpose());
    for (std::size_t k = 0; k < fa.size(); ++k) {
        const Matrix& A = fa.members[k].matrix();
        const Matrix a_term = kron(A.adjoint(), A.transpose());
        for (std::size_t l = 0; l < fb.size(); ++l) {
            const Complex w = std::polar(1.0, -phases.at(k, l));
            const Vector v = realign(fb.members[l].matrix().adjoint());
            r.max_residual = std::max(r.max_residual, ((w * n_kron_mt - a_term) * v).norm());
            ++r.pairs;
        }
    }
    r.passed = r.m_spread <= kTolerance && r.n_spread <= kTolerance && r.max_residual <= kTolerance;
    return r;
}

Theorem2Report verify_theorem2(const OperatorFamily& fa, const OperatorFamily& fb) {
    const std::size_t d = fa.dim();
    if (fb.dim() != d) {
        throw ShapeError("theorem families must share one dimension");
    }
    Theorem2Report r;
    for (std::size_t k = 0; k < fa.size(); ++k) {
        const Matrix& A = fa.members[k].matrix();
        const Matrix C = A.adjoint();
        for (std::size_t l = 0; l < fb.size(); ++l) {
            const Matrix& B = fb.members[l].matrix();
            const Matrix D = B.adjoint();
            const bool commute = scalar_identity_phase(C * B * (B * C).adjoint()).has_value();
            const bool holds = scalar_identity_phase(D * C * B * A).has_value();
            ++r.pairs;
            if (commute && holds) {
                ++r.both_hold;
            } else if (!commute && !holds) {
                ++r.neither_holds;
            } else {
                r.falsified.emplace_back(k, l);
            }
        }
    }
    return r;
}

Prop1Result verify_prop1(const UnitaryOp& ua, const UnitaryOp& ub) {
    if (ua.dim() != ub.dim()) {
        throw ShapeError("prop1 operands differ in dimension");
    }
    const Matrix& a = ua.matrix();
    const Matrix& b = ub.matrix();
    const Matrix ad = a.adjoint();
    const Matrix bd = b.adjoint();
    Prop1Result r;
    r.ab_eq_ba = close(a * b, b * a);
    r.bdag_adag = close(bd * ad, ad * bd);
    r.b_adag = close(b * ad, ad * b);
    return r;
}

double rotation_commutator_norm(const Axis& n1, double phi1, const Axis& n2, double phi2) {
    return max_abs(commutator(rotation(n1, phi1), rotation(n2, phi2)));
}

Matrix rotation_commutator_formula(const Axis& n1, double phi1, const Axis& n2, double phi2) {
    const double cx = n1.y() * n2.z() - n1.z() * n2.y();
    const double cy = n1.z() * n2.x() - n1.x() * n2.z();
    const double cz = n1.x() * n2.y() - n1.y() * n2.x();
    const Matrix cross_sigma =
        cx * gates::X().matrix() + cy * gates::Y().matrix() + cz * gates::Z().matrix();
    return Complex(0, -2) * std::sin(phi1 / 2) * std::sin(phi2 / 2) * cross_sigma;
}

Remark1Pair remark1_shift(const Bits& s_a, const Bits& s_b) {
    if (s_a.size() != s_b.size()) {
        throw ShapeError("shift strings differ in length");
    }
    const std::uint64_t a = bits_to_index(s_a);
    const std::uint64_t b = bits_to_index(s_b);
    const std::size_t n = s_a.size();
    UnitaryOp ua = permutation_unitary(n, [a](std::uint64_t x) { return x ^ a; });
    UnitaryOp ub = permutation_unitary(n, [b](std::uint64_t x) { return x ^ b; });
    Prop1Result c = verify_prop1(ua, ub);
    return Remark1Pair{Layout{{"m", n}}, std::move(ua), std::move(ub), c};
}

Remark1Pair remark1_single_register(const BooleanTable& f_a, const BooleanTable& f_b) {
    if (f_a.arity() != f_b.arity() || f_a.width() != f_b.width()) {
        throw ShapeError("function tables differ in shape");
    }
    UnitaryOp ua = xor_oracle(f_a);
    UnitaryOp ub = xor_oracle(f_b);
    Prop1Result c = verify_prop1(ua, ub);
    return Remark1Pair{Layout{{"m", f_a.arity()}, {"s", f_a.width()}}, std::move(ua), std::move(ub), c};
}

Remark1Pair remark1_two_registers(const BooleanTable& f_a, const BooleanTable& f_b) {
    if (f_a.arity() != f_b.arity() || f_a.width() != f_b.width()) {
        throw ShapeError("function tables differ in shape");
    }
    Layout layout{{"m", f_a.arity()}, {"ra", f_a.width()}, {"rb", f_b.width()}};
    UnitaryOp ua(lift(xor_oracle(f_a), layout, {"m", "ra"}));
    UnitaryOp ub(lift(xor_oracle(f_b), layout, {"m", "rb"}));
    Prop1Result c = verify_prop1(ua, ub);
    return Remark1Pair{std::move(layout), std::move(ua), std::move(ub), c};
}

}  // namespace qnk::algebra
