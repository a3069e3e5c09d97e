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

#include "qnk/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include <Eigen/Eigenvalues>

#include "qnk/error.hpp"

namespace qnk {

namespace {

void check_pure_limit(std::size_t qubits) {
    if (qubits > kMaxPureQubits) {
        throw ResourceLimitError("state vector of " + std::to_string(qubits) + " qubits exceeds the " +
                                 std::to_string(kMaxPureQubits) + "-qubit limit");
    }
}

void check_mixed_limit(std::size_t qubits) {
    if (qubits > kMaxMixedQubits) {
        throw ResourceLimitError("density matrix of " + std::to_string(qubits) + " qubits exceeds the " +
                                 std::to_string(kMaxMixedQubits) + "-qubit limit");
    }
}

/// Index bookkeeping for a subset of qubits inside an N-qubit basis index.
struct Selection {
    std::vector<std::uint64_t> inner;  // offsets of the selected qubits' local index
    std::vector<std::uint64_t> outer;  // offsets of the remaining qubits' local index
};

Selection select_qubits(std::size_t total, const std::vector<std::size_t>& positions) {
    std::vector<bool> chosen(total, false);
    for (auto p : positions) {
        chosen[p] = true;
    }
    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < total; ++q) {
        if (!chosen[q]) {
            rest.push_back(q);
        }
    }
    auto offsets = [total](const std::vector<std::size_t>& pos) {
        const std::size_t n = pos.size();
        std::vector<std::uint64_t> out(std::size_t{1} << n, 0);
        for (std::uint64_t j = 0; j < out.size(); ++j) {
            std::uint64_t off = 0;
            for (std::size_t a = 0; a < n; ++a) {
                if ((j >> (n - 1 - a)) & 1u) {
                    off |= std::uint64_t{1} << (total - 1 - pos[a]);
                }
            }
            out[j] = off;
        }
        return out;
    };
    return Selection{offsets(positions), offsets(rest)};
}

/// Applies `u` to the selected qubits of every column of `m`.
void apply_columns(const Matrix& u, const Selection& sel, Matrix& m) {
    const auto dt = static_cast<Eigen::Index>(sel.inner.size());
    Vector buf(dt);
    Vector res(dt);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (auto base : sel.outer) {
            for (Eigen::Index j = 0; j < dt; ++j) {
                buf(j) = m(static_cast<Eigen::Index>(base + sel.inner[j]), c);
            }
            res.noalias() = u * buf;
            for (Eigen::Index j = 0; j < dt; ++j) {
                m(static_cast<Eigen::Index>(base + sel.inner[j]), c) = res(j);
            }
        }
    }
}

void require_same_layout(const QState& a, const QState& b) {
    if (!(a.layout() == b.layout())) {
        throw ShapeError("layout mismatch: " + a.layout().to_string() + " vs " + b.layout().to_string());
    }
}

std::vector<std::string> complement(const Layout& layout, const std::vector<std::string>& names) {
    for (const auto& n : names) {
        layout.at(n);
    }
    std::vector<std::string> out;
    for (const auto& r : layout.registers()) {
        if (std::find(names.begin(), names.end(), r.name) == names.end()) {
            out.push_back(r.name);
        }
    }
    return out;
}

}  // namespace

QState make_trusted_pure(Layout layout, Vector v) {
    return QState(std::move(layout), std::move(v));
}

QState make_trusted_mixed(Layout layout, Matrix m) {
    return QState(std::move(layout), std::move(m));
}

// ---------------------------------------------------------------------------
// Layout

Layout::Layout(std::initializer_list<Register> regs) : Layout(std::vector<Register>(regs)) {}

Layout::Layout(std::vector<Register> regs) : regs_(std::move(regs)) {
    std::unordered_set<std::string> seen;
    for (const auto& r : regs_) {
        if (r.name.empty()) {
            throw ShapeError("register names must be non-empty");
        }
        if (!seen.insert(r.name).second) {
            throw ShapeError("duplicate register name '" + r.name + "'");
        }
        total_ += r.qubits;
    }
}

bool Layout::contains(const std::string& name) const {
    return std::any_of(regs_.begin(), regs_.end(), [&](const Register& r) { return r.name == name; });
}

const Register& Layout::at(const std::string& name) const {
    for (const auto& r : regs_) {
        if (r.name == name) {
            return r;
        }
    }
    throw UnknownRegisterError("unknown register '" + name + "' in layout " + to_string());
}

std::size_t Layout::offset(const std::string& name) const {
    std::size_t off = 0;
    for (const auto& r : regs_) {
        if (r.name == name) {
            return off;
        }
        off += r.qubits;
    }
    throw UnknownRegisterError("unknown register '" + name + "' in layout " + to_string());
}

std::vector<std::size_t> Layout::qubit_positions(const std::vector<std::string>& names) const {
    std::vector<std::size_t> out;
    std::unordered_set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(n).second) {
            throw ShapeError("register '" + n + "' listed twice");
        }
        const std::size_t off = offset(n);
        for (std::size_t q = 0; q < at(n).qubits; ++q) {
            out.push_back(off + q);
        }
    }
    return out;
}

std::vector<std::string> Layout::names() const {
    std::vector<std::string> out;
    for (const auto& r : regs_) {
        out.push_back(r.name);
    }
    return out;
}

Layout Layout::concat(const Layout& other) const {
    std::vector<Register> regs = regs_;
    regs.insert(regs.end(), other.regs_.begin(), other.regs_.end());
    return Layout(std::move(regs));
}

Layout Layout::subset(const std::vector<std::string>& names) const {
    for (const auto& n : names) {
        at(n);
    }
    std::vector<Register> regs;
    for (const auto& r : regs_) {
        if (std::find(names.begin(), names.end(), r.name) != names.end()) {
            regs.push_back(r);
        }
    }
    return Layout(std::move(regs));
}

Layout Layout::without(const std::vector<std::string>& names) const {
    return subset(complement(*this, names));
}

std::string Layout::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        os << (i ? ", " : "") << regs_[i].name << ":" << regs_[i].qubits;
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// QState

QState QState::pure(Layout layout, Vector amplitudes) {
    check_pure_limit(layout.total_qubits());
    if (static_cast<std::size_t>(amplitudes.size()) != layout.dim()) {
        throw ShapeError("amplitude vector of length " + std::to_string(amplitudes.size()) +
                         " does not match layout " + layout.to_string());
    }
    const double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > kTolerance) {
        throw NormalizationError("state vector is not normalized (norm^2 = " + std::to_string(norm2) + ")");
    }
    return QState(std::move(layout), std::move(amplitudes));
}

QState QState::mixed(Layout layout, Matrix rho) {
    check_mixed_limit(layout.total_qubits());
    const auto d = static_cast<Eigen::Index>(layout.dim());
    if (rho.rows() != d || rho.cols() != d) {
        throw ShapeError("density matrix shape does not match layout " + layout.to_string());
    }
    if (max_abs(rho - rho.adjoint()) > kTolerance) {
        throw NormalizationError("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1, 0)) > kTolerance) {
        throw NormalizationError("density matrix trace is not 1");
    }
    QState s(std::move(layout), std::move(rho));
    if (s.min_eigenvalue() < -kTolerance) {
        throw NormalizationError("density matrix is not positive semidefinite");
    }
    return s;
}

QState QState::basis(Layout layout, std::uint64_t index) {
    check_pure_limit(layout.total_qubits());
    if (index >= layout.dim()) {
        throw ShapeError("basis index out of range");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.dim()));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return QState(std::move(layout), std::move(v));
}

const Vector& QState::amplitudes() const {
    if (!is_pure()) {
        throw FormMismatchError("state is a density matrix, not a vector");
    }
    return std::get<Vector>(data_);
}

const Matrix& QState::density() const {
    if (is_pure()) {
        throw FormMismatchError("state is a vector, not a density matrix");
    }
    return std::get<Matrix>(data_);
}

Matrix QState::density_matrix() const {
    if (!is_pure()) {
        return density();
    }
    check_mixed_limit(qubits());
    const Vector& v = amplitudes();
    return v * v.adjoint();
}

QState QState::to_mixed() const {
    return QState(layout_, density_matrix());
}

QState QState::relabel(Layout layout) const {
    if (layout.total_qubits() != qubits()) {
        throw ShapeError("cannot relabel " + layout_.to_string() + " as " + layout.to_string());
    }
    if (is_pure()) {
        return QState(std::move(layout), amplitudes());
    }
    return QState(std::move(layout), density());
}

double QState::trace() const {
    return is_pure() ? amplitudes().squaredNorm() : density().trace().real();
}

double QState::purity() const {
    if (is_pure()) {
        return 1.0;
    }
    const Matrix& r = density();
    return hs_inner(r, r).real();
}

double QState::min_eigenvalue() const {
    if (is_pure()) {
        return 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(density(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// Operations

QState tensor(const QState& a, const QState& b) {
    if (a.form() != b.form()) {
        throw FormMismatchError("tensor of a pure and a mixed state");
    }
    Layout layout = a.layout().concat(b.layout());
    if (a.is_pure()) {
        check_pure_limit(layout.total_qubits());
        const Vector& va = a.amplitudes();
        const Vector& vb = b.amplitudes();
        Vector v(va.size() * vb.size());
        for (Eigen::Index i = 0; i < va.size(); ++i) {
            v.segment(i * vb.size(), vb.size()) = va(i) * vb;
        }
        return make_trusted_pure(std::move(layout), std::move(v));
    }
    check_mixed_limit(layout.total_qubits());
    return make_trusted_mixed(std::move(layout), kron(a.density(), b.density()));
}

QState apply(const UnitaryOp& u, const QState& s, const std::vector<std::string>& targets) {
    const auto positions = s.layout().qubit_positions(targets);
    if (u.dim() != (std::size_t{1} << positions.size())) {
        throw ShapeError("operator of dimension " + std::to_string(u.dim()) + " applied to " +
                         std::to_string(positions.size()) + " qubits");
    }
    const Selection sel = select_qubits(s.qubits(), positions);
    if (s.is_pure()) {
        Matrix v = s.amplitudes();
        apply_columns(u.matrix(), sel, v);
        return make_trusted_pure(s.layout(), v.col(0));
    }
    // rho -> U rho U^dag: columns by U, then rows by conj(U).
    Matrix m = s.density();
    apply_columns(u.matrix(), sel, m);
    Matrix mt = m.transpose();
    apply_columns(u.matrix().conjugate(), sel, mt);
    return make_trusted_mixed(s.layout(), mt.transpose());
}

QState apply(const UnitaryOp& u, const QState& s) {
    return apply(u, s, s.layout().names());
}

void apply_to_columns(const UnitaryOp& u, const Layout& layout, const std::vector<std::string>& targets, Matrix& m) {
    const auto positions = layout.qubit_positions(targets);
    if (u.dim() != (std::size_t{1} << positions.size())) {
        throw ShapeError("operator dimension does not match its target registers");
    }
    if (static_cast<std::size_t>(m.rows()) != layout.dim()) {
        throw ShapeError("matrix rows do not match layout " + layout.to_string());
    }
    apply_columns(u.matrix(), select_qubits(layout.total_qubits(), positions), m);
}

Matrix lift(const UnitaryOp& u, const Layout& layout, const std::vector<std::string>& targets) {
    const auto d = static_cast<Eigen::Index>(layout.dim());
    Matrix m = Matrix::Identity(d, d);
    apply_to_columns(u, layout, targets, m);
    return m;
}

QState partial_trace(const QState& s, const std::vector<std::string>& keep) {
    const Layout kept = s.layout().subset(keep);
    check_mixed_limit(kept.total_qubits());
    const Selection sel = select_qubits(s.qubits(), s.layout().qubit_positions(kept.names()));
    const auto dk = static_cast<Eigen::Index>(sel.inner.size());
    Matrix out = Matrix::Zero(dk, dk);
    if (s.is_pure()) {
        const Vector& v = s.amplitudes();
        for (auto r : sel.outer) {
            for (Eigen::Index i = 0; i < dk; ++i) {
                const Complex vi = v(static_cast<Eigen::Index>(sel.inner[i] + r));
                if (vi == Complex(0, 0)) {
                    continue;
                }
                for (Eigen::Index j = 0; j < dk; ++j) {
                    out(i, j) += vi * std::conj(v(static_cast<Eigen::Index>(sel.inner[j] + r)));
                }
            }
        }
    } else {
        const Matrix& rho = s.density();
        for (auto r : sel.outer) {
            for (Eigen::Index i = 0; i < dk; ++i) {
                for (Eigen::Index j = 0; j < dk; ++j) {
                    out(i, j) += rho(static_cast<Eigen::Index>(sel.inner[i] + r),
                                     static_cast<Eigen::Index>(sel.inner[j] + r));
                }
            }
        }
    }
    return make_trusted_mixed(kept, std::move(out));
}

QState discard(const QState& s, const std::vector<std::string>& registers) {
    const auto keep = complement(s.layout(), registers);
    const Layout kept = s.layout().subset(keep);
    if (!s.is_pure()) {
        return partial_trace(s, keep);
    }
    const Selection sel = select_qubits(s.qubits(), s.layout().qubit_positions(keep));
    const Vector& v = s.amplitudes();
    // Common case: the dropped registers sit in a computational basis state.
    std::uint64_t best = 0;
    double best_weight = -1;
    for (auto r : sel.outer) {
        double w = 0;
        for (auto i : sel.inner) {
            w += std::norm(v(static_cast<Eigen::Index>(i + r)));
        }
        if (w > best_weight) {
            best_weight = w;
            best = r;
        }
    }
    if (best_weight >= 1.0 - 1e-12) {
        Vector out(static_cast<Eigen::Index>(sel.inner.size()));
        for (std::size_t i = 0; i < sel.inner.size(); ++i) {
            out(static_cast<Eigen::Index>(i)) = v(static_cast<Eigen::Index>(sel.inner[i] + best));
        }
        out /= out.norm();
        return make_trusted_pure(kept, std::move(out));
    }
    QState reduced = partial_trace(s, keep);
    if (reduced.purity() >= 1.0 - 1e-10) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(reduced.density());
        const Eigen::Index top = es.eigenvalues().size() - 1;
        Vector out = es.eigenvectors().col(top);
        out /= out.norm();
        return make_trusted_pure(kept, std::move(out));
    }
    return reduced;
}

QState reorder(const QState& s, const Layout& target) {
    const auto& src = s.layout();
    if (target.registers().size() != src.registers().size() || target.total_qubits() != src.total_qubits()) {
        throw ShapeError("reorder target " + target.to_string() + " has different registers than " +
                         src.to_string());
    }
    for (const auto& r : target.registers()) {
        if (src.at(r.name).qubits != r.qubits) {
            throw ShapeError("register '" + r.name + "' changes size under reorder");
        }
    }
    if (target == src) {
        return s;
    }
    const std::size_t n = src.total_qubits();
    // source qubit position of each target qubit position
    const auto from = src.qubit_positions(target.names());
    const std::size_t d = src.dim();
    std::vector<std::uint64_t> perm(d);  // target index -> source index
    for (std::uint64_t x = 0; x < d; ++x) {
        std::uint64_t y = 0;
        for (std::size_t p = 0; p < n; ++p) {
            if ((x >> (n - 1 - p)) & 1u) {
                y |= std::uint64_t{1} << (n - 1 - from[p]);
            }
        }
        perm[x] = y;
    }
    if (s.is_pure()) {
        const Vector& v = s.amplitudes();
        Vector out(v.size());
        for (std::uint64_t x = 0; x < d; ++x) {
            out(static_cast<Eigen::Index>(x)) = v(static_cast<Eigen::Index>(perm[x]));
        }
        return make_trusted_pure(target, std::move(out));
    }
    const Matrix& m = s.density();
    Matrix out(m.rows(), m.cols());
    for (std::uint64_t x = 0; x < d; ++x) {
        for (std::uint64_t y = 0; y < d; ++y) {
            out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
                m(static_cast<Eigen::Index>(perm[x]), static_cast<Eigen::Index>(perm[y]));
        }
    }
    return make_trusted_mixed(target, std::move(out));
}

QState substitute(const QState& s, const std::string& name, const QState& replacement) {
    const Register reg = s.layout().at(name);
    if (replacement.qubits() != reg.qubits) {
        throw ShapeError("replacement for '" + name + "' has " + std::to_string(replacement.qubits()) +
                         " qubits, expected " + std::to_string(reg.qubits));
    }
    QState rest = discard(s, {name});
    QState part = replacement.relabel(Layout{reg});
    if (rest.is_pure() != part.is_pure()) {
        rest = rest.is_pure() ? rest.to_mixed() : rest;
        part = part.is_pure() ? part.to_mixed() : part;
    }
    return reorder(tensor(rest, part), s.layout());
}

double phase_distance(const QState& a, const QState& b) {
    require_same_layout(a, b);
    if (a.is_pure() && b.is_pure()) {
        // |a - w b| with w the phase of <b|a> equals sqrt(2 - 2|<a|b>|) without
        // the cancellation near zero.
        const Complex overlap = b.amplitudes().dot(a.amplitudes());
        const Complex w = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1, 0);
        return (a.amplitudes() - w * b.amplitudes()).norm();
    }
    const Matrix diff = a.density_matrix() - b.density_matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const QState& psi, const QState& rho) {
    require_same_layout(psi, rho);
    const Vector& v = psi.amplitudes();
    if (rho.is_pure()) {
        return std::norm(v.dot(rho.amplitudes()));
    }
    return (v.adjoint() * rho.density() * v)(0, 0).real();
}

std::vector<double> outcome_probabilities(const QState& s, const std::vector<std::string>& registers) {
    const Selection sel = select_qubits(s.qubits(), s.layout().qubit_positions(registers));
    std::vector<double> probs(sel.inner.size(), 0.0);
    for (std::size_t o = 0; o < sel.inner.size(); ++o) {
        double p = 0;
        for (auto r : sel.outer) {
            const auto idx = static_cast<Eigen::Index>(sel.inner[o] + r);
            p += s.is_pure() ? std::norm(s.amplitudes()(idx)) : s.density()(idx, idx).real();
        }
        probs[o] = p;
    }
    return probs;
}

MeasurementOutcome project(const QState& s, const std::vector<std::string>& registers, const Bits& outcome) {
    const auto positions = s.layout().qubit_positions(registers);
    if (outcome.size() != positions.size()) {
        throw ShapeError("outcome length does not match measured registers");
    }
    const Selection sel = select_qubits(s.qubits(), positions);
    const std::uint64_t o = bits_to_index(outcome);
    const double p = outcome_probabilities(s, registers)[o];
    if (p <= 1e-14) {
        throw NumericalDegeneracyError("cannot renormalize onto outcome " + format_bits(outcome) +
                                       " of probability " + std::to_string(p));
    }
    std::vector<bool> in_branch(s.dim(), false);
    for (auto r : sel.outer) {
        in_branch[sel.inner[o] + r] = true;
    }
    if (s.is_pure()) {
        Vector v = s.amplitudes();
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (!in_branch[static_cast<std::size_t>(i)]) {
                v(i) = 0;
            }
        }
        v /= std::sqrt(p);
        return MeasurementOutcome{registers, outcome, p, make_trusted_pure(s.layout(), std::move(v))};
    }
    Matrix m = s.density();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (!in_branch[static_cast<std::size_t>(i)] || !in_branch[static_cast<std::size_t>(j)]) {
                m(i, j) = 0;
            }
        }
    }
    m /= p;
    return MeasurementOutcome{registers, outcome, p, make_trusted_mixed(s.layout(), std::move(m))};
}

MeasurementOutcome measure(const QState& s, const std::vector<std::string>& registers, Rng& rng) {
    const auto probs = outcome_probabilities(s, registers);
    double total = 0;
    for (double p : probs) {
        total += p;
    }
    const double u = rng.uniform() * total;
    double acc = 0;
    std::size_t chosen = probs.size();
    for (std::size_t o = 0; o < probs.size(); ++o) {
        if (probs[o] <= 0) {
            continue;
        }
        acc += probs[o];
        chosen = o;
        if (u < acc) {
            break;
        }
    }
    if (chosen == probs.size()) {
        throw NumericalDegeneracyError("measurement of a zero state");
    }
    std::size_t width = 0;
    for (const auto& r : registers) {
        width += s.layout().at(r).qubits;
    }
    return project(s, registers, index_to_bits(chosen, width));
}

MeasurementOutcome measure(const QState& s, const std::string& name, Rng& rng) {
    return measure(s, std::vector<std::string>{name}, rng);
}

QState random_pure_state(const Layout& layout, Rng& rng) {
    check_pure_limit(layout.total_qubits());
    Vector v(static_cast<Eigen::Index>(layout.dim()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = Complex(re, im);
    }
    v /= v.norm();
    return QState::pure(layout, std::move(v));
}

}  // namespace qnk
