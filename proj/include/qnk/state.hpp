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

#include <cstdint>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "qnk/bits.hpp"
#include "qnk/rng.hpp"
#include "qnk/unitary.hpp"

namespace qnk {

/// Largest register for a state vector.
inline constexpr std::size_t kMaxPureQubits = 14;
/// Largest register for a density matrix.
inline constexpr std::size_t kMaxMixedQubits = 8;

struct Register {
    std::string name;
    std::size_t qubits = 0;

    bool operator==(const Register&) const = default;
};

/// Ordered named sub-registers. The first register holds the most significant
/// qubits of the basis index; inside a register the first qubit is the most
/// significant one.
class Layout {
   public:
    Layout() = default;
    Layout(std::initializer_list<Register> regs);
    explicit Layout(std::vector<Register> regs);

    const std::vector<Register>& registers() const { return regs_; }
    std::size_t total_qubits() const { return total_; }
    std::size_t dim() const { return std::size_t{1} << total_; }

    bool contains(const std::string& name) const;
    const Register& at(const std::string& name) const;
    /// Global index of the register's first qubit.
    std::size_t offset(const std::string& name) const;
    /// Global qubit indices of `names`, register by register in the given order.
    std::vector<std::size_t> qubit_positions(const std::vector<std::string>& names) const;
    std::vector<std::string> names() const;

    /// Concatenation; register names must stay unique.
    Layout concat(const Layout& other) const;
    /// Registers in `names`, kept in this layout's order.
    Layout subset(const std::vector<std::string>& names) const;
    Layout without(const std::vector<std::string>& names) const;

    std::string to_string() const;

    bool operator==(const Layout& other) const { return regs_ == other.regs_; }

   private:
    std::vector<Register> regs_;
    std::size_t total_ = 0;
};

enum class StateForm { Pure, Mixed };

/// A register state, either a normalized amplitude vector or a density matrix.
class QState {
   public:
    /// Validates length and normalization (1e-9).
    static QState pure(Layout layout, Vector amplitudes);
    /// Validates shape, Hermiticity, unit trace and positivity (all 1e-9).
    static QState mixed(Layout layout, Matrix rho);
    static QState basis(Layout layout, std::uint64_t index);
    static QState zeros(Layout layout) { return basis(std::move(layout), 0); }

    StateForm form() const { return std::holds_alternative<Vector>(data_) ? StateForm::Pure : StateForm::Mixed; }
    bool is_pure() const { return form() == StateForm::Pure; }
    const Layout& layout() const { return layout_; }
    std::size_t qubits() const { return layout_.total_qubits(); }
    std::size_t dim() const { return layout_.dim(); }

    /// Throws FormMismatchError for a mixed state.
    const Vector& amplitudes() const;
    /// Throws FormMismatchError for a pure state.
    const Matrix& density() const;
    /// Density matrix of either form (subject to the mixed size limit).
    Matrix density_matrix() const;
    QState to_mixed() const;

    /// Same data under another layout with the same total qubit count.
    QState relabel(Layout layout) const;

    double trace() const;
    double purity() const;
    double min_eigenvalue() const;

   private:
    QState(Layout layout, Vector v) : layout_(std::move(layout)), data_(std::move(v)) {}
    QState(Layout layout, Matrix m) : layout_(std::move(layout)), data_(std::move(m)) {}

    Layout layout_;
    std::variant<Vector, Matrix> data_;

    friend QState make_trusted_pure(Layout, Vector);
    friend QState make_trusted_mixed(Layout, Matrix);
};

struct MeasurementOutcome {
    std::vector<std::string> registers;
    Bits outcome;
    double probability = 0;
    QState post_state;
};

/// Kronecker product with concatenated layout. Both operands must have the same form.
QState tensor(const QState& a, const QState& b);

/// Applies `u` to the listed registers (their qubits concatenated in list order).
QState apply(const UnitaryOp& u, const QState& s, const std::vector<std::string>& targets);
/// Applies `u` to the whole state.
QState apply(const UnitaryOp& u, const QState& s);

/// Embeds `u` acting on `targets` into the full operator space of `layout`.
Matrix lift(const UnitaryOp& u, const Layout& layout, const std::vector<std::string>& targets);

/// Applies `u` on `targets` to every column of `m` (rows indexed by `layout`).
void apply_to_columns(const UnitaryOp& u, const Layout& layout, const std::vector<std::string>& targets, Matrix& m);

/// Reduced density matrix over `keep` (layout order preserved).
QState partial_trace(const QState& s, const std::vector<std::string>& keep);

/// Drops registers. A pure state whose remainder is still pure stays a vector;
/// otherwise the result is the reduced density matrix.
QState discard(const QState& s, const std::vector<std::string>& registers);

/// Permutes registers into the order of `target` (same registers, any order).
QState reorder(const QState& s, const Layout& target);

/// Replaces the content of `name` by `replacement` (a state of equal qubit count).
QState substitute(const QState& s, const std::string& name, const QState& replacement);

/// Global-phase invariant distance: sqrt(2 - 2|<a|b>|) for two vectors, trace
/// distance otherwise. Layouts must match.
double phase_distance(const QState& a, const QState& b);

/// <psi| rho |psi> for a pure `psi`.
double fidelity(const QState& psi, const QState& rho);

/// Born probabilities of every computational-basis outcome on `registers`.
std::vector<double> outcome_probabilities(const QState& s, const std::vector<std::string>& registers);

/// Samples a computational-basis measurement of `registers` and collapses.
MeasurementOutcome measure(const QState& s, const std::vector<std::string>& registers, Rng& rng);
MeasurementOutcome measure(const QState& s, const std::string& name, Rng& rng);

/// Collapses onto a given outcome. Throws NumericalDegeneracyError if its
/// probability is zero.
MeasurementOutcome project(const QState& s, const std::vector<std::string>& registers, const Bits& outcome);

QState random_pure_state(const Layout& layout, Rng& rng);

}  // namespace qnk
