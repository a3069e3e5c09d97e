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


#include "qnk/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/SparseCore>

#include "qnk/algebra.hpp"
#include "qnk/error.hpp"

namespace qnk::engine {

std::string to_string(Party p) {
    return p == Party::Alice ? "alice" : "bob";
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Delivered:
            return "delivered";
        case Status::Aborted:
            return "aborted";
        case Status::AttackerSuccess:
            return "attacker-success";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// RandomDomain

RandomDomain::RandomDomain(std::vector<std::uint32_t> radices) : radices_(std::move(radices)) {
    for (auto r : radices_) {
        if (r == 0) {
            throw ShapeError("randomness domain has an empty digit");
        }
    }
}

RandomDomain RandomDomain::repeated(std::uint32_t radix, std::size_t count) {
    return RandomDomain(std::vector<std::uint32_t>(count, radix));
}

std::uint64_t RandomDomain::size() const {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t n = 1;
    for (auto r : radices_) {
        if (n > kMax / r) {
            return kMax;
        }
        n *= r;
    }
    return n;
}

Choice RandomDomain::at(std::uint64_t index) const {
    if (index >= size()) {
        throw ShapeError("choice index out of range");
    }
    Choice c(radices_.size());
    for (std::size_t i = radices_.size(); i-- > 0;) {
        c[i] = static_cast<std::uint32_t>(index % radices_[i]);
        index /= radices_[i];
    }
    return c;
}

Choice RandomDomain::sample(Rng& rng) const {
    Choice c(radices_.size());
    for (std::size_t i = 0; i < radices_.size(); ++i) {
        c[i] = static_cast<std::uint32_t>(rng.below(radices_[i]));
    }
    return c;
}

// ---------------------------------------------------------------------------
// ProtocolDef

Step Step::apply(std::vector<std::string> targets, OpBuilder build, std::string label) {
    Step s;
    s.kind = Kind::Apply;
    s.registers = std::move(targets);
    s.build = std::move(build);
    s.label = std::move(label);
    return s;
}

Step Step::check(std::vector<std::string> registers) {
    Step s;
    s.kind = Kind::Check;
    s.registers = std::move(registers);
    s.label = "check";
    return s;
}

std::vector<std::string> ProtocolDef::ancilla_registers() const {
    std::vector<std::string> out;
    for (const auto& r : layout.registers()) {
        if (std::find(message_registers.begin(), message_registers.end(), r.name) == message_registers.end()) {
            out.push_back(r.name);
        }
    }
    return out;
}

bool ProtocolDef::has_identification() const {
    for (const auto& st : stages) {
        for (const auto& step : st.steps) {
            if (step.kind == Step::Kind::Check) {
                return true;
            }
        }
    }
    return false;
}

void ProtocolDef::validate() const {
    for (const auto& m : message_registers) {
        layout.at(m);
    }
    for (const auto& [name, state] : ancilla_init) {
        if (std::find(message_registers.begin(), message_registers.end(), name) != message_registers.end()) {
            throw ShapeError("message register '" + name + "' cannot have an initial state");
        }
        if (layout.at(name).qubits != state.qubits()) {
            throw ShapeError("initial state of '" + name + "' has the wrong size");
        }
    }
    const Party expected[4] = {Party::Alice, Party::Bob, Party::Alice, Party::Bob};
    for (int s = 0; s < 4; ++s) {
        if (stages[s].party != expected[s]) {
            throw ShapeError("stage " + std::to_string(s + 1) + " belongs to the wrong party");
        }
        for (const auto& step : stages[s].steps) {
            layout.qubit_positions(step.registers);
            if (step.kind == Step::Kind::Check && s == 0) {
                throw ShapeError("the first stage has no incoming pass to check");
            }
            if (step.kind == Step::Kind::Apply && !step.build) {
                throw ShapeError("apply step without an operator builder");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Sessions

namespace {

QState as_message(const ProtocolDef& p, const QState& message) {
    const Layout ml = p.message_layout();
    if (message.qubits() != ml.total_qubits()) {
        throw ShapeError("message has " + std::to_string(message.qubits()) + " qubits, protocol '" + p.name +
                         "' expects " + std::to_string(ml.total_qubits()));
    }
    return message.layout() == ml ? message : message.relabel(ml);
}

const Choice& choice_for(Party party, const Choice& k, const Choice& l) {
    return party == Party::Alice ? k : l;
}

const IdentityKeys& keys_for(Party party, const SessionKeys& keys) {
    return party == Party::Alice ? keys.alice : keys.bob;
}

SessionKeys resolve_keys(const ProtocolDef& p, const std::optional<SessionKeys>& keys) {
    if (keys) {
        return *keys;
    }
    return p.default_keys.value_or(SessionKeys{});
}

}  // namespace

QState initial_state(const ProtocolDef& p, const QState& message) {
    QState acc = as_message(p, message);
    for (const auto& name : p.ancilla_registers()) {
        const Register& reg = p.layout.at(name);
        auto it = p.ancilla_init.find(name);
        QState part = it != p.ancilla_init.end() ? it->second.relabel(Layout{reg}) : QState::zeros(Layout{reg});
        if (acc.is_pure() != part.is_pure()) {
            acc = acc.is_pure() ? acc.to_mixed() : acc;
            part = part.is_pure() ? part.to_mixed() : part;
        }
        acc = tensor(acc, part);
    }
    return reorder(acc, p.layout);
}

QState extract_message(const ProtocolDef& p, const QState& full) {
    return discard(full, p.ancilla_registers());
}

Transcript run_session(const ProtocolDef& p, const QState& message, const std::optional<SessionKeys>& keys,
                       Adversary* adversary, std::uint64_t seed, std::uint64_t session_id) {
    p.validate();
    const SessionKeys skeys = resolve_keys(p, keys);
    const QState plain = as_message(p, message);

    Transcript t;
    t.session_id = session_id;
    t.seed = seed;
    t.protocol = p.name;
    t.warnings = p.warnings;
    if (p.key_warnings) {
        for (auto& w : p.key_warnings(skeys)) {
            t.warnings.push_back(std::move(w));
        }
    }

    Rng root(seed);
    Rng alice = root.fork(kAliceStream);
    Rng bob = root.fork(kBobStream);
    Rng meas = root.fork(kMeasurementStream);
    Rng adv = root.fork(kAdversaryStream);
    Rng decoy = root.fork(kDecoyStream);
    t.k = p.alice_domain.sample(alice);
    t.l = p.bob_domain.sample(bob);

    QState state = initial_state(p, plain);
    for (int s = 0; s < 4; ++s) {
        const Stage& stage = p.stages[s];
        const Choice& choice = choice_for(stage.party, t.k, t.l);
        const IdentityKeys& own = keys_for(stage.party, skeys);
        for (const auto& step : stage.steps) {
            if (step.kind == Step::Kind::Apply) {
                state = apply(step.build(choice, own), state, step.registers);
                continue;
            }
            MeasurementOutcome mo = measure(state, step.registers, meas);
            CheckRecord rec{stage.party, step.registers, mo.outcome, mo.probability, all_zero(mo.outcome)};
            t.passes[s - 1].checks.push_back(rec);
            state = std::move(mo.post_state);
            if (rec.passed) {
                continue;
            }
            if (!t.aborted_at_pass) {
                t.aborted_at_pass = s;
            }
            for (const auto& name : step.registers) {
                const Layout one{p.layout.at(name)};
                state = substitute(state, name, random_pure_state(one, decoy));
            }
            break;
        }
        if (s == 3) {
            break;
        }
        PassRecord pr{s + 1, stage.party, state, "forward", {}};
        if (adversary) {
            Interception ic = adversary->intercept(s + 1, state, adv);
            if (!(ic.forwarded.layout() == state.layout())) {
                throw ShapeError("adversary returned layout " + ic.forwarded.layout().to_string() + " on pass " +
                                 std::to_string(s + 1));
            }
            pr.adversary_action = std::move(ic.action);
            state = std::move(ic.forwarded);
        }
        t.passes.push_back(std::move(pr));
    }

    t.delivered = extract_message(p, state);
    t.phase_distance = phase_distance(*t.delivered, plain);
    t.status = t.aborted_at_pass ? Status::Aborted : Status::Delivered;
    return t;
}

Transcript run_session(const ProtocolDef& p, const QState& message, std::uint64_t seed) {
    return run_session(p, message, std::nullopt, nullptr, seed);
}

// ---------------------------------------------------------------------------
// Holding condition

namespace {

void require_enumerable_layout(const ProtocolDef& p) {
    if (p.layout.total_qubits() > kMaxMixedQubits) {
        throw ResourceLimitError("operator composites over " + std::to_string(p.layout.total_qubits()) +
                                 " qubits exceed the " + std::to_string(kMaxMixedQubits) + "-qubit limit");
    }
}

std::uint64_t pair_count(const ProtocolDef& p) {
    const std::uint64_t a = p.alice_domain.size();
    const std::uint64_t b = p.bob_domain.size();
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

using Sparse = Eigen::SparseMatrix<Complex>;

Sparse sparse_of(const Matrix& m) { return m.sparseView(Complex(1, 0), 1e-14); }

Sparse product(const Sparse& a, const Sparse& b) { return (a * b).pruned(Complex(1, 0), 1e-14); }

// Largest entry of a - b.
double sparse_gap(const Sparse& a, const Sparse& b) {
    const Sparse d = a - b;
    double out = 0;
    for (Eigen::Index c = 0; c < d.outerSize(); ++c) {
        for (Sparse::InnerIterator it(d, c); it; ++it) {
            out = std::max(out, std::abs(it.value()));
        }
    }
    return out;
}

double normalized_phase(double phi) {
    const double two_pi = 2 * std::numbers::pi;
    double r = std::fmod(phi, two_pi);
    if (r < 0) {
        r += two_pi;
    }
    return r;
}

}  // namespace

Matrix stage_matrix(const ProtocolDef& p, int stage, const Choice& k, const Choice& l, const SessionKeys& keys) {
    require_enumerable_layout(p);
    const Stage& st = p.stages.at(static_cast<std::size_t>(stage));
    const auto d = static_cast<Eigen::Index>(p.layout.dim());
    Matrix m = Matrix::Identity(d, d);
    const Choice& choice = choice_for(st.party, k, l);
    const IdentityKeys& own = keys_for(st.party, keys);
    for (const auto& step : st.steps) {
        if (step.kind == Step::Kind::Apply) {
            apply_to_columns(step.build(choice, own), p.layout, step.registers, m);
        }
    }
    return m;
}

HoldingReport verify_holding_condition(const ProtocolDef& p, const std::optional<SessionKeys>& keys,
                                       std::uint64_t max_pairs) {
    p.validate();
    require_enumerable_layout(p);
    const std::uint64_t total = pair_count(p);
    if (total > max_pairs) {
        throw ResourceLimitError("protocol '" + p.name + "' has " + std::to_string(total) +
                                 " (k, l) pairs, more than the enumeration limit " + std::to_string(max_pairs));
    }
    const SessionKeys skeys = resolve_keys(p, keys);
    const std::uint64_t na = p.alice_domain.size();
    const std::uint64_t nb = p.bob_domain.size();
    const Choice none;

    std::vector<Matrix> s1(na), s3(na), s2(nb), s4(nb);
    std::vector<Choice> ks(na), ls(nb);
    for (std::uint64_t i = 0; i < na; ++i) {
        ks[i] = p.alice_domain.at(i);
        s1[i] = stage_matrix(p, 0, ks[i], none, skeys);
        s3[i] = stage_matrix(p, 2, ks[i], none, skeys);
    }
    for (std::uint64_t j = 0; j < nb; ++j) {
        ls[j] = p.bob_domain.at(j);
        s2[j] = stage_matrix(p, 1, none, ls[j], skeys);
        s4[j] = stage_matrix(p, 3, none, ls[j], skeys);
    }

    std::vector<Sparse> t1(na), t3(na), t1_dag(na), m13(na), t2(nb), t4(nb), t2_dag(nb), nv(nb);
    std::vector<bool> alice_inverse(na), bob_inverse(nb);
    for (std::uint64_t i = 0; i < na; ++i) {
        t1[i] = sparse_of(s1[i]);
        t3[i] = sparse_of(s3[i]);
        t1_dag[i] = sparse_of(s1[i].adjoint());
        m13[i] = product(t3[i], t1[i]);
        alice_inverse[i] = max_abs(s3[i] - s1[i].adjoint()) <= kTolerance;
    }
    for (std::uint64_t j = 0; j < nb; ++j) {
        t2[j] = sparse_of(s2[j]);
        t4[j] = sparse_of(s4[j]);
        t2_dag[j] = sparse_of(s2[j].adjoint());
        nv[j] = product(product(t4[j], t2[j]), t2_dag[j]);
        bob_inverse[j] = max_abs(s4[j] - s2[j].adjoint()) <= kTolerance;
    }

    HoldingReport r;
    const double d = static_cast<double>(p.layout.dim());
    for (std::uint64_t i = 0; i < na; ++i) {
        for (std::uint64_t j = 0; j < nb; ++j) {
            ++r.pairs;
            const Sparse vu = product(t2[j], t1[i]);
            const Matrix total_op = Matrix(product(t4[j], product(t3[i], vu)));
            const auto phi = algebra::scalar_identity_phase(total_op);
            if (phi) {
                ++r.holding_pairs;
                const double ph = normalized_phase(*phi);
                const bool seen = std::any_of(r.phases.begin(), r.phases.end(),
                                              [&](double x) { return algebra::phase_gap(x, ph) <= 1e-7; });
                if (!seen) {
                    r.phases.push_back(ph);
                }
            } else if (r.failures.size() < 8) {
                r.failures.emplace_back(ks[i], ls[j]);
            }

            // e^{-i phi} N V^dag M - U^dag V^dag U, the realigned form of the necessary condition.
            const double phase = phi ? *phi : std::arg(total_op.trace() / d);
            const Sparse lhs = std::polar(1.0, -phase) * product(nv[j], m13[i]);
            const Sparse rhs = product(t1_dag[i], product(t2_dag[j], t1[i]));
            r.max_necessary_residual = std::max(r.max_necessary_residual, Matrix(lhs - rhs).norm());

            if (alice_inverse[i] && bob_inverse[j]) {
                ++r.inverse_pairs;
                const Sparse lhs4 = product(t1_dag[i], t2[j]);
                const Sparse rhs4 = product(t2[j], t1_dag[i]);
                const bool commute = sparse_gap(lhs4, rhs4) <= kTolerance ||
                                     algebra::scalar_identity_phase(Matrix(product(lhs4, Sparse(rhs4.adjoint()))))
                                         .has_value();
                if (commute == phi.has_value()) {
                    ++r.commutation_agreements;
                }
            }
        }
    }
    std::sort(r.phases.begin(), r.phases.end());
    return r;
}

// ---------------------------------------------------------------------------
// Identified condition

namespace {

struct PairTrace {
    std::vector<Matrix> checkpoints;
    Matrix final_map;
};

Matrix message_embedding(const ProtocolDef& p) {
    const Layout ml = p.message_layout();
    const auto dm = static_cast<Eigen::Index>(ml.dim());
    const auto d = static_cast<Eigen::Index>(p.layout.dim());
    Matrix e(d, dm);
    for (Eigen::Index i = 0; i < dm; ++i) {
        QState s = initial_state(p, QState::basis(ml, static_cast<std::uint64_t>(i)));
        if (!s.is_pure()) {
            throw PreconditionError("identified check needs pure ancilla preparations");
        }
        e.col(i) = s.amplitudes();
    }
    return e;
}

std::uint64_t register_mask(const Layout& layout, const std::vector<std::string>& regs) {
    const std::size_t n = layout.total_qubits();
    std::uint64_t mask = 0;
    for (auto q : layout.qubit_positions(regs)) {
        mask |= std::uint64_t{1} << (n - 1 - q);
    }
    return mask;
}

double distance_up_to_phase(const Matrix& a, const Matrix& b) {
    const Complex overlap = (b.adjoint() * a).trace();
    const Complex w = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1, 0);
    return max_abs(a - w * b);
}

}  // namespace

IdentifiedReport identified_condition_check(const ProtocolDef& p, const std::vector<SessionKeys>& key_sets,
                                            std::uint64_t max_pairs, std::uint64_t seed) {
    p.validate();
    std::vector<SessionKeys> sets = key_sets;
    if (sets.empty()) {
        sets.push_back(resolve_keys(p, std::nullopt));
    }
    const Matrix embed = message_embedding(p);

    IdentifiedReport r;
    r.key_sets = sets.size();
    const std::uint64_t total = pair_count(p);
    std::vector<std::pair<Choice, Choice>> pairs;
    if (total <= max_pairs) {
        for (std::uint64_t i = 0; i < p.alice_domain.size(); ++i) {
            for (std::uint64_t j = 0; j < p.bob_domain.size(); ++j) {
                pairs.emplace_back(p.alice_domain.at(i), p.bob_domain.at(j));
            }
        }
    } else {
        r.exhaustive = false;
        Rng rng(seed);
        const std::uint64_t n = std::min<std::uint64_t>(max_pairs, 256);
        for (std::uint64_t i = 0; i < n; ++i) {
            Choice k = p.alice_domain.sample(rng);
            Choice l = p.bob_domain.sample(rng);
            pairs.emplace_back(std::move(k), std::move(l));
        }
    }

    for (const auto& [k, l] : pairs) {
        ++r.pairs;
        std::vector<PairTrace> traces;
        for (const auto& keys : sets) {
            PairTrace tr;
            Matrix x = embed;
            for (int s = 0; s < 4; ++s) {
                const Stage& st = p.stages[s];
                const Choice& choice = choice_for(st.party, k, l);
                const IdentityKeys& own = keys_for(st.party, keys);
                for (const auto& step : st.steps) {
                    if (step.kind == Step::Kind::Apply) {
                        apply_to_columns(step.build(choice, own), p.layout, step.registers, x);
                        continue;
                    }
                    const std::uint64_t mask = register_mask(p.layout, step.registers);
                    double leak2 = 0;
                    for (Eigen::Index row = 0; row < x.rows(); ++row) {
                        if (static_cast<std::uint64_t>(row) & mask) {
                            leak2 += x.row(row).squaredNorm();
                            x.row(row).setZero();
                        }
                    }
                    const double leak = std::sqrt(leak2);
                    r.max_leak = std::max(r.max_leak, leak);
                    if (leak > kTolerance) {
                        r.factorizes = false;
                        if (r.failures.size() < 8) {
                            r.failures.push_back("pass " + std::to_string(s) + " check leaves " +
                                                 std::to_string(leak) + " outside |0> on registers of " +
                                                 to_string(st.party));
                        }
                    }
                    tr.checkpoints.push_back(x);
                }
            }
            tr.final_map = x;
            const Matrix overlap = embed.adjoint() * x;
            const bool phase_ok = algebra::scalar_identity_phase(overlap).has_value() &&
                                  max_abs(x - embed * overlap) <= kTolerance;
            if (!phase_ok) {
                r.restores_message = false;
                if (r.failures.size() < 8) {
                    r.failures.push_back("composite does not return the message up to phase");
                }
            }
            traces.push_back(std::move(tr));
        }
        for (std::size_t i = 1; i < traces.size(); ++i) {
            for (std::size_t c = 0; c < traces[i].checkpoints.size() && c < traces[0].checkpoints.size(); ++c) {
                if (distance_up_to_phase(traces[i].checkpoints[c], traces[0].checkpoints[c]) > kTolerance) {
                    r.key_independent = false;
                }
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Ancilla framework

Transcript run_ancilla_session(const AncillaProtocol& p, const QState& message, std::uint64_t seed) {
    const std::size_t total = p.alice_qubits + p.message_qubits + p.bob_qubits;
    if (total > kMaxMixedQubits) {
        throw ResourceLimitError("ancilla session over " + std::to_string(total) + " qubits exceeds the " +
                                 std::to_string(kMaxMixedQubits) + "-qubit density-matrix limit");
    }
    if (message.qubits() != p.message_qubits) {
        throw ShapeError("message size does not match the ancilla protocol");
    }
    if (p.ua.qubits() != p.alice_qubits + p.message_qubits || p.ua2.qubits() != p.alice_qubits + p.message_qubits ||
        p.ub.qubits() != p.message_qubits + p.bob_qubits || p.ub2.qubits() != p.message_qubits + p.bob_qubits) {
        throw ShapeError("ancilla protocol operators do not match the register sizes");
    }
    const Layout la{{"A", p.alice_qubits}};
    const Layout lm{{"M", p.message_qubits}};
    const Layout lb{{"B", p.bob_qubits}};
    Rng root(seed);
    Rng alice = root.fork(kAliceStream);
    Rng bob = root.fork(kBobStream);

    auto prepared = [](const AncillaPrep& prep, const Layout& l, Rng& rng) {
        QState s = prep ? prep(rng) : QState::zeros(l);
        if (s.qubits() != l.total_qubits()) {
            throw ShapeError("ancilla preparation has the wrong size");
        }
        s = s.relabel(l);
        return s.is_pure() ? s.to_mixed() : s;
    };
    const QState plain = message.relabel(lm);
    QState m_mixed = plain.is_pure() ? plain.to_mixed() : plain;
    QState state = tensor(tensor(prepared(p.prepare_alice, la, alice), m_mixed), prepared(p.prepare_bob, lb, bob));

    Transcript t;
    t.seed = seed;
    t.protocol = p.name;
    const std::vector<std::string> am{"A", "M"};
    const std::vector<std::string> mb{"M", "B"};
    const UnitaryOp* ops[4] = {&p.ua, &p.ub, &p.ua2, &p.ub2};
    for (int s = 0; s < 4; ++s) {
        const bool alice_turn = s % 2 == 0;
        state = apply(*ops[s], state, alice_turn ? am : mb);
        if (s == 3) {
            break;
        }
        PassRecord pr{s + 1, alice_turn ? Party::Alice : Party::Bob, partial_trace(state, {"M"}), "forward", {}};
        t.passes.push_back(std::move(pr));
    }
    t.delivered = partial_trace(state, {"M"});
    t.phase_distance = phase_distance(*t.delivered, m_mixed);
    t.status = Status::Delivered;
    return t;
}

AncillaProtocol identity_ancilla_protocol(std::size_t message_qubits) {
    AncillaProtocol p;
    p.name = "ancilla-identity";
    p.message_qubits = message_qubits;
    p.ua = p.ua2 = p.ub = p.ub2 = UnitaryOp::identity(message_qubits);
    return p;
}

namespace {

/// sum_m |m><m|_M (x) (x)_i ops[i]^{m_i} on the ancilla, with the ancilla
/// first when `ancilla_first`.
UnitaryOp controlled_layer(std::size_t n, const std::vector<UnitaryOp>& ops, bool ancilla_first) {
    const Layout layout = ancilla_first ? Layout{{"X", n}, {"M", n}} : Layout{{"M", n}, {"X", n}};
    const auto d = static_cast<Eigen::Index>(layout.dim());
    Matrix u = Matrix::Identity(d, d);
    for (std::size_t i = 0; i < n; ++i) {
        // controlled ops[i]: control M qubit i, target X qubit i
        const std::size_t control = layout.offset("M") + i;
        const std::size_t target = layout.offset("X") + i;
        const std::size_t nq = layout.total_qubits();
        const std::uint64_t cbit = std::uint64_t{1} << (nq - 1 - control);
        const std::uint64_t tbit = std::uint64_t{1} << (nq - 1 - target);
        Matrix step = Matrix::Zero(d, d);
        const Matrix& g = ops[i].matrix();
        for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(d); ++x) {
            if (!(x & cbit)) {
                step(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = 1;
                continue;
            }
            const int tb = (x & tbit) ? 1 : 0;
            for (int out = 0; out < 2; ++out) {
                const std::uint64_t y = out ? (x | tbit) : (x & ~tbit);
                step(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = g(out, tb);
            }
        }
        u = step * u;
    }
    return UnitaryOp(std::move(u));
}

}  // namespace

AncillaProtocol controlled_unitary_ancilla_protocol(std::size_t message_qubits, const std::vector<UnitaryOp>& alice_ops,
                                                    const std::vector<UnitaryOp>& bob_ops) {
    if (alice_ops.size() != message_qubits || bob_ops.size() != message_qubits) {
        throw ShapeError("one controlled unitary per message qubit is required");
    }
    for (const auto& op : alice_ops) {
        if (op.dim() != 2) {
            throw ShapeError("controlled targets must be single-qubit unitaries");
        }
    }
    for (const auto& op : bob_ops) {
        if (op.dim() != 2) {
            throw ShapeError("controlled targets must be single-qubit unitaries");
        }
    }
    AncillaProtocol p;
    p.name = "ancilla-controlled";
    p.message_qubits = message_qubits;
    p.alice_qubits = message_qubits;
    p.bob_qubits = message_qubits;
    const Layout la{{"A", message_qubits}};
    const Layout lb{{"B", message_qubits}};
    p.prepare_alice = [la](Rng& rng) { return random_pure_state(la, rng); };
    p.prepare_bob = [lb](Rng& rng) { return random_pure_state(lb, rng); };
    p.ua = controlled_layer(message_qubits, alice_ops, true);
    p.ub = controlled_layer(message_qubits, bob_ops, false);
    p.ua2 = p.ua.adjoint();
    p.ub2 = p.ub.adjoint();
    return p;
}

AncillaProtocol depolarizing_ancilla_protocol() {
    AncillaProtocol p;
    p.name = "ancilla-depolarizing";
    p.message_qubits = 1;
    p.alice_qubits = 2;
    p.bob_qubits = 0;
    const Layout la{{"A", 2}};
    p.prepare_alice = [la](Rng&) {
        return QState::mixed(la, Matrix::Identity(4, 4) / 4.0);
    };
    const UnitaryOp* paulis[4] = {&gates::I(), &gates::X(), &gates::Y(), &gates::Z()};
    Matrix u = Matrix::Zero(8, 8);
    for (int a = 0; a < 4; ++a) {
        u.block(2 * a, 2 * a, 2, 2) = paulis[a]->matrix();
    }
    p.ua = UnitaryOp(std::move(u));
    p.ua2 = UnitaryOp::identity(3);
    p.ub = p.ub2 = UnitaryOp::identity(1);
    return p;
}

}  // namespace qnk::engine
