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


#include "qnk/protocols.hpp"

#include <cmath>
#include <numbers>

#include "qnk/error.hpp"

namespace qnk::protocols {

using engine::Choice;
using engine::IdentityKeys;
using engine::Party;
using engine::ProtocolDef;
using engine::RandomDomain;
using engine::SessionKeys;
using engine::Step;

AngleGrid::AngleGrid(std::size_t k) : k_(k) {
    if (k == 0 || k > (1u << 15)) {
        throw ConfigError("angle grid size K must be in 1..32768");
    }
}

double AngleGrid::value(std::size_t index) const {
    if (index >= size()) {
        throw ShapeError("angle grid index out of range");
    }
    return static_cast<double>(index) * std::numbers::pi / static_cast<double>(k_);
}

std::vector<double> AngleGrid::values() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out[i] = value(i);
    }
    return out;
}

RotationSpec RotationSpec::bloch(std::size_t qubits, AngleGrid grid, const Axis& axis) {
    RotationSpec s;
    s.qubits = qubits;
    s.grid = grid;
    s.alice_axes.assign(qubits, axis);
    s.bob_axes.assign(qubits, axis);
    s.angle_scale = 1;
    return s;
}

RotationSpec RotationSpec::polarization(std::size_t qubits, AngleGrid grid) {
    RotationSpec s = bloch(qubits, grid, Axis(0, -1, 0));
    s.angle_scale = 2;
    return s;
}

UnitaryOp spec_rotation(const RotationSpec& spec, const Axis& axis, double theta) {
    return rotation(axis, spec.angle_scale * theta);
}

namespace {

std::string indexed(const std::string& prefix, std::size_t i) {
    return prefix + std::to_string(i + 1);
}

std::vector<std::string> qubit_registers(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(indexed("q", i));
    }
    return out;
}

Layout single_qubit_layout(const std::vector<std::string>& names) {
    std::vector<Register> regs;
    for (const auto& n : names) {
        regs.push_back({n, 1});
    }
    return Layout(std::move(regs));
}

void check_spec(const RotationSpec& spec) {
    if (spec.qubits == 0 || spec.qubits > kMaxPureQubits) {
        throw ResourceLimitError("rotation protocols take 1.." + std::to_string(kMaxPureQubits) + " qubits");
    }
    if (spec.alice_axes.size() != spec.qubits || spec.bob_axes.size() != spec.qubits) {
        throw ShapeError("one rotation axis per qubit and party is required");
    }
}

const std::vector<double>& checked_angles(const std::vector<double>& v, std::size_t n, const char* what) {
    if (v.size() != n) {
        throw ShapeError(std::string(what) + " has " + std::to_string(v.size()) + " angles, expected " +
                         std::to_string(n));
    }
    return v;
}

/// (x)_i R_axes[i](sign * (grid[c_i] + extra_i))
UnitaryOp layer(const RotationSpec& spec, const std::vector<Axis>& axes, const Choice& c, double sign,
                const std::vector<double>* extra) {
    std::vector<UnitaryOp> ops;
    ops.reserve(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i) {
        double theta = spec.grid.value(c.at(i));
        if (extra) {
            theta += (*extra)[i];
        }
        ops.push_back(spec_rotation(spec, axes[i], sign * theta));
    }
    return tensor_all(ops);
}

ProtocolDef rotation_skeleton(const RotationSpec& spec, const std::string& name) {
    check_spec(spec);
    ProtocolDef p;
    p.name = name;
    const auto regs = qubit_registers(spec.qubits);
    p.layout = single_qubit_layout(regs);
    p.message_registers = regs;
    const auto radix = static_cast<std::uint32_t>(spec.grid.size());
    p.alice_domain = RandomDomain::repeated(radix, spec.qubits);
    p.bob_domain = RandomDomain::repeated(radix, spec.qubits);
    p.stages[0].party = Party::Alice;
    p.stages[1].party = Party::Bob;
    p.stages[2].party = Party::Alice;
    p.stages[3].party = Party::Bob;
    return p;
}

}  // namespace

ProtocolDef rotation_protocol(const RotationSpec& spec) {
    ProtocolDef p = rotation_skeleton(spec, spec.angle_scale == 2 ? "polarization" : "rotation");
    const auto regs = p.message_registers;
    p.stages[0].steps.push_back(Step::apply(
        regs, [spec](const Choice& c, const IdentityKeys&) { return layer(spec, spec.alice_axes, c, 1, nullptr); },
        "U_A"));
    p.stages[1].steps.push_back(Step::apply(
        regs, [spec](const Choice& c, const IdentityKeys&) { return layer(spec, spec.bob_axes, c, 1, nullptr); },
        "U_B"));
    p.stages[2].steps.push_back(Step::apply(
        regs, [spec](const Choice& c, const IdentityKeys&) { return layer(spec, spec.alice_axes, c, -1, nullptr); },
        "U_A^dag"));
    p.stages[3].steps.push_back(Step::apply(
        regs, [spec](const Choice& c, const IdentityKeys&) { return layer(spec, spec.bob_axes, c, -1, nullptr); },
        "U_B^dag"));
    return p;
}

SessionKeys phi_c_keys(const std::vector<double>& phi_c) {
    IdentityKeys k;
    k.phi_c = phi_c;
    return SessionKeys::shared(k);
}

ProtocolDef rotation_with_id(const RotationSpec& spec, const std::vector<double>& phi_c) {
    ProtocolDef p = rotation_skeleton(spec, spec.angle_scale == 2 ? "polarization-id" : "rotation-id");
    checked_angles(phi_c, spec.qubits, "phi_C");
    const auto regs = p.message_registers;
    const std::size_t n = spec.qubits;
    p.stages[0].steps.push_back(Step::apply(
        regs,
        [spec, n](const Choice& c, const IdentityKeys& k) {
            return layer(spec, spec.alice_axes, c, 1, &checked_angles(k.phi_c, n, "phi_C"));
        },
        "U_A U_C"));
    p.stages[1].steps.push_back(Step::apply(
        regs, [spec](const Choice& c, const IdentityKeys&) { return layer(spec, spec.bob_axes, c, 1, nullptr); },
        "U_B"));
    p.stages[2].steps.push_back(Step::apply(
        regs, [spec](const Choice& c, const IdentityKeys&) { return layer(spec, spec.alice_axes, c, -1, nullptr); },
        "U_A^dag"));
    p.stages[3].steps.push_back(Step::apply(
        regs,
        [spec, n](const Choice& c, const IdentityKeys& k) {
            return layer(spec, spec.bob_axes, c, -1, &checked_angles(k.phi_c, n, "phi_C"));
        },
        "(U_B U_C)^dag"));
    p.default_keys = phi_c_keys(phi_c);
    return p;
}

QState polarization_state(const std::vector<double>& angles) {
    if (angles.size() > kMaxPureQubits) {
        throw ResourceLimitError("too many photons for a state vector");
    }
    Vector v = Vector::Ones(1);
    for (double theta : angles) {
        Vector q(2);
        q << std::cos(theta), std::sin(theta);
        Vector next(v.size() * 2);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            next.segment(2 * i, 2) = v(i) * q;
        }
        v = std::move(next);
    }
    return QState::pure(Layout{{"m", angles.size()}}, std::move(v));
}

// ---------------------------------------------------------------------------
// Mutual identification

PhotonGroupLayout PhotonGroupLayout::interleaved(std::size_t n, std::size_t m, const std::vector<std::size_t>& id_slots) {
    if (id_slots.size() != m) {
        throw ShapeError("expected " + std::to_string(m) + " ID positions");
    }
    std::vector<bool> is_id(n + m, false);
    for (auto s : id_slots) {
        if (s >= n + m || is_id[s]) {
            throw ShapeError("ID positions must be distinct slots in 0.." + std::to_string(n + m - 1));
        }
        is_id[s] = true;
    }
    PhotonGroupLayout g;
    g.n = n;
    g.m = m;
    std::size_t next_if = 0;
    std::size_t next_id = 0;
    for (std::size_t s = 0; s < n + m; ++s) {
        g.slots.push_back(is_id[s] ? indexed("id", next_id++) : indexed("if", next_if++));
    }
    return g;
}

PhotonGroupLayout PhotonGroupLayout::random(std::size_t n, std::size_t m, Rng& rng) {
    std::vector<std::size_t> slots(n + m);
    for (std::size_t i = 0; i < slots.size(); ++i) {
        slots[i] = i;
    }
    // Partial Fisher-Yates: the first m entries become the ID positions.
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(slots.size() - i));
        std::swap(slots[i], slots[j]);
    }
    slots.resize(m);
    return interleaved(n, m, slots);
}

bool PhotonGroupLayout::is_id_slot(std::size_t slot) const {
    return slots.at(slot).rfind("id", 0) == 0;
}

std::vector<std::string> PhotonGroupLayout::if_registers() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(indexed("if", i));
    }
    return out;
}

std::vector<std::string> PhotonGroupLayout::id_registers() const {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < m; ++j) {
        out.push_back(indexed("id", j));
    }
    return out;
}

SessionKeys mutual_id_keys(const std::vector<double>& phi_c, const std::vector<double>& psi,
                           const std::vector<double>& psi1, const std::vector<double>& psi2) {
    if (psi.size() != psi1.size() || psi.size() != psi2.size()) {
        throw ShapeError("psi, psi' and psi'' must have equal lengths");
    }
    IdentityKeys k;
    k.phi_c = phi_c;
    k.psi = psi;
    k.psi1 = psi1;
    k.psi2 = psi2;
    return SessionKeys::shared(k);
}

SessionKeys random_mutual_id_keys(const PhotonGroupLayout& g, const AngleGrid& grid, Rng& rng, bool zero_phi_c) {
    auto draw = [&](std::size_t count) {
        std::vector<double> v(count);
        for (auto& x : v) {
            x = grid.value(static_cast<std::size_t>(rng.below(grid.size())));
        }
        return v;
    };
    std::vector<double> phi_c = zero_phi_c ? std::vector<double>(g.n, 0.0) : draw(g.n);
    std::vector<double> psi = draw(g.m);
    std::vector<double> psi1 = draw(g.m);
    std::vector<double> psi2 = draw(g.m);
    return mutual_id_keys(phi_c, psi, psi1, psi2);
}

namespace {

UnitaryOp polarization_layer(const std::vector<double>& angles, double sign) {
    std::vector<UnitaryOp> ops;
    ops.reserve(angles.size());
    for (double a : angles) {
        ops.push_back(polarization_rotation(sign * a));
    }
    return tensor_all(ops);
}

std::vector<double> grid_angles(const AngleGrid& grid, const Choice& c) {
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        out[i] = grid.value(c[i]);
    }
    return out;
}

std::vector<double> plus(std::vector<double> a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] += b.at(i);
    }
    return a;
}

}  // namespace

ProtocolDef mutual_id_protocol(const PhotonGroupLayout& g, const AngleGrid& grid,
                               const std::optional<SessionKeys>& keys) {
    if (g.slots.size() != g.n + g.m || g.n == 0) {
        throw ShapeError("photon group needs at least one IF-photon and n + m slots");
    }
    if (g.n + g.m > kMaxPureQubits) {
        throw ResourceLimitError("photon group exceeds " + std::to_string(kMaxPureQubits) + " photons");
    }
    ProtocolDef p;
    p.name = "mutual-id";
    p.layout = single_qubit_layout(g.slots);
    for (const auto& s : g.slots) {
        if (s.rfind("if", 0) == 0) {
            p.message_registers.push_back(s);
        }
    }
    const auto ifs = g.if_registers();
    const auto ids = g.id_registers();
    const std::size_t n = g.n;
    const std::size_t m = g.m;
    const auto radix = static_cast<std::uint32_t>(grid.size());
    p.alice_domain = RandomDomain::repeated(radix, n);
    p.bob_domain = RandomDomain::repeated(radix, n);
    p.stages[0].party = Party::Alice;
    p.stages[1].party = Party::Bob;
    p.stages[2].party = Party::Alice;
    p.stages[3].party = Party::Bob;

    auto id_op = [m](std::vector<double> IdentityKeys::*field, double sign, const char* what) {
        return [m, field, sign, what](const Choice&, const IdentityKeys& k) {
            return polarization_layer(checked_angles(k.*field, m, what), sign);
        };
    };

    auto& s1 = p.stages[0].steps;
    s1.push_back(Step::apply(
        ifs,
        [grid, n](const Choice& c, const IdentityKeys& k) {
            return polarization_layer(plus(grid_angles(grid, c), checked_angles(k.phi_c, n, "phi_C")), 1);
        },
        "R(A+C)"));
    if (m > 0) {
        s1.push_back(Step::apply(ids, id_op(&IdentityKeys::psi, 1, "psi"), "R(psi)"));
    }

    auto& s2 = p.stages[1].steps;
    if (m > 0) {
        s2.push_back(Step::apply(ids, id_op(&IdentityKeys::psi, -1, "psi"), "R(-psi)"));
        s2.push_back(Step::check(ids));
        s2.push_back(Step::apply(ids, id_op(&IdentityKeys::psi1, 1, "psi'"), "R(psi')"));
    }
    s2.push_back(Step::apply(
        ifs, [grid](const Choice& c, const IdentityKeys&) { return polarization_layer(grid_angles(grid, c), 1); },
        "R(B)"));

    auto& s3 = p.stages[2].steps;
    if (m > 0) {
        s3.push_back(Step::apply(ids, id_op(&IdentityKeys::psi1, -1, "psi'"), "R(-psi')"));
        s3.push_back(Step::check(ids));
    }
    s3.push_back(Step::apply(
        ifs, [grid](const Choice& c, const IdentityKeys&) { return polarization_layer(grid_angles(grid, c), -1); },
        "R(-A)"));
    if (m > 0) {
        s3.push_back(Step::apply(ids, id_op(&IdentityKeys::psi2, 1, "psi''"), "R(psi'')"));
    }

    auto& s4 = p.stages[3].steps;
    if (m > 0) {
        s4.push_back(Step::apply(ids, id_op(&IdentityKeys::psi2, -1, "psi''"), "R(-psi'')"));
        s4.push_back(Step::check(ids));
    }
    s4.push_back(Step::apply(
        ifs,
        [grid, n](const Choice& c, const IdentityKeys& k) {
            return polarization_layer(plus(grid_angles(grid, c), checked_angles(k.phi_c, n, "phi_C")), -1);
        },
        "R(-B-C)"));

    p.default_keys = keys ? *keys : mutual_id_keys(std::vector<double>(n, 0.0), std::vector<double>(m, 0.0),
                                                   std::vector<double>(m, 0.0), std::vector<double>(m, 0.0));
    return p;
}

// ---------------------------------------------------------------------------
// Classical transmission

ClassicalResult classical_simple(const Bits& bits, const AngleGrid& grid, const std::vector<double>& phi_c,
                                 std::uint64_t seed, std::size_t shares_per_bit) {
    if (shares_per_bit == 0) {
        throw ConfigError("shares per bit must be positive");
    }
    ClassicalResult r;
    r.message = bits;
    Rng root(seed);
    Rng share_rng = root.fork(16);
    r.sent = shares_per_bit == 1 ? bits : split_into_shares(bits, shares_per_bit, share_rng);
    const std::size_t q = r.sent.size();
    if (q == 0 || q > kMaxPureQubits) {
        throw ResourceLimitError("classical transmission carries 1.." + std::to_string(kMaxPureQubits) + " photons");
    }
    const std::vector<double> c = phi_c.empty() ? std::vector<double>(q, 0.0) : phi_c;
    const ProtocolDef p = rotation_with_id(RotationSpec::polarization(q, grid), c);
    std::vector<double> angles(q);
    for (std::size_t i = 0; i < q; ++i) {
        angles[i] = r.sent[i] * std::numbers::pi / 2;
    }
    r.transcript = engine::run_session(p, polarization_state(angles), seed);
    Rng meas = root.fork(17);
    r.received = measure(*r.transcript.delivered, r.transcript.delivered->layout().names(), meas).outcome;
    r.recovered = shares_per_bit == 1 ? r.received : combine_shares(r.received, shares_per_bit);
    return r;
}

// ---------------------------------------------------------------------------
// Hadamard / CNOT

namespace {

/// X^{c} on a register of c.size() qubits.
UnitaryOp xor_constant(const Bits& c) {
    std::vector<UnitaryOp> ops;
    ops.reserve(c.size());
    for (auto b : c) {
        ops.push_back(b ? gates::X() : gates::I());
    }
    return tensor_all(ops);
}

/// |m>|r> -> |m>|r xor c xor (m_1 k_1) xor ... xor (m_n k_n)> with m_1 the MSB of m.
UnitaryOp mask_op(std::size_t n, const std::vector<std::uint64_t>& ks, std::uint64_t c) {
    const std::uint64_t low = (std::uint64_t{1} << n) - 1;
    return permutation_unitary(2 * n, [=](std::uint64_t idx) {
        const std::uint64_t mm = idx >> n;
        std::uint64_t r = (idx & low) ^ c;
        for (std::size_t j = 0; j < n; ++j) {
            if ((mm >> (n - 1 - j)) & 1u) {
                r ^= ks[j];
            }
        }
        return (mm << n) | r;
    });
}

UnitaryOp mask_from_choice(std::size_t n, const Choice& c) {
    std::vector<std::uint64_t> ks(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n));
    return mask_op(n, ks, c.at(n));
}

const Bits& sized_bits(const Bits& b, std::size_t n, const char* what) {
    if (b.size() != n) {
        throw ShapeError(std::string(what) + " must have " + std::to_string(n) + " bits");
    }
    return b;
}

}  // namespace

SessionKeys hadamard_keys(const Bits& s_a, const Bits& s_b) {
    IdentityKeys k;
    k.s_a = s_a;
    k.s_b = s_b;
    return SessionKeys::shared(k);
}

ProtocolDef hadamard_cnot_protocol(std::size_t n, const Bits& s_a, const Bits& s_b) {
    if (n == 0 || n > kMaxHadamardBits) {
        throw ResourceLimitError("the Hadamard/CNOT scheme takes 1.." + std::to_string(kMaxHadamardBits) +
                                 " message bits");
    }
    sized_bits(s_a, n, "s_A");
    sized_bits(s_b, n, "s_B");
    ProtocolDef p;
    p.name = "hadamard-cnot";
    p.layout = Layout{{"m", n}, {"a", n}, {"b", n}};
    p.message_registers = {"m"};
    const auto radix = static_cast<std::uint32_t>(1u << n);
    p.alice_domain = RandomDomain::repeated(radix, n + 1);
    p.bob_domain = RandomDomain::repeated(radix, n + 1);
    p.stages[0].party = Party::Alice;
    p.stages[1].party = Party::Bob;
    p.stages[2].party = Party::Alice;
    p.stages[3].party = Party::Bob;

    auto hadamard = [n](const Choice&, const IdentityKeys&) { return gates::hadamard_layer(n); };
    auto mask = [n](const Choice& c, const IdentityKeys&) { return mask_from_choice(n, c); };
    auto xor_sa = [n](const Choice&, const IdentityKeys& k) { return xor_constant(sized_bits(k.s_a, n, "s_A")); };
    auto xor_sb = [n](const Choice&, const IdentityKeys& k) { return xor_constant(sized_bits(k.s_b, n, "s_B")); };

    p.stages[0].steps = {Step::apply({"m"}, hadamard, "H"), Step::apply({"m", "a"}, mask, "mask_A")};
    p.stages[1].steps = {Step::apply({"a"}, xor_sb, "xor s_B"), Step::apply({"m", "b"}, mask, "mask_B")};
    p.stages[2].steps = {Step::apply({"m", "a"}, mask, "mask_A"), Step::apply({"a"}, xor_sb, "xor s_B"),
                         Step::check({"a"}), Step::apply({"b"}, xor_sa, "xor s_A")};
    p.stages[3].steps = {Step::apply({"b"}, xor_sa, "xor s_A"), Step::apply({"m", "b"}, mask, "mask_B"),
                         Step::apply({"m"}, hadamard, "H")};
    p.default_keys = hadamard_keys(s_a, s_b);
    return p;
}

HadamardResult run_hadamard_cnot(const Bits& x, const Bits& s_a, const Bits& s_b, std::uint64_t seed,
                                 const std::optional<SessionKeys>& keys) {
    const ProtocolDef p = hadamard_cnot_protocol(x.size(), s_a, s_b);
    HadamardResult r;
    r.transcript = engine::run_session(p, QState::basis(Layout{{"m", x.size()}}, bits_to_index(x)), keys, nullptr,
                                       seed);
    Rng meas = Rng(seed).fork(17);
    r.recovered = measure(*r.transcript.delivered, "m", meas).outcome;
    return r;
}

// ---------------------------------------------------------------------------
// Boolean functions

namespace {

void check_boolean_sizes(std::size_t k, std::size_t n, std::size_t registers) {
    if (k == 0 || k > kMaxTableArity || n == 0) {
        throw ShapeError("Boolean protocols take 1.." + std::to_string(kMaxTableArity) +
                         " input bits and at least one output bit");
    }
    if (k + registers * n > kMaxPureQubits) {
        throw ResourceLimitError("Boolean protocol needs " + std::to_string(k + registers * n) +
                                 " qubits, more than " + std::to_string(kMaxPureQubits));
    }
}

BooleanTable table_from_choice(std::size_t k, std::size_t n, const Choice& c) {
    return BooleanTable(k, n, std::vector<std::uint64_t>(c.begin(), c.end()));
}

RandomDomain table_domain(std::size_t k, std::size_t n) {
    return RandomDomain::repeated(static_cast<std::uint32_t>(1u << n), std::size_t{1} << k);
}

Choice table_choice(const BooleanTable& t) {
    return Choice(t.entries().begin(), t.entries().end());
}

const BooleanTable& need_table(const std::optional<BooleanTable>& t, const char* what) {
    if (!t) {
        throw PreconditionError(std::string("identification table ") + what + " missing from the keys");
    }
    return *t;
}

void set_parties(ProtocolDef& p) {
    p.stages[0].party = Party::Alice;
    p.stages[1].party = Party::Bob;
    p.stages[2].party = Party::Alice;
    p.stages[3].party = Party::Bob;
}

ProtocolDef boolean_skeleton(const std::string& name, std::size_t k, std::size_t n) {
    ProtocolDef p;
    p.name = name;
    p.layout = Layout{{"m", k}, {"fa", n}, {"fb", n}};
    p.message_registers = {"m"};
    set_parties(p);
    return p;
}

/// Fixes both parties' randomness to one choice each.
void pin_choices(ProtocolDef& p, const BooleanTable& fa, const BooleanTable& fb) {
    const Choice ca = table_choice(fa);
    const Choice cb = table_choice(fb);
    p.alice_domain = RandomDomain();
    p.bob_domain = RandomDomain();
    for (int s = 0; s < 4; ++s) {
        const Choice& fixed = s % 2 == 0 ? ca : cb;
        for (auto& step : p.stages[s].steps) {
            if (step.kind == Step::Kind::Apply) {
                auto inner = step.build;
                step.build = [inner, fixed](const Choice&, const IdentityKeys& k) { return inner(fixed, k); };
            }
        }
    }
}

}  // namespace

ProtocolDef boolean_protocol(std::size_t k, std::size_t n) {
    check_boolean_sizes(k, n, 2);
    ProtocolDef p = boolean_skeleton("boolean", k, n);
    p.alice_domain = table_domain(k, n);
    p.bob_domain = table_domain(k, n);
    auto f = [k, n](const Choice& c, const IdentityKeys&) { return xor_oracle(table_from_choice(k, n, c)); };
    p.stages[0].steps = {Step::apply({"m", "fa"}, f, "U_FA")};
    p.stages[1].steps = {Step::apply({"m", "fb"}, f, "U_FB")};
    p.stages[2].steps = {Step::apply({"m", "fa"}, f, "U_FA")};
    p.stages[3].steps = {Step::apply({"m", "fb"}, f, "U_FB")};
    return p;
}

ProtocolDef boolean_protocol(const BooleanTable& fa, const BooleanTable& fb) {
    if (fa.arity() != fb.arity() || fa.width() != fb.width()) {
        throw ShapeError("F_A and F_B must have the same arity and width");
    }
    ProtocolDef p = boolean_protocol(fa.arity(), fa.width());
    pin_choices(p, fa, fb);
    return p;
}

SessionKeys boolean_id_keys(const BooleanTable& s_a, const BooleanTable& s_b) {
    if (s_a.arity() != s_b.arity() || s_a.width() != s_b.width()) {
        throw ShapeError("s_A and s_B must have the same arity and width");
    }
    IdentityKeys k;
    k.table_a = s_a;
    k.table_b = s_b;
    return SessionKeys::shared(k);
}

SessionKeys random_boolean_id_keys(std::size_t k, std::size_t n, Rng& rng) {
    BooleanTable s_a = BooleanTable::random_nowhere_zero(k, n, rng);
    BooleanTable s_b = BooleanTable::random_nowhere_zero(k, n, rng);
    for (int attempt = 0; attempt < 64 && s_a == s_b; ++attempt) {
        s_b = BooleanTable::random_nowhere_zero(k, n, rng);
    }
    return boolean_id_keys(s_a, s_b);
}

ProtocolDef boolean_with_id(std::size_t k, std::size_t n, const std::optional<SessionKeys>& keys) {
    check_boolean_sizes(k, n, 2);
    ProtocolDef p = boolean_skeleton("boolean-id", k, n);
    p.alice_domain = table_domain(k, n);
    p.bob_domain = table_domain(k, n);
    auto f = [k, n](const Choice& c, const IdentityKeys&) { return xor_oracle(table_from_choice(k, n, c)); };
    auto sa = [](const Choice&, const IdentityKeys& id) { return xor_oracle(need_table(id.table_a, "s_A")); };
    auto sb = [](const Choice&, const IdentityKeys& id) { return xor_oracle(need_table(id.table_b, "s_B")); };
    p.stages[0].steps = {Step::apply({"m", "fa"}, f, "U_FA"), Step::apply({"m", "fb"}, sa, "U_sA")};
    p.stages[1].steps = {Step::apply({"m", "fb"}, sa, "U_sA"), Step::check({"fb"}),
                         Step::apply({"m", "fb"}, f, "U_FB"), Step::apply({"m", "fa"}, sb, "U_sB")};
    p.stages[2].steps = {Step::apply({"m", "fa"}, sb, "U_sB"), Step::apply({"m", "fa"}, f, "U_FA"),
                         Step::check({"fa"}), Step::apply({"m", "fb"}, sa, "U_sA")};
    p.stages[3].steps = {Step::apply({"m", "fb"}, sa, "U_sA"), Step::apply({"m", "fb"}, f, "U_FB"),
                         Step::check({"fb"})};
    if (keys) {
        p.default_keys = *keys;
    } else {
        p.default_keys = boolean_id_keys(BooleanTable::constant(k, n, (std::uint64_t{1} << n) - 1),
                                         BooleanTable::constant(k, n, 1));
    }
    p.key_warnings = [](const SessionKeys& s) {
        std::vector<std::string> w;
        for (const IdentityKeys* id : {&s.alice, &s.bob}) {
            if (id->table_a && id->table_b && *id->table_a == *id->table_b) {
                w.push_back("s_A equals s_B: an impersonator can pass the identification checks");
                break;
            }
        }
        return w;
    };
    return p;
}

ProtocolDef boolean_with_id(const BooleanTable& fa, const BooleanTable& fb, const BooleanTable& s_a,
                            const BooleanTable& s_b) {
    if (fa.arity() != fb.arity() || fa.width() != fb.width() || s_a.arity() != fa.arity() ||
        s_a.width() != fa.width()) {
        throw ShapeError("F_A, F_B, s_A and s_B must share arity and width");
    }
    ProtocolDef p = boolean_with_id(fa.arity(), fa.width(), boolean_id_keys(s_a, s_b));
    pin_choices(p, fa, fb);
    return p;
}

ProtocolDef phase_kickback_protocol(std::size_t n) {
    check_boolean_sizes(n, 1, 1);
    ProtocolDef p;
    p.name = "phase-kickback";
    p.layout = Layout{{"m", n}, {"anc", 1}};
    p.message_registers = {"m"};
    Vector minus(2);
    minus << 1 / std::numbers::sqrt2, -1 / std::numbers::sqrt2;
    p.ancilla_init.emplace("anc", QState::pure(Layout{{"anc", 1}}, minus));
    set_parties(p);
    p.alice_domain = table_domain(n, 1);
    p.bob_domain = table_domain(n, 1);
    auto f = [n](const Choice& c, const IdentityKeys&) { return xor_oracle(table_from_choice(n, 1, c)); };
    p.stages[0].steps = {Step::apply({"m", "anc"}, f, "U_fA")};
    p.stages[1].steps = {Step::apply({"m", "anc"}, f, "U_fB")};
    p.stages[2].steps = {Step::apply({"m", "anc"}, f, "U_fA")};
    p.stages[3].steps = {Step::apply({"m", "anc"}, f, "U_fB")};
    return p;
}

ProtocolDef phase_kickback_protocol(const BooleanTable& fa, const BooleanTable& fb) {
    if (fa.width() != 1 || fb.width() != 1 || fa.arity() != fb.arity()) {
        throw ShapeError("phase kickback needs two single-output tables of equal arity");
    }
    ProtocolDef p = phase_kickback_protocol(fa.arity());
    pin_choices(p, fa, fb);
    return p;
}

// ---------------------------------------------------------------------------
// Perfect encryption and references

pqc::PqcKey pqc_key_from_choice(const pqc::PqcScheme& s, const Choice& c) {
    const std::size_t n = s.n();
    if (c.size() != 2 * n) {
        throw ShapeError("PQC choice must hold 2n bits");
    }
    pqc::PqcKey k;
    k.alpha.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n));
    k.beta.assign(c.begin() + static_cast<std::ptrdiff_t>(n), c.end());
    return k;
}

ProtocolDef pqc_qnk_protocol(const pqc::PqcScheme& s) {
    if (s.n() == 0 || s.n() > kMaxPureQubits) {
        throw ResourceLimitError("PQC protocol takes 1.." + std::to_string(kMaxPureQubits) + " qubits");
    }
    ProtocolDef p;
    p.name = "pqc-qnk-" + s.name();
    p.layout = Layout{{"m", s.n()}};
    p.message_registers = {"m"};
    set_parties(p);
    p.alice_domain = RandomDomain::repeated(2, 2 * s.n());
    p.bob_domain = RandomDomain::repeated(2, 2 * s.n());
    auto enc = [s](const Choice& c, const IdentityKeys&) { return key_unitary(s, pqc_key_from_choice(s, c)); };
    auto dec = [s](const Choice& c, const IdentityKeys&) {
        return key_unitary(s, pqc_key_from_choice(s, c)).adjoint();
    };
    p.stages[0].steps = {Step::apply({"m"}, enc, "U_k")};
    p.stages[1].steps = {Step::apply({"m"}, enc, "V_l")};
    p.stages[2].steps = {Step::apply({"m"}, dec, "U_k^dag")};
    p.stages[3].steps = {Step::apply({"m"}, dec, "V_l^dag")};
    return p;
}

ProtocolDef commutative_basic(std::size_t n) {
    if (n > kMaxPureQubits) {
        throw ResourceLimitError("commutative protocol exceeds " + std::to_string(kMaxPureQubits) + " qubits");
    }
    ProtocolDef p;
    p.name = "commutative-basic";
    p.layout = Layout{{"m", n}};
    p.message_registers = {"m"};
    set_parties(p);
    p.alice_domain = RandomDomain::repeated(2, n);
    p.bob_domain = RandomDomain::repeated(2, n);
    auto shift = [](const Choice& c, const IdentityKeys&) { return xor_constant(Bits(c.begin(), c.end())); };
    for (int s = 0; s < 4; ++s) {
        p.stages[s].steps = {Step::apply({"m"}, shift, s % 2 == 0 ? "X^a" : "X^b")};
    }
    return p;
}

ShamirResult shamir_classical(const Bits& m, const Bits& k_a, const Bits& k_b) {
    if (m.size() != k_a.size() || m.size() != k_b.size()) {
        throw ShapeError("message and keys must have equal lengths");
    }
    ShamirResult r;
    r.c1 = xor_bits(m, k_a);
    r.c2 = xor_bits(r.c1, k_b);
    r.c3 = xor_bits(r.c2, k_a);
    r.recovered = xor_bits(r.c3, k_b);
    return r;
}

// ---------------------------------------------------------------------------

std::vector<std::string> protocol_names() {
    return {"rotation",      "polarization", "rotation-id",    "mutual-id", "hadamard-cnot",
            "boolean",       "boolean-id",   "phase-kickback", "pqc-qnk",   "commutative-basic"};
}

ProtocolDef by_name(const std::string& name, const ProtocolParams& params) {
    const AngleGrid grid(params.grid);
    Rng rng(params.seed);
    Rng keys_rng = rng.fork(32);
    if (name == "rotation") {
        return rotation_protocol(RotationSpec::bloch(params.n, grid, Axis::z_axis()));
    }
    if (name == "polarization") {
        return rotation_protocol(RotationSpec::polarization(params.n, grid));
    }
    if (name == "rotation-id") {
        std::vector<double> phi_c(params.n);
        for (auto& c : phi_c) {
            c = grid.value(static_cast<std::size_t>(keys_rng.below(grid.size())));
        }
        return rotation_with_id(RotationSpec::polarization(params.n, grid), phi_c);
    }
    if (name == "mutual-id") {
        const PhotonGroupLayout g = PhotonGroupLayout::random(params.n, params.m, keys_rng);
        return mutual_id_protocol(g, grid, random_mutual_id_keys(g, grid, keys_rng));
    }
    if (name == "hadamard-cnot") {
        if (params.n == 0 || params.n > kMaxHadamardBits) {
            throw ResourceLimitError("the Hadamard/CNOT scheme takes 1.." + std::to_string(kMaxHadamardBits) +
                                     " message bits");
        }
        const Bits s_a = random_bits(params.n, keys_rng);
        const Bits s_b = random_bits(params.n, keys_rng);
        return hadamard_cnot_protocol(params.n, s_a, s_b);
    }
    if (name == "boolean") {
        return boolean_protocol(params.k, params.n);
    }
    if (name == "boolean-id") {
        check_boolean_sizes(params.k, params.n, 2);
        return boolean_with_id(params.k, params.n, random_boolean_id_keys(params.k, params.n, keys_rng));
    }
    if (name == "phase-kickback") {
        return phase_kickback_protocol(params.n);
    }
    if (name == "pqc-qnk") {
        return pqc_qnk_protocol(pqc::PqcScheme::named(params.scheme, params.n));
    }
    if (name == "commutative-basic") {
        return commutative_basic(params.n);
    }
    throw ConfigError("unknown protocol '" + name + "'");
}

std::vector<NamedConfig> enumerable_configs() {
    auto make = [](std::string name, std::size_t n, std::size_t k, std::size_t m, std::size_t grid,
                   std::string scheme) {
        ProtocolParams p;
        p.n = n;
        p.k = k;
        p.m = m;
        p.grid = grid;
        p.scheme = std::move(scheme);
        p.seed = 1;
        return NamedConfig{std::move(name), p};
    };
    return {
        make("rotation", 2, 0, 0, 4, ""),
        make("polarization", 2, 0, 0, 4, ""),
        make("rotation-id", 2, 0, 0, 4, ""),
        make("mutual-id", 2, 0, 2, 4, ""),
        make("hadamard-cnot", 2, 0, 0, 8, ""),
        make("boolean", 1, 2, 0, 8, ""),
        make("boolean-id", 1, 2, 0, 8, ""),
        make("phase-kickback", 2, 0, 0, 8, ""),
        make("pqc-qnk", 2, 0, 0, 8, "XZ"),
        make("pqc-qnk", 2, 0, 0, 8, "XY"),
        make("pqc-qnk", 2, 0, 0, 8, "YH"),
        make("commutative-basic", 3, 0, 0, 8, ""),
    };
}

}  // namespace qnk::protocols
