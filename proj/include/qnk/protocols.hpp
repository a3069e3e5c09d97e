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
#include <optional>
#include <string>
#include <vector>

#include "qnk/bits.hpp"
#include "qnk/boolean_table.hpp"
#include "qnk/engine.hpp"
#include "qnk/pqc.hpp"
#include "qnk/unitary.hpp"

namespace qnk::protocols {

inline constexpr std::size_t kDefaultGridSize = 8;

/// Angles k pi / K for k = 0 .. 2K-1.
class AngleGrid {
   public:
    explicit AngleGrid(std::size_t k = kDefaultGridSize);

    std::size_t k() const { return k_; }
    std::size_t size() const { return 2 * k_; }
    double value(std::size_t index) const;
    std::vector<double> values() const;

   private:
    std::size_t k_;
};

/// Single-qubit rotations on every qubit, one axis per qubit and party.
///
/// With angle_scale 1 the grid angle is a Bloch-sphere rotation angle. The
/// photon protocols use angle_scale 2 around -y, so that a grid angle is the
/// polarization angle theta of |theta> = cos(theta)|0> + sin(theta)|1>.
struct RotationSpec {
    std::size_t qubits = 1;
    AngleGrid grid;
    std::vector<Axis> alice_axes;
    std::vector<Axis> bob_axes;
    double angle_scale = 1;

    static RotationSpec bloch(std::size_t qubits, AngleGrid grid, const Axis& axis);
    static RotationSpec polarization(std::size_t qubits, AngleGrid grid);
};

/// The single-qubit operator a RotationSpec uses for angle `theta` on an axis.
UnitaryOp spec_rotation(const RotationSpec& spec, const Axis& axis, double theta);

engine::ProtocolDef rotation_protocol(const RotationSpec& spec);

/// Alice's first rotation adds phi_C; Bob's last one removes phi_B + phi_C.
/// phi_C is read from IdentityKeys::phi_c; the defaults hold `phi_c`.
engine::ProtocolDef rotation_with_id(const RotationSpec& spec, const std::vector<double>& phi_c);

/// Shared keys carrying only phi_C.
engine::SessionKeys phi_c_keys(const std::vector<double>& phi_c);

/// Product state (x)_i |theta_i>, polarization angles.
QState polarization_state(const std::vector<double>& angles);

// ---------------------------------------------------------------------------
// Mutual identification

/// Channel order of IF- and ID-photons inside one group.
struct PhotonGroupLayout {
    std::size_t n = 0;  // IF-photons
    std::size_t m = 0;  // ID-photons
    /// Register names in channel order: "if1".."ifn" and "id1".."idm".
    std::vector<std::string> slots;

    /// `id_slots` lists the channel positions (0-based) of the ID-photons.
    static PhotonGroupLayout interleaved(std::size_t n, std::size_t m, const std::vector<std::size_t>& id_slots);
    static PhotonGroupLayout random(std::size_t n, std::size_t m, Rng& rng);

    bool is_id_slot(std::size_t slot) const;
    std::vector<std::string> if_registers() const;
    std::vector<std::string> id_registers() const;
};

/// Preshared angles psi, psi', psi'' (each of length m) and phi_C (length n).
engine::SessionKeys mutual_id_keys(const std::vector<double>& phi_c, const std::vector<double>& psi,
                                   const std::vector<double>& psi1, const std::vector<double>& psi2);
engine::SessionKeys random_mutual_id_keys(const PhotonGroupLayout& g, const AngleGrid& grid, Rng& rng,
                                          bool zero_phi_c = false);

engine::ProtocolDef mutual_id_protocol(const PhotonGroupLayout& g, const AngleGrid& grid,
                                       const std::optional<engine::SessionKeys>& keys = std::nullopt);

// ---------------------------------------------------------------------------
// Classical transmission over rotations

struct ClassicalResult {
    Bits message;
    /// Bits carried by the photons (the shares when decomposition is on).
    Bits sent;
    Bits received;
    Bits recovered;
    engine::Transcript transcript;
};

/// Encodes x_i as |x_i pi/2>, runs the phi_C protocol and lets Bob measure in
/// {|0>, |pi/2>}. With shares_per_bit > 1 every bit is sent as that many
/// random bits whose XOR is the bit.
ClassicalResult classical_simple(const Bits& bits, const AngleGrid& grid, const std::vector<double>& phi_c,
                                 std::uint64_t seed, std::size_t shares_per_bit = 1);

// ---------------------------------------------------------------------------
// Hadamard / CNOT scheme

inline constexpr std::size_t kMaxHadamardBits = 4;

/// Registers m, a, b of n qubits each. Alice's randomness is
/// (k_A1..k_An, i), Bob's (k_B1..k_Bn, j), every digit an n-bit number.
engine::ProtocolDef hadamard_cnot_protocol(std::size_t n, const Bits& s_a, const Bits& s_b);
engine::SessionKeys hadamard_keys(const Bits& s_a, const Bits& s_b);

struct HadamardResult {
    Bits recovered;
    engine::Transcript transcript;
};

/// Runs a session on |x> and measures Bob's register.
HadamardResult run_hadamard_cnot(const Bits& x, const Bits& s_a, const Bits& s_b, std::uint64_t seed,
                                 const std::optional<engine::SessionKeys>& keys = std::nullopt);

// ---------------------------------------------------------------------------
// Boolean-function protocols

/// Registers m (k qubits), fa and fb (n qubits each); F_A and F_B are drawn
/// uniformly as truth tables.
engine::ProtocolDef boolean_protocol(std::size_t k, std::size_t n);
/// Fixed tables (singleton randomness domains).
engine::ProtocolDef boolean_protocol(const BooleanTable& fa, const BooleanTable& fb);

/// Identification tables s_A, s_B live in IdentityKeys::table_a / table_b.
engine::SessionKeys boolean_id_keys(const BooleanTable& s_a, const BooleanTable& s_b);
/// Distinct nowhere-zero identification tables.
engine::SessionKeys random_boolean_id_keys(std::size_t k, std::size_t n, Rng& rng);

engine::ProtocolDef boolean_with_id(std::size_t k, std::size_t n,
                                    const std::optional<engine::SessionKeys>& keys = std::nullopt);
engine::ProtocolDef boolean_with_id(const BooleanTable& fa, const BooleanTable& fb, const BooleanTable& s_a,
                                    const BooleanTable& s_b);

/// Registers m (n qubits) and anc (|->); U_f is the bit-flip oracle on anc.
engine::ProtocolDef phase_kickback_protocol(std::size_t n);
engine::ProtocolDef phase_kickback_protocol(const BooleanTable& fa, const BooleanTable& fb);

// ---------------------------------------------------------------------------
// Perfect-encryption protocol and references

/// Alice's and Bob's digits are alpha then beta (2n bits each).
engine::ProtocolDef pqc_qnk_protocol(const pqc::PqcScheme& s);
pqc::PqcKey pqc_key_from_choice(const pqc::PqcScheme& s, const engine::Choice& c);

/// U = X^a, V = X^b on an n-qubit register.
engine::ProtocolDef commutative_basic(std::size_t n);

struct ShamirResult {
    Bits c1;
    Bits c2;
    Bits c3;
    Bits recovered;
};

/// XOR-mask classical three-pass exchange.
ShamirResult shamir_classical(const Bits& m, const Bits& k_a, const Bits& k_b);

// ---------------------------------------------------------------------------

/// Protocol names accepted by `by_name`.
std::vector<std::string> protocol_names();

struct ProtocolParams {
    std::size_t n = 2;
    std::size_t k = 2;
    std::size_t m = 2;
    std::size_t grid = kDefaultGridSize;
    std::string scheme = "YH";
    std::uint64_t seed = 0;
};

/// Builds a shipped protocol from a name and parameters; ConfigError for
/// unknown names, ResourceLimitError for sizes over the register limits.
engine::ProtocolDef by_name(const std::string& name, const ProtocolParams& params);

struct NamedConfig {
    std::string name;
    ProtocolParams params;
};

/// One configuration of every shipped protocol whose randomness domain is
/// small enough to enumerate completely.
std::vector<NamedConfig> enumerable_configs();

}  // namespace qnk::protocols
