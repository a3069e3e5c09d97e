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
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qnk/bits.hpp"
#include "qnk/boolean_table.hpp"
#include "qnk/rng.hpp"
#include "qnk/state.hpp"
#include "qnk/unitary.hpp"

namespace qnk::engine {

enum class Party { Alice, Bob };
std::string to_string(Party p);

/// One draw from a party's local randomness: a mixed-radix digit vector.
using Choice = std::vector<std::uint32_t>;

/// Uniform distribution over all digit vectors with the given radices.
class RandomDomain {
   public:
    /// The singleton domain {()}.
    RandomDomain() = default;
    explicit RandomDomain(std::vector<std::uint32_t> radices);
    static RandomDomain repeated(std::uint32_t radix, std::size_t count);

    const std::vector<std::uint32_t>& radices() const { return radices_; }
    /// Domain size, saturating at uint64 max.
    std::uint64_t size() const;
    /// Choice number `index`, first digit most significant.
    Choice at(std::uint64_t index) const;
    Choice sample(Rng& rng) const;

   private:
    std::vector<std::uint32_t> radices_;
};

/// Preshared secrets, as seen by one party.
struct IdentityKeys {
    std::vector<double> phi_c;
    std::vector<double> psi;
    std::vector<double> psi1;
    std::vector<double> psi2;
    std::vector<std::size_t> positions;  // channel slot -> photon index
    Bits s_a;
    Bits s_b;
    std::optional<BooleanTable> table_a;
    std::optional<BooleanTable> table_b;
};

struct SessionKeys {
    IdentityKeys alice;
    IdentityKeys bob;
    static SessionKeys shared(const IdentityKeys& k) { return SessionKeys{k, k}; }
};

using OpBuilder = std::function<UnitaryOp(const Choice&, const IdentityKeys&)>;

struct Step {
    enum class Kind { Apply, Check };
    Kind kind = Kind::Apply;
    std::vector<std::string> registers;
    OpBuilder build;
    std::string label;

    static Step apply(std::vector<std::string> targets, OpBuilder build, std::string label = "");
    /// Computational-basis measurement expecting all zeros.
    static Step check(std::vector<std::string> registers);
};

struct Stage {
    Party party = Party::Alice;
    std::vector<Step> steps;
};

struct ProtocolDef {
    std::string name;
    Layout layout;
    std::vector<std::string> message_registers;
    /// Initial states of non-message registers; |0...0> when absent.
    std::map<std::string, QState> ancilla_init;
    RandomDomain alice_domain;
    RandomDomain bob_domain;
    /// U_k, V_l, U_k', V_l' in order; stages 2..4 may open with checks.
    std::array<Stage, 4> stages;
    std::vector<std::string> warnings;
    std::optional<SessionKeys> default_keys;
    std::function<std::vector<std::string>(const SessionKeys&)> key_warnings;

    Layout message_layout() const { return layout.subset(message_registers); }
    std::vector<std::string> ancilla_registers() const;
    bool has_identification() const;
    /// Throws ShapeError on inconsistent registers or domains.
    void validate() const;
};

// ---------------------------------------------------------------------------
// Sessions

struct Interception {
    QState forwarded;
    std::string action;
};

/// Sits on the channel; sees and replaces each of the three cipher passes.
class Adversary {
   public:
    virtual ~Adversary() = default;
    virtual Interception intercept(int pass, const QState& cipher, Rng& rng) = 0;
};

class TransparentAdversary : public Adversary {
   public:
    Interception intercept(int, const QState& cipher, Rng&) override { return {cipher, "forward"}; }
};

struct CheckRecord {
    Party party = Party::Bob;
    std::vector<std::string> registers;
    Bits outcome;
    double probability = 0;
    bool passed = false;
};

struct PassRecord {
    int pass = 0;
    Party sender = Party::Alice;
    QState cipher;
    std::string adversary_action;
    /// Checks run by the receiver on this pass.
    std::vector<CheckRecord> checks;
};

enum class Status { Delivered, Aborted, AttackerSuccess };
std::string to_string(Status s);

struct Transcript {
    std::uint64_t session_id = 0;
    std::uint64_t seed = 0;
    std::string protocol;
    Choice k;
    Choice l;
    std::vector<PassRecord> passes;
    Status status = Status::Delivered;
    std::optional<int> aborted_at_pass;
    std::optional<QState> delivered;
    double phase_distance = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> warnings;
};

/// Stream labels for Rng::fork inside a session.
enum SessionStream : std::uint64_t {
    kAliceStream = 1,
    kBobStream = 2,
    kMeasurementStream = 3,
    kAdversaryStream = 4,
    kDecoyStream = 5,
};

/// Runs the four stages; a failed check records the abort, substitutes random
/// decoys into the checked registers, skips the rest of that stage and lets
/// the traffic continue. With keys absent, the protocol's default keys (or
/// empty keys) are used.
Transcript run_session(const ProtocolDef& p, const QState& message, const std::optional<SessionKeys>& keys,
                       Adversary* adversary, std::uint64_t seed, std::uint64_t session_id = 0);
Transcript run_session(const ProtocolDef& p, const QState& message, std::uint64_t seed);

/// Full-layout state |message> (x) ancillas.
QState initial_state(const ProtocolDef& p, const QState& message);
/// Drops ancillas and renames onto the message layout.
QState extract_message(const ProtocolDef& p, const QState& full);

// ---------------------------------------------------------------------------
// Verification

inline constexpr std::uint64_t kMaxEnumeratedPairs = 4096;

struct HoldingReport {
    std::uint64_t pairs = 0;
    std::uint64_t holding_pairs = 0;
    std::vector<std::pair<Choice, Choice>> failures;  // first few failing pairs
    std::vector<double> phases;                       // distinct phases seen, sorted
    double max_necessary_residual = 0;
    std::uint64_t inverse_pairs = 0;       // pairs where U' = U^dag and V' = V^dag
    std::uint64_t commutation_agreements = 0;  // ... where U^dag V = V U^dag agrees with holding
    bool passed() const { return pairs > 0 && holding_pairs == pairs; }
};

/// Enumerates every (k, l); each stage is composed over the full layout with
/// checks treated as identity.
HoldingReport verify_holding_condition(const ProtocolDef& p, const std::optional<SessionKeys>& keys = std::nullopt,
                                       std::uint64_t max_pairs = kMaxEnumeratedPairs);

/// Full-space matrix of one stage.
Matrix stage_matrix(const ProtocolDef& p, int stage, const Choice& k, const Choice& l, const SessionKeys& keys);

struct IdentifiedReport {
    std::uint64_t pairs = 0;
    bool exhaustive = true;
    std::size_t key_sets = 0;
    bool factorizes = true;         // every checked register returns to |0>
    double max_leak = 0;            // largest amplitude norm outside the checked |0> subspace
    bool restores_message = true;   // composite equals the message embedding up to phase
    bool key_independent = true;    // segment maps agree across key sets
    std::vector<std::string> failures;
    bool passed() const { return factorizes && restores_message; }
};

/// Propagates the message subspace through every segment that ends in a check
/// and confirms the checked registers come back as |0...0>.
IdentifiedReport identified_condition_check(const ProtocolDef& p, const std::vector<SessionKeys>& key_sets,
                                            std::uint64_t max_pairs = kMaxEnumeratedPairs,
                                            std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Ancilla framework

using AncillaPrep = std::function<QState(Rng&)>;

/// rho_1 = tr_A U_A (rho_A (x) rho) U_A^dag and so on, with the parties'
/// retained registers carried in one joint state A (x) M (x) B.
struct AncillaProtocol {
    std::string name = "ancilla";
    std::size_t message_qubits = 1;
    std::size_t alice_qubits = 0;
    std::size_t bob_qubits = 0;
    AncillaPrep prepare_alice;
    AncillaPrep prepare_bob;
    UnitaryOp ua = UnitaryOp::identity(0);   // on A (x) M
    UnitaryOp ub = UnitaryOp::identity(0);   // on M (x) B
    UnitaryOp ua2 = UnitaryOp::identity(0);  // on A (x) M
    UnitaryOp ub2 = UnitaryOp::identity(0);  // on M (x) B
};

/// Delivered state is mixed; phase_distance is the trace distance to the message.
Transcript run_ancilla_session(const AncillaProtocol& p, const QState& message, std::uint64_t seed);

/// Identity on every operation.
AncillaProtocol identity_ancilla_protocol(std::size_t message_qubits);
/// Each message qubit controls a single-qubit unitary on the party's own ancilla
/// qubit; inverses undo them.
AncillaProtocol controlled_unitary_ancilla_protocol(std::size_t message_qubits, const std::vector<UnitaryOp>& alice_ops,
                                                    const std::vector<UnitaryOp>& bob_ops);
/// Alice applies a uniformly random Pauli chosen by a maximally mixed
/// two-qubit ancilla; everything else is the identity.
AncillaProtocol depolarizing_ancilla_protocol();

}  // namespace qnk::engine
