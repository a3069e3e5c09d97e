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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qnk/bits.hpp"
#include "qnk/engine.hpp"
#include "qnk/protocols.hpp"

namespace qnk::attacks {

struct TrialLog {
    std::uint64_t trial = 0;
    std::string outcome;  // "success", "failure" or "detected"
    std::string detail;
};

struct AttackReport {
    std::string attack;
    std::string status = "ok";  // or "not-applicable"
    std::uint64_t trials = 0;
    std::uint64_t success = 0;
    std::uint64_t failure = 0;
    std::uint64_t detected = 0;
    std::map<std::string, double> estimators;
    std::vector<TrialLog> log;

    double success_rate() const;
    double detection_rate() const;
    void record(std::uint64_t trial, const std::string& outcome, std::string detail = "");
};

/// Folds `b` into `a` (counts and logs; estimators of `b` are dropped).
void merge(AttackReport& a, const AttackReport& b);

using MessageFactory = std::function<QState(Rng&)>;
using KeyFactory = std::function<std::optional<engine::SessionKeys>(Rng&)>;

// ---------------------------------------------------------------------------
// Man in the middle, reflecting

/// Sends Bob |0...0> on pass 1, returns the stored pass-1 cipher to Alice on
/// pass 2 and keeps the pass-3 cipher.
class ReflectAdversary : public engine::Adversary {
   public:
    engine::Interception intercept(int pass, const QState& cipher, Rng& rng) override;
    const std::optional<QState>& captured() const { return captured_; }

   private:
    std::optional<QState> stored_;
    std::optional<QState> captured_;
};

/// Success: no check failed and Eve's pass-3 state equals the message.
AttackReport mim_reflect(const engine::ProtocolDef& p, std::uint64_t trials, std::uint64_t seed,
                         const MessageFactory& message = nullptr, const KeyFactory& keys = nullptr);

// ---------------------------------------------------------------------------
// Photon swap against mutual identification

struct PhotonSwapParams {
    std::size_t n = 4;
    std::size_t m = 2;
    std::size_t grid = protocols::kDefaultGridSize;
    /// Every message bit travels as n XOR shares.
    bool defense = false;
    /// Grid index of the shared phi_C; absent means phi_C = 0 on every photon.
    std::optional<std::size_t> phi_c_index;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
};

/// Retains one random photon on pass 1 (sending |0> instead), puts it back on
/// pass 2 and measures that slot on pass 3.
class PhotonSwapAdversary : public engine::Adversary {
   public:
    explicit PhotonSwapAdversary(std::size_t slot) : slot_(slot) {}
    engine::Interception intercept(int pass, const QState& cipher, Rng& rng) override;
    std::optional<std::uint8_t> measured_bit() const { return bit_; }

   private:
    std::size_t slot_;
    std::optional<QState> retained_;
    std::optional<std::uint8_t> bit_;
};

/// Estimators: if_pick_rate, undetected_rate, guess_accuracy.
AttackReport mim_photon_swap(const PhotonSwapParams& params);

// ---------------------------------------------------------------------------
// Unbalance of information source

enum class Harvest { Analytic, Engine };

struct UisParams {
    std::size_t grid = protocols::kDefaultGridSize;
    std::size_t phi_c_index = 0;
    double epsilon = 0.1;
    /// Eve's belief about epsilon; the true value when absent.
    std::optional<double> assumed_epsilon;
    std::uint64_t t = 10000;
    std::uint64_t campaigns = 1;
    std::uint64_t seed = 0;
    Harvest harvest = Harvest::Analytic;
};

struct UisCampaign {
    double p0_hat = 0;
    double cos_hat = 0;
    std::size_t k1 = 0;  // grid index of phi_1
    double phi1 = 0;
    double phi2 = 0;
    double fraction2 = 0;  // phase-2 projection fraction onto |phi_1>
    double recovered = 0;
    bool success = false;
};

/// One harvested state |x pi/2 + phi_C> with P(x = 1) = 1/2 - epsilon.
QState uis_harvest_state(const UisParams& params, Rng& rng);

/// One campaign of t harvested states.
UisCampaign uis_campaign(const UisParams& params, Rng& rng);

/// Grid index k in [0, K/2] whose cos(2 k pi / K) is nearest to `c`; ties go to
/// the smaller k.
std::size_t uis_snap(double c, std::size_t grid);

/// Phase-2 decision: true keeps phi_1.
bool uis_choose_first(double fraction, double epsilon, double phi1);

/// Estimators: p0_mean, p0_expected, p0_stddev, recovery_rate.
AttackReport uis_attack(const UisParams& params);

// ---------------------------------------------------------------------------
// Measuring the ciphers of the perfect-encryption protocol

/// Measures the whole register in the computational basis on every pass and
/// forwards the collapsed state.
class CipherMeasureAdversary : public engine::Adversary {
   public:
    engine::Interception intercept(int pass, const QState& cipher, Rng& rng) override;
    const std::vector<Bits>& strings() const { return strings_; }

   private:
    std::vector<Bits> strings_;
};

/// Eve's guess c1 xor c2 xor c3. An empty `message` draws a fresh random one
/// per trial.
AttackReport pauli_cipher_attack(const std::string& scheme, std::size_t n, const Bits& message,
                                 std::uint64_t trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Intercept and resend against the single-photon rotation protocol

enum class BasisPolicy { None, Fixed, Random };

struct InterceptParams {
    std::size_t grid = protocols::kDefaultGridSize;
    BasisPolicy policy = BasisPolicy::Fixed;
    std::size_t basis_index = 0;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
};

class InterceptResendAdversary : public engine::Adversary {
   public:
    explicit InterceptResendAdversary(double basis) : basis_(basis) {}
    engine::Interception intercept(int pass, const QState& cipher, Rng& rng) override;
    std::optional<std::uint8_t> outcome() const { return outcome_; }

   private:
    double basis_;
    std::optional<std::uint8_t> outcome_;
};

/// A random bit b travels as |b pi/2>; Eve guesses b from her pass-1 outcome.
/// Estimators: guess_accuracy, mean_fidelity.
AttackReport intercept_resend(const InterceptParams& params);

std::vector<std::string> attack_names();

}  // namespace qnk::attacks
