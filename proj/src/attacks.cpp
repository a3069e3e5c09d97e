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


#include "qnk/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnk/error.hpp"
#include "qnk/pqc.hpp"

namespace qnk::attacks {

using engine::Interception;
using engine::ProtocolDef;
using engine::Status;
using protocols::AngleGrid;

double AttackReport::success_rate() const {
    return trials ? static_cast<double>(success) / static_cast<double>(trials) : 0.0;
}

double AttackReport::detection_rate() const {
    return trials ? static_cast<double>(detected) / static_cast<double>(trials) : 0.0;
}

void AttackReport::record(std::uint64_t trial, const std::string& outcome, std::string detail) {
    ++trials;
    if (outcome == "success") {
        ++success;
    } else if (outcome == "detected") {
        ++detected;
    } else {
        ++failure;
    }
    log.push_back({trial, outcome, std::move(detail)});
}

void merge(AttackReport& a, const AttackReport& b) {
    a.trials += b.trials;
    a.success += b.success;
    a.failure += b.failure;
    a.detected += b.detected;
    a.log.insert(a.log.end(), b.log.begin(), b.log.end());
}

namespace {

constexpr std::uint64_t kTrialStream = 64;
constexpr std::uint64_t kSessionStream = 65;

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return Rng(derive_seed(derive_seed(seed, kTrialStream), trial));
}

std::uint64_t session_seed(std::uint64_t seed, std::uint64_t trial) {
    return derive_seed(derive_seed(seed, kSessionStream), trial);
}

QState same_form(const QState& s, const QState& like) {
    return like.is_pure() || !s.is_pure() ? s : s.to_mixed();
}

std::vector<std::string> others(const Layout& l, const std::string& keep) {
    std::vector<std::string> out;
    for (const auto& r : l.registers()) {
        if (r.name != keep) {
            out.push_back(r.name);
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Interception ReflectAdversary::intercept(int pass, const QState& cipher, Rng&) {
    if (pass == 1) {
        stored_ = cipher;
        return {same_form(QState::zeros(cipher.layout()), cipher), "store-and-send-zeros"};
    }
    if (pass == 2) {
        return {*stored_, "reflect"};
    }
    captured_ = cipher;
    return {cipher, "capture"};
}

AttackReport mim_reflect(const ProtocolDef& p, std::uint64_t trials, std::uint64_t seed,
                         const MessageFactory& message, const KeyFactory& keys) {
    AttackReport r;
    r.attack = "mim-reflect";
    double max_distance = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = trial_rng(seed, trial);
        const QState msg = message ? message(rng) : random_pure_state(p.message_layout(), rng);
        const auto k = keys ? keys(rng) : std::nullopt;
        ReflectAdversary eve;
        const engine::Transcript t = engine::run_session(p, msg, k, &eve, session_seed(seed, trial), trial);
        if (t.status == Status::Aborted) {
            r.record(trial, "detected", "aborted at pass " + std::to_string(*t.aborted_at_pass));
            continue;
        }
        const QState stolen = engine::extract_message(p, *eve.captured());
        const double d = phase_distance(stolen, msg.relabel(stolen.layout()));
        max_distance = std::max(max_distance, d);
        r.record(trial, d <= kTolerance ? "success" : "failure");
    }
    r.estimators["max_phase_distance"] = max_distance;
    return r;
}

// ---------------------------------------------------------------------------

Interception PhotonSwapAdversary::intercept(int pass, const QState& cipher, Rng& rng) {
    const Register& reg = cipher.layout().registers().at(slot_);
    if (pass == 1) {
        retained_ = discard(cipher, others(cipher.layout(), reg.name));
        return {substitute(cipher, reg.name, QState::zeros(Layout{reg})), "retain " + reg.name};
    }
    if (pass == 2) {
        return {substitute(cipher, reg.name, *retained_), "reinsert " + reg.name};
    }
    MeasurementOutcome mo = measure(cipher, reg.name, rng);
    bit_ = mo.outcome.at(0);
    return {std::move(mo.post_state), "measure " + reg.name};
}

AttackReport mim_photon_swap(const PhotonSwapParams& params) {
    if (params.n == 0) {
        throw ConfigError("photon swap needs at least one IF-photon");
    }
    const AngleGrid grid(params.grid);
    AttackReport r;
    r.attack = "photon-swap";
    std::uint64_t if_picks = 0;
    std::uint64_t undetected = 0;
    std::uint64_t correct = 0;
    for (std::uint64_t trial = 0; trial < params.trials; ++trial) {
        Rng rng = trial_rng(params.seed, trial);
        const auto g = protocols::PhotonGroupLayout::random(params.n, params.m, rng);
        engine::SessionKeys keys = protocols::random_mutual_id_keys(g, grid, rng, true);
        if (params.phi_c_index) {
            const double c = grid.value(*params.phi_c_index);
            keys.alice.phi_c.assign(params.n, c);
            keys.bob.phi_c.assign(params.n, c);
        }
        Bits message;
        Bits sent;
        if (params.defense) {
            message = random_bits(1, rng);
            sent = split_into_shares(message, params.n, rng);
        } else {
            message = random_bits(params.n, rng);
            sent = message;
        }
        std::vector<double> angles(params.n);
        for (std::size_t i = 0; i < params.n; ++i) {
            angles[i] = sent[i] * std::numbers::pi / 2;
        }
        const std::size_t slot = static_cast<std::size_t>(rng.below(params.n + params.m));
        const ProtocolDef p = protocols::mutual_id_protocol(g, grid, keys);
        PhotonSwapAdversary eve(slot);
        const engine::Transcript t = engine::run_session(p, protocols::polarization_state(angles), std::nullopt,
                                                         &eve, session_seed(params.seed, trial), trial);
        const bool is_if = !g.is_id_slot(slot);
        const std::uint8_t eve_bit = eve.measured_bit().value_or(0);
        if (is_if) {
            ++if_picks;
        }
        bool guessed;
        if (params.defense) {
            const std::uint8_t guess = is_if ? eve_bit : static_cast<std::uint8_t>(rng.bit());
            guessed = guess == message[0];
        } else {
            const std::size_t index = is_if ? std::stoul(g.slots[slot].substr(2)) - 1 : 0;
            guessed = is_if && eve_bit == sent[index];
        }
        if (guessed) {
            ++correct;
        }
        std::string detail = g.slots[slot] + " bit=" + std::to_string(eve_bit);
        if (t.status == Status::Aborted) {
            r.record(trial, "detected", detail);
            continue;
        }
        ++undetected;
        r.record(trial, guessed ? "success" : "failure", detail);
    }
    const double trials = static_cast<double>(std::max<std::uint64_t>(params.trials, 1));
    r.estimators["if_pick_rate"] = static_cast<double>(if_picks) / trials;
    r.estimators["undetected_rate"] = static_cast<double>(undetected) / trials;
    r.estimators["guess_accuracy"] =
        params.defense ? static_cast<double>(correct) / trials
                       : static_cast<double>(correct) / static_cast<double>(std::max<std::uint64_t>(if_picks, 1));
    return r;
}

// ---------------------------------------------------------------------------

namespace {

/// Plays Bob towards Alice: keeps pass 1, returns it with her own rotation on
/// pass 2 and undoes that rotation on Alice's pass-3 reply.
class UisHarvestAdversary : public engine::Adversary {
   public:
    explicit UisHarvestAdversary(double eve_angle) : angle_(eve_angle) {}

    Interception intercept(int pass, const QState& cipher, Rng&) override {
        const std::vector<std::string> all = cipher.layout().names();
        if (pass == 1) {
            stored_ = apply(polarization_rotation(angle_), cipher, all);
            return {QState::zeros(cipher.layout()), "impersonate-bob"};
        }
        if (pass == 2) {
            return {*stored_, "return-own-encryption"};
        }
        harvested_ = apply(polarization_rotation(-angle_), cipher, all);
        return {cipher, "harvest"};
    }

    const std::optional<QState>& harvested() const { return harvested_; }

   private:
    double angle_;
    std::optional<QState> stored_;
    std::optional<QState> harvested_;
};

bool same_mod_pi(double a, double b) {
    return std::abs(std::remainder(a - b, std::numbers::pi)) < 1e-9;
}

void check_uis(const UisParams& p) {
    if (p.t < 2 || p.t % 2 != 0) {
        throw ConfigError("t must be an even number of harvested states, at least 2");
    }
    if (!(p.epsilon > -0.5 && p.epsilon < 0.5)) {
        throw ConfigError("epsilon must lie in (-0.5, 0.5)");
    }
    if (p.phi_c_index >= 2 * p.grid) {
        throw ConfigError("phiC index outside the angle grid");
    }
}

/// Born probability of projecting the harvested state onto |basis>.
double born(const UisParams& params, const AngleGrid& grid, double basis, Rng& rng, std::uint8_t& bit_out) {
    const double phi_c = grid.value(params.phi_c_index);
    bit_out = rng.bernoulli(0.5 - params.epsilon) ? 1 : 0;
    const double angle = bit_out * std::numbers::pi / 2 + phi_c;
    const double c = std::cos(angle - basis);
    return c * c;
}

bool measure_harvest(const UisParams& params, const AngleGrid& grid, double basis, Rng& rng) {
    if (params.harvest == Harvest::Analytic) {
        std::uint8_t bit = 0;
        return rng.bernoulli(born(params, grid, basis, rng, bit));
    }
    const QState s = uis_harvest_state(params, rng);
    const QState b = protocols::polarization_state({basis}).relabel(s.layout());
    return rng.bernoulli(fidelity(b, s));
}

}  // namespace

QState uis_harvest_state(const UisParams& params, Rng& rng) {
    const AngleGrid grid(params.grid);
    const std::uint8_t x = rng.bernoulli(0.5 - params.epsilon) ? 1 : 0;
    const double phi_c = grid.value(params.phi_c_index);
    if (params.harvest == Harvest::Analytic) {
        return protocols::polarization_state({x * std::numbers::pi / 2 + phi_c});
    }
    const ProtocolDef p = protocols::rotation_with_id(protocols::RotationSpec::polarization(1, grid), {phi_c});
    const double eve_angle = grid.value(static_cast<std::size_t>(rng.below(grid.size())));
    UisHarvestAdversary eve(eve_angle);
    engine::run_session(p, protocols::polarization_state({x * std::numbers::pi / 2}), std::nullopt, &eve,
                        rng.next());
    return *eve.harvested();
}

std::size_t uis_snap(double c, std::size_t grid) {
    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= grid / 2; ++k) {
        const double gap = std::abs(std::cos(2 * static_cast<double>(k) * std::numbers::pi / grid) - c);
        if (gap < best_gap - 1e-12) {
            best_gap = gap;
            best = k;
        }
    }
    return best;
}

bool uis_choose_first(double fraction, double epsilon, double phi1) {
    const double if_first = 0.5 + epsilon;
    const double if_second = 0.5 + epsilon * std::cos(4 * phi1);
    return std::abs(fraction - if_first) <= std::abs(fraction - if_second);
}

UisCampaign uis_campaign(const UisParams& params, Rng& rng) {
    check_uis(params);
    const AngleGrid grid(params.grid);
    const double eps = params.assumed_epsilon.value_or(params.epsilon);
    const std::uint64_t half = params.t / 2;
    UisCampaign c;
    std::uint64_t zeros = 0;
    for (std::uint64_t i = 0; i < half; ++i) {
        zeros += measure_harvest(params, grid, 0.0, rng) ? 1 : 0;
    }
    c.p0_hat = static_cast<double>(zeros) / static_cast<double>(half);
    c.cos_hat = std::clamp((c.p0_hat - 0.5) / eps, -1.0, 1.0);
    c.k1 = uis_snap(c.cos_hat, params.grid);
    c.phi1 = static_cast<double>(c.k1) * std::numbers::pi / static_cast<double>(params.grid);
    c.phi2 = std::numbers::pi - c.phi1;
    const std::uint64_t rest = params.t - half;
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < rest; ++i) {
        hits += measure_harvest(params, grid, c.phi1, rng) ? 1 : 0;
    }
    c.fraction2 = static_cast<double>(hits) / static_cast<double>(rest);
    c.recovered = uis_choose_first(c.fraction2, eps, c.phi1) ? c.phi1 : c.phi2;
    c.success = same_mod_pi(c.recovered, grid.value(params.phi_c_index));
    return c;
}

AttackReport uis_attack(const UisParams& params) {
    check_uis(params);
    const AngleGrid grid(params.grid);
    AttackReport r;
    r.attack = "uis";
    const double phi_c = grid.value(params.phi_c_index);
    r.estimators["p0_expected"] = 0.5 + params.epsilon * std::cos(2 * phi_c);
    const double eps = params.assumed_epsilon.value_or(params.epsilon);
    if (params.epsilon == 0 || eps == 0) {
        r.status = "not-applicable";
        for (std::uint64_t i = 0; i < params.campaigns; ++i) {
            r.record(i, "failure", "unbiased source");
        }
        return r;
    }
    double sum = 0;
    double sum_sq = 0;
    for (std::uint64_t i = 0; i < params.campaigns; ++i) {
        Rng rng = trial_rng(params.seed, i);
        const UisCampaign c = uis_campaign(params, rng);
        sum += c.p0_hat;
        sum_sq += c.p0_hat * c.p0_hat;
        r.record(i, c.success ? "success" : "failure",
                 "p0=" + std::to_string(c.p0_hat) + " k1=" + std::to_string(c.k1) +
                     " f2=" + std::to_string(c.fraction2));
    }
    const double n = static_cast<double>(std::max<std::uint64_t>(params.campaigns, 1));
    const double mean = sum / n;
    r.estimators["p0_mean"] = mean;
    r.estimators["p0_stddev"] = params.campaigns > 1 ? std::sqrt(std::max(0.0, (sum_sq - n * mean * mean) / (n - 1))) : 0.0;
    r.estimators["recovery_rate"] = r.success_rate();
    return r;
}

// ---------------------------------------------------------------------------

Interception CipherMeasureAdversary::intercept(int, const QState& cipher, Rng& rng) {
    MeasurementOutcome mo = measure(cipher, cipher.layout().names(), rng);
    strings_.push_back(mo.outcome);
    return {std::move(mo.post_state), "measure " + format_bits(mo.outcome)};
}

AttackReport pauli_cipher_attack(const std::string& scheme, std::size_t n, const Bits& message,
                                 std::uint64_t trials, std::uint64_t seed) {
    const pqc::PqcScheme s = pqc::PqcScheme::named(scheme, n);
    if (!message.empty() && message.size() != n) {
        throw ConfigError("message must have " + std::to_string(n) + " bits");
    }
    const ProtocolDef p = protocols::pqc_qnk_protocol(s);
    AttackReport r;
    r.attack = "pauli-cipher";
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = trial_rng(seed, trial);
        const Bits m = message.empty() ? random_bits(n, rng) : message;
        CipherMeasureAdversary eve;
        engine::run_session(p, QState::basis(p.message_layout(), bits_to_index(m)), std::nullopt, &eve,
                            session_seed(seed, trial), trial);
        const auto& c = eve.strings();
        const Bits guess = xor_bits(xor_bits(c.at(0), c.at(1)), c.at(2));
        r.record(trial, guess == m ? "success" : "failure", "guess=" + format_bits(guess));
    }
    r.estimators["recovery_rate"] = r.success_rate();
    return r;
}

// ---------------------------------------------------------------------------

Interception InterceptResendAdversary::intercept(int pass, const QState& cipher, Rng& rng) {
    if (pass != 1) {
        return {cipher, "forward"};
    }
    const std::vector<std::string> all = cipher.layout().names();
    const QState turned = apply(polarization_rotation(-basis_), cipher, all);
    MeasurementOutcome mo = measure(turned, all, rng);
    outcome_ = mo.outcome.at(0);
    return {apply(polarization_rotation(basis_), mo.post_state, all), "measure-resend"};
}

AttackReport intercept_resend(const InterceptParams& params) {
    const AngleGrid grid(params.grid);
    if (params.basis_index >= grid.size()) {
        throw ConfigError("basis index outside the angle grid");
    }
    const ProtocolDef p = protocols::rotation_protocol(protocols::RotationSpec::polarization(1, grid));
    AttackReport r;
    r.attack = "intercept-resend";
    double fidelity_sum = 0;
    std::uint64_t correct = 0;
    for (std::uint64_t trial = 0; trial < params.trials; ++trial) {
        Rng rng = trial_rng(params.seed, trial);
        const std::uint8_t b = rng.bit() ? 1 : 0;
        const QState msg = protocols::polarization_state({b * std::numbers::pi / 2});
        const double basis = params.policy == BasisPolicy::Random
                                 ? grid.value(static_cast<std::size_t>(rng.below(grid.size())))
                                 : grid.value(params.basis_index);
        InterceptResendAdversary eve(basis);
        const bool attack = params.policy != BasisPolicy::None;
        const engine::Transcript t = engine::run_session(p, msg, std::nullopt, attack ? &eve : nullptr,
                                                         session_seed(params.seed, trial), trial);
        const double f = fidelity(msg.relabel(t.delivered->layout()), *t.delivered);
        fidelity_sum += f;
        const std::uint8_t guess = attack ? eve.outcome().value_or(0) : static_cast<std::uint8_t>(rng.bit());
        if (guess == b) {
            ++correct;
        }
        r.record(trial, guess == b ? "success" : "failure", "fidelity=" + std::to_string(f));
    }
    const double n = static_cast<double>(std::max<std::uint64_t>(params.trials, 1));
    r.estimators["guess_accuracy"] = static_cast<double>(correct) / n;
    r.estimators["mean_fidelity"] = fidelity_sum / n;
    return r;
}

std::vector<std::string> attack_names() {
    return {"mim-reflect", "photon-swap", "uis", "pauli-cipher", "intercept-resend"};
}

}  // namespace qnk::attacks
