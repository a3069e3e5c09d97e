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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qnk/error.hpp"
#include "qnk/protocols.hpp"

namespace qnk::protocols {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(AngleGrid, ValuesAndSize) {
    const AngleGrid g(4);
    EXPECT_EQ(g.size(), 8u);
    EXPECT_NEAR(g.value(3), 3 * kPi / 4, 1e-15);
    EXPECT_EQ(g.values().size(), 8u);
    EXPECT_THROW(AngleGrid(0), ConfigError);
}

TEST(Polarization, StateAmplitudes) {
    const QState s = polarization_state({0.0, kPi / 3});
    // [DERIVED] |0>(cos pi/3, sin pi/3): amplitudes 1/2 and sqrt3/2 on |00>, |01>.
    EXPECT_NEAR(std::abs(s.amplitudes()(0)), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitudes()(1)), std::sqrt(3.0) / 2, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitudes()(2)), 0.0, 1e-15);
}

TEST(Configs, EveryShippedConfigHolds) {
    for (const auto& cfg : enumerable_configs()) {
        const engine::ProtocolDef p = by_name(cfg.name, cfg.params);
        const engine::HoldingReport r = engine::verify_holding_condition(p);
        EXPECT_TRUE(r.passed()) << cfg.name << " " << cfg.params.scheme;
    }
}

TEST(Configs, HonestSessionsDeliver) {
    for (const auto& cfg : enumerable_configs()) {
        const engine::ProtocolDef p = by_name(cfg.name, cfg.params);
        Rng r(99);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const QState msg = random_pure_state(p.message_layout(), r);
            const engine::Transcript t = engine::run_session(p, msg, seed);
            EXPECT_EQ(t.status, engine::Status::Delivered) << cfg.name;
            EXPECT_LE(t.phase_distance, 1e-9) << cfg.name;
        }
    }
}

TEST(Configs, UnknownNameRejected) {
    EXPECT_THROW(by_name("nope", ProtocolParams{}), ConfigError);
    EXPECT_EQ(protocol_names().size(), 10u);
}

TEST(Rotation, WithIdUsesPhiC) {
    const std::vector<double> phi_c = {0.3, 1.2};
    const engine::ProtocolDef p = rotation_with_id(RotationSpec::polarization(2, AngleGrid(4)), phi_c);
    ASSERT_TRUE(p.default_keys.has_value());
    EXPECT_EQ(p.default_keys->alice.phi_c, phi_c);
    EXPECT_TRUE(engine::verify_holding_condition(p).passed());
}

TEST(Rotation, MixedAxesBreakHolding) {
    RotationSpec spec = RotationSpec::bloch(1, AngleGrid(4), Axis::z_axis());
    spec.bob_axes = {Axis::x_axis()};
    EXPECT_FALSE(engine::verify_holding_condition(rotation_protocol(spec)).passed());
}

TEST(MutualId, InterleavedLayout) {
    const PhotonGroupLayout g = PhotonGroupLayout::interleaved(2, 2, {0, 3});
    EXPECT_EQ(g.slots, (std::vector<std::string>{"id1", "if1", "if2", "id2"}));
    EXPECT_TRUE(g.is_id_slot(3));
    EXPECT_EQ(g.if_registers(), (std::vector<std::string>{"if1", "if2"}));
    EXPECT_THROW(PhotonGroupLayout::interleaved(2, 2, {0, 0}), ShapeError);
    Rng r(1);
    const PhotonGroupLayout rg = PhotonGroupLayout::random(3, 2, r);
    EXPECT_EQ(rg.id_registers().size(), 2u);
    EXPECT_EQ(rg.slots.size(), 5u);
}

TEST(MutualId, HonestSessionsPassEveryCheck) {
    Rng r(2);
    const PhotonGroupLayout g = PhotonGroupLayout::random(2, 2, r);
    const AngleGrid grid(4);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const engine::SessionKeys keys = random_mutual_id_keys(g, grid, r);
        const engine::ProtocolDef p = mutual_id_protocol(g, grid, keys);
        const QState msg = random_pure_state(p.message_layout(), r);
        const engine::Transcript t = engine::run_session(p, msg, seed);
        EXPECT_EQ(t.status, engine::Status::Delivered);
        EXPECT_LE(t.phase_distance, 1e-9);
        std::size_t checks = 0;
        for (const auto& pass : t.passes)
            for (const auto& c : pass.checks) {
                EXPECT_TRUE(c.passed);
                ++checks;
            }
        EXPECT_GT(checks, 0u);
    }
}

TEST(Classical, RecoversBitsWithAndWithoutShares) {
    Rng r(3);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Bits m = index_to_bits(r.below(16), 4);
        EXPECT_EQ(classical_simple(m, AngleGrid(8), {}, seed).recovered, m);
        const ClassicalResult two = classical_simple(m, AngleGrid(8), {}, seed, 2);
        EXPECT_EQ(two.recovered, m);
        EXPECT_EQ(two.sent.size(), 8u);
        EXPECT_EQ(combine_shares(two.sent, 2), m);
    }
    EXPECT_THROW(classical_simple(parse_bits("1"), AngleGrid(8), {}, 0, 0), ConfigError);
}

TEST(Hadamard, RecoversEveryMessage) {
    const Bits s_a = parse_bits("10"), s_b = parse_bits("11");
    for (std::uint64_t x = 0; x < 4; ++x) {
        const Bits bits = index_to_bits(x, 2);
        EXPECT_EQ(run_hadamard_cnot(bits, s_a, s_b, x).recovered, bits);
    }
}

TEST(Boolean, ProtocolsHoldForFixedTables) {
    Rng r(4);
    const BooleanTable fa = BooleanTable::random(2, 2, r), fb = BooleanTable::random(2, 2, r);
    EXPECT_TRUE(engine::verify_holding_condition(boolean_protocol(fa, fb)).passed());
    const BooleanTable pa = BooleanTable::random(2, 1, r), pb = BooleanTable::random(2, 1, r);
    EXPECT_TRUE(engine::verify_holding_condition(phase_kickback_protocol(pa, pb)).passed());
}

TEST(Boolean, EqualIdentityTablesWarn) {
    const BooleanTable s = BooleanTable::constant(2, 1, 1);
    const engine::ProtocolDef p = boolean_with_id(2, 1, boolean_id_keys(s, s));
    const engine::Transcript t = engine::run_session(p, QState::zeros(p.message_layout()), 0);
    EXPECT_FALSE(t.warnings.empty());
    Rng r(5);
    const engine::SessionKeys k = random_boolean_id_keys(2, 2, r);
    EXPECT_NE(k.alice.table_a->entries(), k.bob.table_b->entries());
}

TEST(Pqc, KeyFromChoiceSplitsAlphaBeta) {
    const pqc::PqcScheme s = pqc::PqcScheme::named("XZ", 2);
    const pqc::PqcKey k = pqc_key_from_choice(s, {1, 0, 0, 1});
    EXPECT_EQ(format_bits(k.alpha), "10");
    EXPECT_EQ(format_bits(k.beta), "01");
    EXPECT_THROW(pqc_key_from_choice(s, {1, 0}), ShapeError);
}

TEST(Shamir, ClassicalXorRoundTrip) {
    const Bits m = parse_bits("1100"), ka = parse_bits("1010"), kb = parse_bits("0110");
    const ShamirResult r = shamir_classical(m, ka, kb);
    EXPECT_EQ(r.c1, parse_bits("0110"));
    EXPECT_EQ(r.c2, parse_bits("0000"));
    EXPECT_EQ(r.c3, parse_bits("1010"));
    EXPECT_EQ(r.recovered, m);
    // [DERIVED] (m^ka) ^ (m^ka^kb) ^ (m^kb) = m, so the three ciphertexts alone reveal the message.
    EXPECT_EQ(xor_bits(xor_bits(r.c1, r.c2), r.c3), m);
}

}  // namespace
}  // namespace qnk::protocols
