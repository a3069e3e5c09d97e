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

#include <algorithm>

#include "qnk/error.hpp"
#include "qnk/pqc.hpp"

namespace qnk::pqc {
namespace {

TEST(Generators, StandardSchemesAreValid) {
    for (const auto& name : PqcScheme::names()) {
        const PqcScheme s = PqcScheme::named(name, 1);
        EXPECT_TRUE(validate_generators(s.u1(), s.u2()).passed) << name;
    }
    EXPECT_FALSE(validate_generators(gates::X(), gates::H()).passed);
    EXPECT_FALSE(validate_generators(gates::I(), gates::Z()).passed);
    EXPECT_THROW(PqcScheme("bad", gates::X(), gates::H(), 1), PreconditionError);
    EXPECT_THROW(PqcScheme::named("QQ", 1), ConfigError);
}

TEST(Generators, SearchFindsExactlyTheAnticommutingTracelessPairs) {
    // [DERIVED] Among I, X, Y, Z, H the traceless pairs that anticommute with a traceless product:
    // every ordered pair of distinct Paulis, plus Y with H in either order.
    auto found = search_generator_pairs(standard_candidates());
    std::sort(found.begin(), found.end());
    std::vector<std::pair<std::string, std::string>> expected = {
        {"H", "Y"}, {"X", "Y"}, {"X", "Z"}, {"Y", "H"}, {"Y", "X"}, {"Y", "Z"}, {"Z", "X"}, {"Z", "Y"}};
    EXPECT_EQ(found, expected);
}

TEST(Keys, IndexingAndUnitaries) {
    const PqcScheme s = PqcScheme::named("XZ", 2);
    EXPECT_EQ(s.key_count(), 16u);
    const PqcKey k = s.key_at(0b1001);
    EXPECT_EQ(format_bits(k.alpha), "10");
    EXPECT_EQ(format_bits(k.beta), "01");
    EXPECT_LE(max_abs(key_unitary(s, k).matrix() - kron(gates::X().matrix(), gates::Z().matrix())), 0);
    EXPECT_THROW(s.key_at(16), ShapeError);
    EXPECT_THROW(key_unitary(s, PqcKey{parse_bits("1"), parse_bits("0")}), ShapeError);
    EXPECT_EQ((k ^ s.key_at(0b1111)), s.key_at(0b0110));
}

TEST(Keys, GeneralizedCommutationPhaseMatchesMatrices) {
    for (const auto& name : PqcScheme::names()) {
        const PqcScheme s = PqcScheme::named(name, 2);
        for (std::uint64_t i = 0; i < s.key_count(); ++i)
            for (std::uint64_t j = 0; j < s.key_count(); ++j) {
                const Matrix a = key_unitary(s, s.key_at(i)).matrix();
                const Matrix b = key_unitary(s, s.key_at(j)).matrix();
                const int sign = generalized_commutation_phase(s, s.key_at(i), s.key_at(j));
                EXPECT_LE(max_abs(a * b - double(sign) * b * a), 1e-12) << name << i << j;
            }
    }
}

TEST(Cipher, AverageIsMaximallyMixed) {
    Rng r(3);
    for (const auto& name : PqcScheme::names()) {
        for (std::size_t n : {1u, 2u}) {
            const PqcScheme s = PqcScheme::named(name, n);
            const QState rho = random_pure_state(Layout{{"m", n}}, r);
            const QState avg = average_cipher(s, rho);
            const auto d = static_cast<Eigen::Index>(1u << n);
            EXPECT_LE(max_abs(avg.density() - Matrix::Identity(d, d) / double(d)), 1e-12) << name << n;
        }
    }
}

TEST(Cipher, AverageRefusesLargeStates) {
    const PqcScheme s = PqcScheme::named("XZ", kMaxAverageQubits + 1);
    EXPECT_THROW(average_cipher(s, QState::zeros(Layout{{"m", kMaxAverageQubits + 1}})), ResourceLimitError);
}

TEST(Keys, RandomKeyIsUniform) {
    const PqcScheme s = PqcScheme::named("XY", 1);
    Rng r(4);
    std::vector<int> counts(4, 0);
    const int n = 40000;
    for (int i = 0; i < n; ++i) {
        const PqcKey k = s.random_key(r);
        ++counts[k.alpha[0] * 2 + k.beta[0]];
    }
    for (int c : counts) EXPECT_NEAR(c, n / 4.0, 4 * std::sqrt(n * 0.25 * 0.75));
}

}  // namespace
}  // namespace qnk::pqc
