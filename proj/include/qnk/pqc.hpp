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

#include <string>
#include <utility>
#include <vector>

#include "qnk/bits.hpp"
#include "qnk/rng.hpp"
#include "qnk/state.hpp"
#include "qnk/unitary.hpp"

namespace qnk::pqc {

inline constexpr std::size_t kMaxAverageQubits = 4;

struct GeneratorReport {
    Complex tr_u1;
    Complex tr_u2;
    Complex tr_u1u2;
    Complex tr_u1dag_u2;
    double anticommutator = 0;  // max |U1 U2 + U2 U1|
    bool passed = false;
};

/// Trace conditions and U1 U2 = -U2 U1, each within 1e-9.
GeneratorReport validate_generators(const UnitaryOp& u1, const UnitaryOp& u2);

struct PqcKey {
    Bits alpha;
    Bits beta;

    bool operator==(const PqcKey&) const = default;
    /// Componentwise xor on (alpha, beta).
    PqcKey operator^(const PqcKey& other) const;
    std::string to_string() const;
};

/// U_k = (x)_i U1^{alpha_i} U2^{beta_i} over n qubits, keys drawn uniformly.
class PqcScheme {
   public:
    /// Throws PreconditionError if the generators fail validation.
    PqcScheme(std::string name, UnitaryOp u1, UnitaryOp u2, std::size_t n);

    /// "XZ", "XY" or "YH"; ConfigError otherwise.
    static PqcScheme named(const std::string& name, std::size_t n);
    static std::vector<std::string> names() { return {"XZ", "XY", "YH"}; }

    const std::string& name() const { return name_; }
    const UnitaryOp& u1() const { return u1_; }
    const UnitaryOp& u2() const { return u2_; }
    std::size_t n() const { return n_; }

    /// 4^n
    std::uint64_t key_count() const { return std::uint64_t{1} << (2 * n_); }
    /// Key number i: alpha is the high n bits, beta the low n bits.
    PqcKey key_at(std::uint64_t index) const;
    PqcKey random_key(Rng& rng) const;
    void check_key(const PqcKey& k) const;

   private:
    std::string name_;
    UnitaryOp u1_;
    UnitaryOp u2_;
    std::size_t n_;
};

UnitaryOp key_unitary(const PqcScheme& s, const PqcKey& k);

/// Sum_k 4^-n U_k rho U_k^dag, by enumeration; n <= 4.
QState average_cipher(const PqcScheme& s, const QState& rho);

/// (-1)^{beta.gamma + alpha.delta} for k = (alpha, beta), l = (gamma, delta).
int generalized_commutation_phase(const PqcScheme& s, const PqcKey& k, const PqcKey& l);

using NamedUnitary = std::pair<std::string, UnitaryOp>;

/// Standard single-qubit candidates I, X, Y, Z, H.
std::vector<NamedUnitary> standard_candidates();

/// Ordered pairs (by name) that pass validate_generators.
std::vector<std::pair<std::string, std::string>> search_generator_pairs(const std::vector<NamedUnitary>& candidates);

}  // namespace qnk::pqc
