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
#include <string>
#include <vector>

#include "qnk/rng.hpp"
#include "qnk/unitary.hpp"

namespace qnk {

inline constexpr std::size_t kMaxTableArity = 8;

/// Explicit truth table of F : {0,1}^arity -> {0,1}^width. Entry x holds F(x)
/// as an integer whose most significant bit is the first output bit.
class BooleanTable {
   public:
    BooleanTable(std::size_t arity, std::size_t width, std::vector<std::uint64_t> entries);

    static BooleanTable zero(std::size_t arity, std::size_t width);
    static BooleanTable constant(std::size_t arity, std::size_t width, std::uint64_t value);
    static BooleanTable from_function(std::size_t arity, std::size_t width,
                                      const std::function<std::uint64_t(std::uint64_t)>& f);
    static BooleanTable random(std::size_t arity, std::size_t width, Rng& rng);
    /// Every entry nonzero; requires width >= 1.
    static BooleanTable random_nowhere_zero(std::size_t arity, std::size_t width, Rng& rng);

    std::size_t arity() const { return arity_; }
    std::size_t width() const { return width_; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<std::uint64_t>& entries() const { return entries_; }
    std::uint64_t operator()(std::uint64_t x) const { return entries_.at(x); }

    BooleanTable operator^(const BooleanTable& other) const;
    bool operator==(const BooleanTable& other) const = default;

    /// Number of inputs on which the two tables agree.
    std::size_t agreements(const BooleanTable& other) const;
    bool is_zero() const;

    /// Comma-separated entries, e.g. "0,3,1,2".
    std::string to_string() const;
    static BooleanTable parse(std::size_t arity, std::size_t width, const std::string& text);

   private:
    std::size_t arity_;
    std::size_t width_;
    std::vector<std::uint64_t> entries_;
};

/// |x>|r> -> |x>|r xor F(x)> on arity + width qubits (input register first).
UnitaryOp xor_oracle(const BooleanTable& f);

/// |x> -> (-1)^{F(x)} |x>; requires width 1.
UnitaryOp phase_oracle(const BooleanTable& f);

}  // namespace qnk
