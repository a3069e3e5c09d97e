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
#include <string>
#include <string_view>
#include <vector>

#include "qnk/rng.hpp"

namespace qnk {

/// A classical bit string; element 0 is the most significant (first) bit.
using Bits = std::vector<std::uint8_t>;

/// Parses a string of '0'/'1' characters. Throws ConfigError otherwise.
Bits parse_bits(std::string_view text);
std::string format_bits(const Bits& bits);

Bits xor_bits(const Bits& a, const Bits& b);
/// Inner product mod 2.
int dot_bits(const Bits& a, const Bits& b);
bool all_zero(const Bits& bits);

/// Big-endian integer value of `bits` (requires size <= 63).
std::uint64_t bits_to_index(const Bits& bits);
Bits index_to_bits(std::uint64_t index, std::size_t width);

Bits random_bits(std::size_t width, Rng& rng);

/// Splits every bit of `message` into `shares` random bits whose XOR is the
/// original bit. Share groups are laid out bit after bit.
Bits split_into_shares(const Bits& message, std::size_t shares, Rng& rng);
Bits combine_shares(const Bits& shares, std::size_t shares_per_bit);

}  // namespace qnk
