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

#include "qnk/bits.hpp"

#include "qnk/error.hpp"

namespace qnk {

Bits parse_bits(std::string_view text) {
    Bits out;
    out.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ConfigError("not a bit string: '" + std::string(text) + "'");
        }
        out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
}

std::string format_bits(const Bits& bits) {
    std::string out;
    out.reserve(bits.size());
    for (auto b : bits) {
        out.push_back(b ? '1' : '0');
    }
    return out;
}

Bits xor_bits(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) {
        throw ShapeError("bit strings of different length: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
    }
    Bits out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] ^ b[i];
    }
    return out;
}

int dot_bits(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) {
        throw ShapeError("bit strings of different length");
    }
    int acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc ^= a[i] & b[i];
    }
    return acc;
}

bool all_zero(const Bits& bits) {
    for (auto b : bits) {
        if (b) {
            return false;
        }
    }
    return true;
}

std::uint64_t bits_to_index(const Bits& bits) {
    if (bits.size() > 63) {
        throw ResourceLimitError("bit string too long for an index");
    }
    std::uint64_t v = 0;
    for (auto b : bits) {
        v = (v << 1) | (b & 1u);
    }
    return v;
}

Bits index_to_bits(std::uint64_t index, std::size_t width) {
    Bits out(width);
    for (std::size_t i = 0; i < width; ++i) {
        out[width - 1 - i] = static_cast<std::uint8_t>((index >> i) & 1u);
    }
    return out;
}

Bits random_bits(std::size_t width, Rng& rng) {
    Bits out(width);
    for (auto& b : out) {
        b = rng.bit() ? 1 : 0;
    }
    return out;
}

Bits split_into_shares(const Bits& message, std::size_t shares, Rng& rng) {
    if (shares == 0) {
        throw ConfigError("share count must be positive");
    }
    Bits out;
    out.reserve(message.size() * shares);
    for (auto bit : message) {
        std::uint8_t acc = 0;
        for (std::size_t s = 0; s + 1 < shares; ++s) {
            std::uint8_t r = rng.bit() ? 1 : 0;
            acc ^= r;
            out.push_back(r);
        }
        out.push_back(acc ^ bit);
    }
    return out;
}

Bits combine_shares(const Bits& shares, std::size_t shares_per_bit) {
    if (shares_per_bit == 0 || shares.size() % shares_per_bit != 0) {
        throw ShapeError("share string length is not a multiple of the group size");
    }
    Bits out(shares.size() / shares_per_bit, 0);
    for (std::size_t i = 0; i < shares.size(); ++i) {
        out[i / shares_per_bit] ^= shares[i];
    }
    return out;
}

}  // namespace qnk
