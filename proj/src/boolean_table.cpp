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


#include "qnk/boolean_table.hpp"

#include <sstream>

#include "qnk/error.hpp"

namespace qnk {

BooleanTable::BooleanTable(std::size_t arity, std::size_t width, std::vector<std::uint64_t> entries)
    : arity_(arity), width_(width), entries_(std::move(entries)) {
    if (arity_ > kMaxTableArity) {
        throw ResourceLimitError("boolean table arity " + std::to_string(arity_) + " exceeds " +
                                 std::to_string(kMaxTableArity));
    }
    if (width_ > 16) {
        throw ResourceLimitError("boolean table width " + std::to_string(width_) + " exceeds 16");
    }
    if (entries_.size() != (std::size_t{1} << arity_)) {
        throw ShapeError("boolean table of arity " + std::to_string(arity_) + " needs " +
                         std::to_string(std::size_t{1} << arity_) + " entries, got " +
                         std::to_string(entries_.size()));
    }
    for (auto e : entries_) {
        if (e >> width_) {
            throw ShapeError("boolean table entry " + std::to_string(e) + " does not fit in " +
                             std::to_string(width_) + " bits");
        }
    }
}

BooleanTable BooleanTable::zero(std::size_t arity, std::size_t width) {
    return constant(arity, width, 0);
}

BooleanTable BooleanTable::constant(std::size_t arity, std::size_t width, std::uint64_t value) {
    if (arity > kMaxTableArity) {
        throw ResourceLimitError("boolean table arity exceeds " + std::to_string(kMaxTableArity));
    }
    return BooleanTable(arity, width, std::vector<std::uint64_t>(std::size_t{1} << arity, value));
}

BooleanTable BooleanTable::from_function(std::size_t arity, std::size_t width,
                                         const std::function<std::uint64_t(std::uint64_t)>& f) {
    if (arity > kMaxTableArity) {
        throw ResourceLimitError("boolean table arity exceeds " + std::to_string(kMaxTableArity));
    }
    std::vector<std::uint64_t> entries(std::size_t{1} << arity);
    for (std::uint64_t x = 0; x < entries.size(); ++x) {
        entries[x] = f(x);
    }
    return BooleanTable(arity, width, std::move(entries));
}

BooleanTable BooleanTable::random(std::size_t arity, std::size_t width, Rng& rng) {
    const std::uint64_t range = std::uint64_t{1} << width;
    return from_function(arity, width, [&](std::uint64_t) { return rng.below(range); });
}

BooleanTable BooleanTable::random_nowhere_zero(std::size_t arity, std::size_t width, Rng& rng) {
    if (width == 0) {
        throw ConfigError("a nowhere-zero table needs at least one output bit");
    }
    const std::uint64_t range = (std::uint64_t{1} << width) - 1;
    return from_function(arity, width, [&](std::uint64_t) { return 1 + rng.below(range); });
}

BooleanTable BooleanTable::operator^(const BooleanTable& other) const {
    if (arity_ != other.arity_ || width_ != other.width_) {
        throw ShapeError("xor of boolean tables with different shapes");
    }
    std::vector<std::uint64_t> out(entries_.size());
    for (std::size_t x = 0; x < out.size(); ++x) {
        out[x] = entries_[x] ^ other.entries_[x];
    }
    return BooleanTable(arity_, width_, std::move(out));
}

std::size_t BooleanTable::agreements(const BooleanTable& other) const {
    if (arity_ != other.arity_ || width_ != other.width_) {
        throw ShapeError("comparison of boolean tables with different shapes");
    }
    std::size_t n = 0;
    for (std::size_t x = 0; x < entries_.size(); ++x) {
        n += entries_[x] == other.entries_[x];
    }
    return n;
}

bool BooleanTable::is_zero() const {
    for (auto e : entries_) {
        if (e != 0) {
            return false;
        }
    }
    return true;
}

std::string BooleanTable::to_string() const {
    std::ostringstream os;
    for (std::size_t x = 0; x < entries_.size(); ++x) {
        os << (x ? "," : "") << entries_[x];
    }
    return os.str();
}

BooleanTable BooleanTable::parse(std::size_t arity, std::size_t width, const std::string& text) {
    std::vector<std::uint64_t> entries;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            entries.push_back(std::stoull(item, &used));
            if (used != item.size()) {
                throw ConfigError("bad table entry '" + item + "'");
            }
        } catch (const std::logic_error&) {
            throw ConfigError("bad table entry '" + item + "'");
        }
    }
    try {
        return BooleanTable(arity, width, std::move(entries));
    } catch (const ShapeError& e) {
        throw ConfigError(e.what());
    }
}

UnitaryOp xor_oracle(const BooleanTable& f) {
    const std::size_t w = f.width();
    const std::uint64_t low = (std::uint64_t{1} << w) - 1;
    return permutation_unitary(f.arity() + w, [&](std::uint64_t idx) {
        const std::uint64_t x = idx >> w;
        return (x << w) | ((idx & low) ^ f(x));
    });
}

UnitaryOp phase_oracle(const BooleanTable& f) {
    if (f.width() != 1) {
        throw ShapeError("phase oracle needs a single-bit table");
    }
    const auto d = static_cast<Eigen::Index>(f.size());
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index x = 0; x < d; ++x) {
        m(x, x) = f(static_cast<std::uint64_t>(x)) ? -1.0 : 1.0;
    }
    return UnitaryOp(std::move(m));
}

}  // namespace qnk
