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
#include <random>

namespace qnk {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Seed of the `index`-th child stream of `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Seedable generator with platform-independent derived distributions.
///
/// The standard distribution classes are implementation defined, so uniform,
/// bounded-integer and Gaussian draws are computed here directly from the raw
/// mt19937_64 output. Transcripts are reproducible across standard libraries.
class Rng {
   public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return engine_(); }
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [0, n). `n` must be positive.
    std::uint64_t below(std::uint64_t n);
    bool bernoulli(double p) { return uniform() < p; }
    bool bit() { return (next() >> 63) != 0; }
    /// Standard normal draw (Box-Muller).
    double normal();

    /// Independent generator for a named sub-stream; depends only on the
    /// original seed, not on how far this generator has advanced.
    Rng fork(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace qnk
