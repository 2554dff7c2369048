// SPDX-License-Identifier: Apache-2.0
//
// hybridsim: ADMM hybrid precoding and combining for mmWave MIMO
// Copyright (C) 2026 The hybridsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HYBRIDSIM_RNG_HPP
#define HYBRIDSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace hybridsim {

/// Seeded generator with a portable output stream.
///
/// Bits come from std::mt19937_64, whose sequence is fixed by the C++
/// standard. The distribution transforms are written out here because the
/// standard library distributions are implementation-defined, which would
/// break cross-platform reproducibility.
///
///  - uniform():  top 53 bits of one engine draw, scaled to [0, 1).
///  - normal():   Box-Muller cosine branch, consumes exactly two uniforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

} // namespace hybridsim

#endif
