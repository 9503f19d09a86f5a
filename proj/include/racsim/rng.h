// Copyright 2026 The racsim Authors
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

#ifndef RACSIM_RNG_H
#define RACSIM_RNG_H

#include <cstdint>

#include "racsim/qcore.h"

namespace racsim {

// Counter-based stream: every draw is a pure function of (seed, stream, counter),
// so a shot's randomness does not depend on which worker evaluates it.
class KeyedRng {
   public:
    KeyedRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter = 0);

    std::uint64_t next_u64();
    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    double normal();
    Bit bit() { return Bit(next_u64() >> 63); }

   private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

std::uint64_t mix64(std::uint64_t x);

// Stream id for a pair of indices, e.g. (setting, shot).
inline std::uint64_t stream_id(std::uint64_t a, std::uint64_t b) {
    return mix64(a * 0x9E3779B97F4A7C15ULL + mix64(b));
}

// Uniform point on the unit sphere (normalized Gaussian triple).
BlochVector random_unit_vector(KeyedRng &rng);

}  // namespace racsim

#endif
