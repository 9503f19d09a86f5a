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

#include "racsim/rng.h"

#include <cmath>
#include <numbers>

using namespace racsim;

std::uint64_t racsim::mix64(std::uint64_t x) {
    // SplitMix64 finalizer.
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

KeyedRng::KeyedRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
    : key_(mix64(mix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL))), counter_(counter) {
}

std::uint64_t KeyedRng::next_u64() {
    return mix64(key_ ^ mix64(counter_++));
}

double KeyedRng::uniform() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double KeyedRng::normal() {
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

BlochVector racsim::random_unit_vector(KeyedRng &rng) {
    while (true) {
        BlochVector v(rng.normal(), rng.normal(), rng.normal());
        double n = v.norm();
        if (n > 1e-9) {
            return v / n;
        }
    }
}
