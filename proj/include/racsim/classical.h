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

#ifndef RACSIM_CLASSICAL_H
#define RACSIM_CLASSICAL_H

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "racsim/bell.h"

namespace racsim {

// Bob's map from the received message bit to his output, stored as a two-bit
// truth table: bit c of the table is D(c).
enum Decoder : std::uint8_t {
    kDecodeZero = 0b00,
    kDecodeIdentity = 0b10,
    kDecodeNegate = 0b01,
    kDecodeOne = 0b11,
};

// Alice's encoding table over all 2^n inputs plus one decoder per queried bit.
// Strategies are numbered encode_table + (decoders << 2^n); with n <= 4 the id
// fits in 32 bits.
struct DeterministicStrategy {
    int n = 2;
    std::uint32_t encode_table = 0;
    std::vector<std::uint8_t> decoders;

    int encode(std::uint32_t x) const { return int((encode_table >> x) & 1U); }
    int decode(int k, int message) const { return (decoders[k] >> message) & 1; }
    std::uint64_t id() const;

    static DeterministicStrategy from_id(int n, std::uint64_t id);
    static DeterministicStrategy from_function(int n, const std::function<int(std::uint32_t)> &encode,
                                               std::uint8_t decoder);
};

// Common strategies used in examples and tests.
DeterministicStrategy first_bit_strategy(int n);
// Majority bit is 1 when the number of ones is >= n/2; Bob repeats it.
DeterministicStrategy majority_strategy(int n);
// Sends the complement of the majority bit; Bob repeats it.
DeterministicStrategy anti_majority_strategy(int n);
DeterministicStrategy constant_strategy(int n, int message);

struct StrategyMixture {
    std::vector<std::pair<double, DeterministicStrategy>> components;
};

// Per (X, k) outcome (1 or 0), indexed X * n + k; average is their mean.
struct SuccessReport {
    int n = 0;
    std::vector<double> per_cell;
    std::uint64_t successes = 0;
    double average = 0;
};

SuccessReport brute_success(const DeterministicStrategy &s);

// Successful cells out of n 2^n.
std::uint64_t success_count(const DeterministicStrategy &s);

// Convex combination of the component averages. Throws std::invalid_argument if
// the weights are negative or do not sum to 1.
double mixed_success(const StrategyMixture &m);

// ½ + C(n-1, floor((n-1)/2)) / 2^n.
double optimal_classical_formula(int n);

// <A~_i B_j> averaged over the two strings of class i, measured against the
// reference bit (-1)^{x_1} rather than against the transmitted message.
CorrelationTable reference_correlators(const DeterministicStrategy &s);

std::uint64_t strategy_count(int n);

struct EnumerationSummary {
    int n = 0;
    std::uint64_t count = 0;
    std::uint64_t max_successes = 0;
    std::uint64_t min_successes = 0;
    // Lowest id attaining the extreme.
    std::uint64_t argmax = 0;
    std::uint64_t argmin = 0;

    std::uint64_t cells() const { return std::uint64_t(n) << n; }
    double max() const { return double(max_successes) / double(cells()); }
    double min() const { return double(min_successes) / double(cells()); }
};

// Every deterministic strategy exactly once. n must be 2 or 3, or 4 with
// allow_n4; larger requests throw std::invalid_argument with the size estimate.
// OpenMP over disjoint id ranges; the result does not depend on `workers`.
EnumerationSummary enumerate_deterministic(int n, int workers = 0, bool allow_n4 = false);

namespace reference {

// Streams each strategy with its report in id order.
EnumerationSummary enumerate_deterministic(
    int n, const std::function<void(const DeterministicStrategy &, const SuccessReport &)> &visit = nullptr,
    bool allow_n4 = false);

}  // namespace reference

}  // namespace racsim

#endif
