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

#include "racsim/classical.h"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <omp.h>

using namespace racsim;

namespace {

void require_valid(const DeterministicStrategy &s) {
    if (s.n < 1 || s.n > 4) {
        throw std::invalid_argument("strategy bit count must be in [1, 4]");
    }
    if (int(s.decoders.size()) != s.n) {
        throw std::invalid_argument("strategy needs one decoder per bit");
    }
}

void require_enumerable(int n, bool allow_n4) {
    if (n == 2 || n == 3 || (n == 4 && allow_n4)) {
        return;
    }
    std::string estimate = n <= 5 ? std::to_string(strategy_count(n)) : "more than 2^64";
    throw std::invalid_argument("refusing to enumerate n = " + std::to_string(n) + " (" + estimate +
                                " strategies); supported: n = 2, 3, and 4 with the explicit n=4 flag");
}

// Only the encoding table is iterated in the inner loops below; decoders come
// from the high bits of the id.
std::uint64_t count_from_id(int n, std::uint64_t id) {
    const std::uint32_t inputs = 1U << n;
    const std::uint64_t enc = id & ((std::uint64_t(1) << inputs) - 1);
    const std::uint64_t dec = id >> inputs;
    std::uint64_t hits = 0;
    for (std::uint32_t x = 0; x < inputs; x++) {
        int m = int((enc >> x) & 1U);
        for (int k = 0; k < n; k++) {
            int y = int((dec >> (2 * k + m)) & 1U);
            hits += y == input_bit(x, n, k);
        }
    }
    return hits;
}

}  // namespace

std::uint64_t DeterministicStrategy::id() const {
    std::uint64_t dec = 0;
    for (int k = 0; k < n; k++) {
        dec |= std::uint64_t(decoders[k] & 3U) << (2 * k);
    }
    return std::uint64_t(encode_table) | (dec << (1U << n));
}

DeterministicStrategy DeterministicStrategy::from_id(int n, std::uint64_t id) {
    DeterministicStrategy s;
    s.n = n;
    const std::uint32_t inputs = 1U << n;
    s.encode_table = std::uint32_t(id & ((std::uint64_t(1) << inputs) - 1));
    std::uint64_t dec = id >> inputs;
    for (int k = 0; k < n; k++) {
        s.decoders.push_back(std::uint8_t((dec >> (2 * k)) & 3U));
    }
    return s;
}

DeterministicStrategy DeterministicStrategy::from_function(int n, const std::function<int(std::uint32_t)> &encode,
                                                           std::uint8_t decoder) {
    DeterministicStrategy s;
    s.n = n;
    for (std::uint32_t x = 0; x < (1U << n); x++) {
        if (encode(x)) {
            s.encode_table |= 1U << x;
        }
    }
    s.decoders.assign(n, decoder);
    return s;
}

DeterministicStrategy racsim::first_bit_strategy(int n) {
    return DeterministicStrategy::from_function(n, [n](std::uint32_t x) { return input_bit(x, n, 0); },
                                                kDecodeIdentity);
}

DeterministicStrategy racsim::majority_strategy(int n) {
    return DeterministicStrategy::from_function(
        n, [n](std::uint32_t x) { return 2 * std::popcount(x) >= n ? 1 : 0; }, kDecodeIdentity);
}

DeterministicStrategy racsim::anti_majority_strategy(int n) {
    return DeterministicStrategy::from_function(
        n, [n](std::uint32_t x) { return 2 * std::popcount(x) >= n ? 0 : 1; }, kDecodeIdentity);
}

DeterministicStrategy racsim::constant_strategy(int n, int message) {
    return DeterministicStrategy::from_function(n, [message](std::uint32_t) { return message; }, kDecodeIdentity);
}

std::uint64_t racsim::success_count(const DeterministicStrategy &s) {
    require_valid(s);
    return count_from_id(s.n, s.id());
}

SuccessReport racsim::brute_success(const DeterministicStrategy &s) {
    require_valid(s);
    SuccessReport r;
    r.n = s.n;
    const std::uint32_t inputs = 1U << s.n;
    r.per_cell.resize(std::size_t(inputs) * s.n);
    for (std::uint32_t x = 0; x < inputs; x++) {
        int m = s.encode(x);
        for (int k = 0; k < s.n; k++) {
            bool hit = s.decode(k, m) == input_bit(x, s.n, k);
            r.per_cell[x * s.n + k] = hit ? 1.0 : 0.0;
            r.successes += hit;
        }
    }
    r.average = double(r.successes) / double(r.per_cell.size());
    return r;
}

double racsim::mixed_success(const StrategyMixture &m) {
    if (m.components.empty()) {
        throw std::invalid_argument("mixture has no components");
    }
    double total_weight = 0;
    double value = 0;
    for (const auto &[w, s] : m.components) {
        if (w < 0) {
            throw std::invalid_argument("mixture weights must be non-negative");
        }
        total_weight += w;
        value += w * brute_success(s).average;
    }
    if (std::abs(total_weight - 1.0) > 1e-12) {
        throw std::invalid_argument("mixture weights sum to " + std::to_string(total_weight) + ", not 1");
    }
    return value;
}

double racsim::optimal_classical_formula(int n) {
    if (n < 1) {
        throw std::invalid_argument("optimal_classical_formula: n must be positive");
    }
    return 0.5 + std::ldexp(double(binomial(n - 1, (n - 1) / 2)), -n);
}

CorrelationTable racsim::reference_correlators(const DeterministicStrategy &s) {
    require_valid(s);
    const int n = s.n;
    CorrelationTable t = CorrelationTable::Zero(1 << (n - 1), n);
    for (std::uint32_t x = 0; x < (1U << n); x++) {
        int i = int(class_index(x, n));
        int ref = input_bit(x, n, 0) ? -1 : 1;
        int m = s.encode(x);
        for (int j = 0; j < n; j++) {
            int out = s.decode(j, m) ? -1 : 1;
            t(i, j) += 0.5 * ref * out;
        }
    }
    return t;
}

std::uint64_t racsim::strategy_count(int n) {
    if (n < 1 || n > 5) {
        throw std::invalid_argument("strategy_count: n must be in [1, 5]");
    }
    // 2^(2^n) encodings times 4^n decoder choices.
    std::uint64_t bits = (std::uint64_t(1) << n) + 2 * std::uint64_t(n);
    if (bits >= 64) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return std::uint64_t(1) << bits;
}

EnumerationSummary racsim::reference::enumerate_deterministic(
    int n, const std::function<void(const DeterministicStrategy &, const SuccessReport &)> &visit, bool allow_n4) {
    require_enumerable(n, allow_n4);
    EnumerationSummary out;
    out.n = n;
    out.count = strategy_count(n);
    out.min_successes = std::numeric_limits<std::uint64_t>::max();
    for (std::uint64_t id = 0; id < out.count; id++) {
        DeterministicStrategy s = DeterministicStrategy::from_id(n, id);
        SuccessReport r = brute_success(s);
        if (visit) {
            visit(s, r);
        }
        if (r.successes > out.max_successes || id == 0) {
            out.max_successes = r.successes;
            out.argmax = id;
        }
        if (r.successes < out.min_successes) {
            out.min_successes = r.successes;
            out.argmin = id;
        }
    }
    return out;
}

EnumerationSummary racsim::enumerate_deterministic(int n, int workers, bool allow_n4) {
    require_enumerable(n, allow_n4);
    const std::int64_t total = std::int64_t(strategy_count(n));
    const int threads = workers > 0 ? workers : omp_get_max_threads();

    // (count << 32 | ~id) orders by count then by lowest id, so a plain max
    // reduction is deterministic. Ids fit in 32 bits for n <= 4.
    std::uint64_t best_key = 0;
    std::uint64_t worst_key = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel for num_threads(threads) reduction(max : best_key) reduction(min : worst_key) schedule(static)
    for (std::int64_t id = 0; id < total; id++) {
        std::uint64_t hits = count_from_id(n, std::uint64_t(id));
        best_key = std::max<std::uint64_t>(best_key, (hits << 32) | std::uint64_t(0xFFFFFFFFu - std::uint64_t(id)));
        worst_key = std::min<std::uint64_t>(worst_key, (hits << 32) | std::uint64_t(id));
    }

    EnumerationSummary out;
    out.n = n;
    out.count = std::uint64_t(total);
    out.max_successes = best_key >> 32;
    out.argmax = 0xFFFFFFFFULL - (best_key & 0xFFFFFFFFULL);
    out.min_successes = worst_key >> 32;
    out.argmin = worst_key & 0xFFFFFFFFULL;
    return out;
}
