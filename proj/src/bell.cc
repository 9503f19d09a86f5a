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

#include "racsim/bell.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <omp.h>

using namespace racsim;

namespace {

constexpr int kMaxSearchN = 5;

void require_search_size(const SignMatrix &s) {
    if (s.n > kMaxSearchN || s.cols() > kMaxSearchN) {
        std::uint64_t cases = std::uint64_t(1) << std::min<int>(63, s.rows() + s.cols());
        throw std::invalid_argument("deterministic_max: n = " + std::to_string(s.n) + " needs " +
                                    std::to_string(cases) + " sign assignments; the limit is n = 5");
    }
}

// Best value over all Alice assignments for one fixed Bob assignment.
std::int64_t best_over_alice(const SignMatrix &s, std::uint32_t bob_mask) {
    const int rows = s.rows();
    const int cols = s.cols();
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (std::uint64_t alice_mask = 0; alice_mask < (std::uint64_t(1) << rows); alice_mask++) {
        std::int64_t total = 0;
        for (int i = 0; i < rows; i++) {
            int a = (alice_mask >> i) & 1 ? -1 : 1;
            for (int j = 0; j < cols; j++) {
                int b = (bob_mask >> j) & 1 ? -1 : 1;
                total += std::int64_t(s.signs(i, j)) * a * b;
            }
        }
        best = std::max(best, total);
    }
    return best;
}

}  // namespace

SignMatrix racsim::sign_matrix(int n) {
    if (n < 1 || n > 20) {
        throw std::invalid_argument("sign_matrix: n must be in [1, 20]");
    }
    SignMatrix s;
    s.n = n;
    const int rows = 1 << (n - 1);
    s.signs.resize(rows, n);
    for (int i = 0; i < rows; i++) {
        s.signs(i, 0) = 1;
        for (int j = 1; j < n; j++) {
            s.signs(i, j) = input_bit(std::uint32_t(i), n - 1, j - 1) ? -1 : 1;
        }
    }
    return s;
}

SignMatrix racsim::printed_sign_matrix_3() {
    SignMatrix s;
    s.n = 3;
    s.signs.resize(4, 3);
    s.signs << 1, 1, 1,
               1, -1, -1,
               -1, 1, -1,
               -1, -1, 1;
    return s;
}

bool racsim::is_canonical(const SignMatrix &s) {
    for (int i = 0; i < s.rows(); i++) {
        if (s.signs(i, 0) != 1) {
            return false;
        }
        for (int j = 0; j < s.cols(); j++) {
            if (std::abs(s.signs(i, j)) != 1) {
                return false;
            }
        }
        for (int k = 0; k < i; k++) {
            if (s.signs.row(k) == s.signs.row(i)) {
                return false;
            }
        }
    }
    return true;
}

BellValue racsim::bell_value(const CorrelationTable &t, const SignMatrix &s) {
    if (t.rows() != s.rows() || t.cols() != s.cols()) {
        throw std::invalid_argument("bell_value: correlation table is " + std::to_string(t.rows()) + "x" +
                                    std::to_string(t.cols()) + " but the sign matrix is " +
                                    std::to_string(s.rows()) + "x" + std::to_string(s.cols()));
    }
    if (t.cwiseAbs().maxCoeff() > 1 + 1e-12) {
        throw std::invalid_argument("bell_value: correlator outside [-1, 1]");
    }
    return BellValue{s.n, (t.array() * s.signs.array()).sum()};
}

std::uint64_t racsim::binomial(int n, int r) {
    if (r < 0 || n < 0 || r > n) {
        return 0;
    }
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (int i = 0; i < r; i++) {
        // acc * (n - i) is always divisible by (i + 1).
        acc = acc * unsigned(n - i) / unsigned(i + 1);
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            throw std::overflow_error("binomial(" + std::to_string(n) + ", " + std::to_string(r) + ") overflows");
        }
    }
    return std::uint64_t(acc);
}

std::uint64_t racsim::classical_bound(int n) {
    if (n < 1) {
        throw std::invalid_argument("classical_bound: n must be positive");
    }
    std::uint64_t total = 0;
    for (int r = 0; r <= (n - 1) / 2; r++) {
        total += std::uint64_t(n - 2 * r) * binomial(n, r);
    }
    return total;
}

std::uint64_t racsim::classical_bound_closed(int n) {
    if (n < 1) {
        throw std::invalid_argument("classical_bound_closed: n must be positive");
    }
    return std::uint64_t(n) * binomial(n - 1, (n - 1) / 2);
}

std::int64_t racsim::reference::deterministic_max(const SignMatrix &s) {
    require_search_size(s);
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (std::uint32_t bob = 0; bob < (1U << s.cols()); bob++) {
        best = std::max(best, best_over_alice(s, bob));
    }
    return best;
}

std::int64_t racsim::deterministic_max(const SignMatrix &s, int workers) {
    require_search_size(s);
    const std::int64_t bob_cases = std::int64_t(1) << s.cols();
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for num_threads(threads) reduction(max : best) schedule(static)
    for (std::int64_t bob = 0; bob < bob_cases; bob++) {
        best = std::max(best, best_over_alice(s, std::uint32_t(bob)));
    }
    return best;
}

double racsim::quantum_max(int n) {
    if (n < 1) {
        throw std::invalid_argument("quantum_max: n must be positive");
    }
    return std::ldexp(std::sqrt(double(n)), n - 1);
}

double racsim::success_from_bell(const BellValue &c) {
    if (c.n < 1) {
        throw std::invalid_argument("success_from_bell: n must be positive");
    }
    const double scale = std::ldexp(double(c.n), c.n - 1);
    if (std::abs(c.value) > scale * (1 + 1e-12)) {
        throw std::invalid_argument("success_from_bell: |C| = " + std::to_string(c.value) +
                                    " exceeds the algebraic maximum " + std::to_string(scale));
    }
    return 0.5 * (1.0 + c.value / scale);
}

ViolationMargin racsim::violation_margin(int n, double c_qm, double c_cl) {
    double beta = c_qm - c_cl;
    return ViolationMargin{beta, beta / std::ldexp(double(n), n)};
}
