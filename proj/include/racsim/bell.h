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

#ifndef RACSIM_BELL_H
#define RACSIM_BELL_H

#include <cstdint>

#include <Eigen/Dense>

namespace racsim {

// Input strings X = x_1 x_2 ... x_n are stored as integers with x_1 in the most
// significant position, so the string "01" is the integer 1.
inline int input_bit(std::uint32_t x, int n, int k) {
    return int((x >> (n - 1 - k)) & 1U);
}

// Strings that agree up to a global complement form a class; there are
// 2^(n-1) of them. The class index is the pattern x_j XOR x_1 over j = 2..n,
// read with x_2 most significant. For n = 2: {00,11} -> 0, {01,10} -> 1.
inline std::uint32_t class_index(std::uint32_t x, int n) {
    std::uint32_t mask = (1U << (n - 1)) - 1U;
    return (input_bit(x, n, 0) ? ~x : x) & mask;
}

// Signs s_ij, one row per class i, one column per bit j.
struct SignMatrix {
    int n = 0;
    Eigen::MatrixXd signs;

    int rows() const { return int(signs.rows()); }
    int cols() const { return int(signs.cols()); }
};

// <A_i B_j>, rows indexed by class, columns by bit.
using CorrelationTable = Eigen::MatrixXd;

struct BellValue {
    int n = 0;
    double value = 0;
};

// s_ij = +1 iff bit j of class i's pattern equals the reference (first) bit.
// Rows for n = 3: (+,+,+), (+,+,-), (+,-,+), (+,-,-).
SignMatrix sign_matrix(int n);

// The 3-setting inequality exactly as commonly printed: rows
// (+,+,+), (+,-,-), (-,+,-), (-,-,+). A relabeling of sign_matrix(3) with
// row flips; kept for the equivalence checks.
SignMatrix printed_sign_matrix_3();

// Leading +1 in every row, rows pairwise distinct, entries +-1.
bool is_canonical(const SignMatrix &s);

// sum_ij s_ij t(i, j). Throws std::invalid_argument on a shape mismatch or a
// correlator outside [-1, 1].
BellValue bell_value(const CorrelationTable &t, const SignMatrix &s);

// Exact binomial coefficient; throws std::overflow_error past 64 bits.
std::uint64_t binomial(int n, int r);

// sum_{r=0}^{floor((n-1)/2)} (n - 2r) C(n, r).
std::uint64_t classical_bound(int n);

// n C(n-1, floor((n-1)/2)), the telescoped form of classical_bound.
std::uint64_t classical_bound_closed(int n);

// max over A in {+-1}^rows, B in {+-1}^n of sum_ij s_ij A_i B_j, by exhaustive
// search. OpenMP over the Bob assignments; workers <= 0 uses the runtime default.
// Throws std::invalid_argument for n > 5.
std::int64_t deterministic_max(const SignMatrix &s, int workers = 0);

// 2^(n-1) sqrt(n).
double quantum_max(int n);

// (1 + C / (n 2^(n-1))) / 2. Throws when |C| exceeds the algebraic maximum.
double success_from_bell(const BellValue &c);

struct ViolationMargin {
    double beta;
    double delta_p;
};

// beta = C_qm - C_cl, delta_p = beta / (n 2^n).
ViolationMargin violation_margin(int n, double c_qm, double c_cl);

namespace reference {

std::int64_t deterministic_max(const SignMatrix &s);

}  // namespace reference

}  // namespace racsim

#endif
