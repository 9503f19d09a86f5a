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

#ifndef RACSIM_QRAC_H
#define RACSIM_QRAC_H

#include <cstdint>
#include <optional>
#include <vector>

#include "racsim/bell.h"
#include "racsim/qcore.h"
#include "racsim/rng.h"

namespace racsim {

// Alice measures along alice[i] for inputs of class i; Bob measures along
// bob[k] when asked for bit k.
struct MeasurementBases {
    int n = 2;
    std::vector<BlochVector> alice;
    std::vector<BlochVector> bob;

    // Throws std::invalid_argument on wrong counts or non-unit vectors.
    void validate() const;
};

// n = 2: A_i = (s_i2 x + s_i1 z)/sqrt2, B = (z, x).
// n = 3: A_i = (s_i1, s_i2, s_i3)/sqrt3, B = (x, y, z).
MeasurementBases default_bases(int n);

MeasurementBases random_bases(int n, KeyedRng &rng);

// rho_X: the qubit Bob holds after Alice's steering measurement for input x,
// with Bloch vector (-1)^{x_1} A_{class(x)}.
DensityOperator preparation(const MeasurementBases &b, std::uint32_t x);

// 1/(n 2^n) sum_{X,k} Tr(rho_X B_k^{x_k}).
double quantum_success(const MeasurementBases &b);

// Tr[rho^{A_i^0} B_j^0 + rho^{A_i^1} B_j^1] - 1.
double correlator_qm(const MeasurementBases &b, int i, int j);

CorrelationTable correlation_table(const MeasurementBases &b);

BellValue bell_from_preps(const MeasurementBases &b);

struct QuantumProtocolResult {
    double success;
    BellValue bell;
    // success minus the optimal classical success for the same n.
    double margin;
};

QuantumProtocolResult evaluate_protocol(const MeasurementBases &b);

// |P - (1 + C/(n 2^(n-1)))/2| with P and C from their own trace expressions.
double identity_check(const MeasurementBases &b);

struct SeesawOptions {
    int starts = 100;
    int iterations = 200;
    std::uint64_t seed = 0;
    int workers = 0;
    // Used in place of the first random start when set.
    std::optional<MeasurementBases> first_start;
};

struct SeesawResult {
    BellValue best;
    MeasurementBases bases;
    // Starts that hit a zero-norm update and were redrawn.
    int reseeds = 0;
};

// sum_ij s_ij A_i . B_j
double bell_of_vectors(const SignMatrix &s, const MeasurementBases &b);

// Alternating updates B_j ∝ sum_i s_ij A_i, then A_i ∝ sum_j s_ij B_j.
// Returns nullopt when an update has zero norm.
std::optional<MeasurementBases> seesaw_refine(const SignMatrix &s, MeasurementBases start, int iterations);

// Best of `starts` seesaw runs, each on its own keyed stream. OpenMP over
// starts; the result is identical for any worker count.
SeesawResult maximize_bell(const SignMatrix &s, const SeesawOptions &options);
SeesawResult maximize_bell(int n, const SeesawOptions &options);

namespace reference {

SeesawResult maximize_bell(const SignMatrix &s, const SeesawOptions &options);

}  // namespace reference

}  // namespace racsim

#endif
