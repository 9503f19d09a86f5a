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

#include "racsim/qrac.h"

#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "racsim/classical.h"

using namespace racsim;

namespace {

constexpr double kDegenerateNorm = 1e-12;
constexpr int kMaxReseeds = 64;

int alice_count(int n) {
    return 1 << (n - 1);
}

MeasurementBases random_start(const SignMatrix &s, std::uint64_t seed, int start, int attempt) {
    KeyedRng rng(seed, stream_id(std::uint64_t(start), std::uint64_t(attempt)));
    MeasurementBases b;
    b.n = s.n;
    for (int i = 0; i < s.rows(); i++) {
        b.alice.push_back(random_unit_vector(rng));
    }
    for (int j = 0; j < s.cols(); j++) {
        b.bob.push_back(random_unit_vector(rng));
    }
    return b;
}

struct StartOutcome {
    double value;
    MeasurementBases bases;
    int reseeds;
};

StartOutcome run_start(const SignMatrix &s, const SeesawOptions &opt, int start) {
    int reseeds = 0;
    for (int attempt = 0; attempt <= kMaxReseeds; attempt++) {
        MeasurementBases init = (start == 0 && attempt == 0 && opt.first_start) ? *opt.first_start
                                                                                 : random_start(s, opt.seed, start, attempt);
        auto refined = seesaw_refine(s, init, opt.iterations);
        if (refined) {
            return StartOutcome{bell_of_vectors(s, *refined), *refined, reseeds};
        }
        reseeds++;
    }
    throw std::runtime_error("seesaw start " + std::to_string(start) + " stayed degenerate after reseeding");
}

}  // namespace

void MeasurementBases::validate() const {
    if (n < 1 || n > 20) {
        throw std::invalid_argument("bases: n must be in [1, 20]");
    }
    if (int(alice.size()) != alice_count(n) || int(bob.size()) != n) {
        throw std::invalid_argument("bases for n = " + std::to_string(n) + " need " + std::to_string(alice_count(n)) +
                                    " Alice and " + std::to_string(n) + " Bob directions");
    }
    for (const auto &v : alice) {
        if (!is_unit(v)) {
            throw std::invalid_argument("Alice direction is not a unit vector");
        }
    }
    for (const auto &v : bob) {
        if (!is_unit(v)) {
            throw std::invalid_argument("Bob direction is not a unit vector");
        }
    }
}

MeasurementBases racsim::default_bases(int n) {
    SignMatrix s = sign_matrix(n);
    MeasurementBases b;
    b.n = n;
    if (n == 2) {
        for (int i = 0; i < 2; i++) {
            b.alice.push_back(BlochVector(s.signs(i, 1), 0, s.signs(i, 0)) / std::sqrt(2.0));
        }
        b.bob = {BlochVector::UnitZ(), BlochVector::UnitX()};
    } else if (n == 3) {
        for (int i = 0; i < 4; i++) {
            b.alice.push_back(BlochVector(s.signs(i, 0), s.signs(i, 1), s.signs(i, 2)) / std::sqrt(3.0));
        }
        b.bob = {BlochVector::UnitX(), BlochVector::UnitY(), BlochVector::UnitZ()};
    } else {
        throw std::invalid_argument("default bases exist for n = 2 and n = 3 only");
    }
    return b;
}

MeasurementBases racsim::random_bases(int n, KeyedRng &rng) {
    MeasurementBases b;
    b.n = n;
    for (int i = 0; i < alice_count(n); i++) {
        b.alice.push_back(random_unit_vector(rng));
    }
    for (int j = 0; j < n; j++) {
        b.bob.push_back(random_unit_vector(rng));
    }
    return b;
}

DensityOperator racsim::preparation(const MeasurementBases &b, std::uint32_t x) {
    return prepared_state(b.alice[class_index(x, b.n)], Bit(input_bit(x, b.n, 0)));
}

double racsim::quantum_success(const MeasurementBases &b) {
    b.validate();
    double total = 0;
    for (std::uint32_t x = 0; x < (1U << b.n); x++) {
        DensityOperator rho = preparation(b, x);
        for (int k = 0; k < b.n; k++) {
            total += born(rho, projector(b.bob[k], Bit(input_bit(x, b.n, k))));
        }
    }
    return total / std::ldexp(double(b.n), b.n);
}

double racsim::correlator_qm(const MeasurementBases &b, int i, int j) {
    DensityOperator rho0 = prepared_state(b.alice[i], 0);
    DensityOperator rho1 = prepared_state(b.alice[i], 1);
    return born(rho0, projector(b.bob[j], 0)) + born(rho1, projector(b.bob[j], 1)) - 1.0;
}

CorrelationTable racsim::correlation_table(const MeasurementBases &b) {
    b.validate();
    CorrelationTable t(alice_count(b.n), b.n);
    for (int i = 0; i < t.rows(); i++) {
        for (int j = 0; j < t.cols(); j++) {
            t(i, j) = correlator_qm(b, i, j);
        }
    }
    return t;
}

BellValue racsim::bell_from_preps(const MeasurementBases &b) {
    return bell_value(correlation_table(b), sign_matrix(b.n));
}

QuantumProtocolResult racsim::evaluate_protocol(const MeasurementBases &b) {
    double p = quantum_success(b);
    return QuantumProtocolResult{p, bell_from_preps(b), p - optimal_classical_formula(b.n)};
}

double racsim::identity_check(const MeasurementBases &b) {
    return std::abs(quantum_success(b) - success_from_bell(bell_from_preps(b)));
}

double racsim::bell_of_vectors(const SignMatrix &s, const MeasurementBases &b) {
    double total = 0;
    for (int i = 0; i < s.rows(); i++) {
        for (int j = 0; j < s.cols(); j++) {
            total += s.signs(i, j) * b.alice[i].dot(b.bob[j]);
        }
    }
    return total;
}

std::optional<MeasurementBases> racsim::seesaw_refine(const SignMatrix &s, MeasurementBases b, int iterations) {
    for (int it = 0; it < iterations; it++) {
        for (int j = 0; j < s.cols(); j++) {
            BlochVector v = BlochVector::Zero();
            for (int i = 0; i < s.rows(); i++) {
                v += s.signs(i, j) * b.alice[i];
            }
            if (v.norm() < kDegenerateNorm) {
                return std::nullopt;
            }
            b.bob[j] = v.normalized();
        }
        for (int i = 0; i < s.rows(); i++) {
            BlochVector v = BlochVector::Zero();
            for (int j = 0; j < s.cols(); j++) {
                v += s.signs(i, j) * b.bob[j];
            }
            if (v.norm() < kDegenerateNorm) {
                return std::nullopt;
            }
            b.alice[i] = v.normalized();
        }
    }
    return b;
}

SeesawResult racsim::reference::maximize_bell(const SignMatrix &s, const SeesawOptions &opt) {
    if (opt.starts < 1) {
        throw std::invalid_argument("seesaw needs at least one start");
    }
    SeesawResult best;
    best.best = BellValue{s.n, -INFINITY};
    for (int start = 0; start < opt.starts; start++) {
        StartOutcome r = run_start(s, opt, start);
        best.reseeds += r.reseeds;
        if (r.value > best.best.value) {
            best.best.value = r.value;
            best.bases = r.bases;
        }
    }
    return best;
}

SeesawResult racsim::maximize_bell(const SignMatrix &s, const SeesawOptions &opt) {
    if (opt.starts < 1) {
        throw std::invalid_argument("seesaw needs at least one start");
    }
    std::vector<StartOutcome> outcomes(std::size_t(opt.starts), StartOutcome{0, {}, 0});
    const int threads = opt.workers > 0 ? opt.workers : omp_get_max_threads();
    std::exception_ptr failure;
#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (int start = 0; start < opt.starts; start++) {
        try {
            outcomes[start] = run_start(s, opt, start);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    // Serial reduction in start order: first strict maximum wins, as in the
    // reference loop.
    SeesawResult best;
    best.best = BellValue{s.n, -INFINITY};
    for (const auto &r : outcomes) {
        best.reseeds += r.reseeds;
        if (r.value > best.best.value) {
            best.best.value = r.value;
            best.bases = r.bases;
        }
    }
    return best;
}

SeesawResult racsim::maximize_bell(int n, const SeesawOptions &opt) {
    if (n != 2 && n != 3) {
        throw std::invalid_argument("maximize_bell supports n = 2 and n = 3");
    }
    return maximize_bell(sign_matrix(n), opt);
}
