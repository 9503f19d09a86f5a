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

#include "racsim/mzi.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "racsim/bell.h"
#include "racsim/rng.h"

using namespace racsim;

namespace {

void require_shots(const DetectionCounts &c) {
    if (c.shots() == 0) {
        throw std::invalid_argument("estimator needs at least one shot");
    }
}

std::vector<Eigen::Vector4d> distributions(const PureState &state, const std::vector<Setting> &settings) {
    std::vector<Eigen::Vector4d> out;
    out.reserve(settings.size());
    for (const auto &s : settings) {
        out.push_back(born_distribution(state, s));
    }
    return out;
}

std::vector<DetectionCounts> empty_counts(const std::vector<Setting> &settings) {
    std::vector<DetectionCounts> out(settings.size());
    for (std::size_t t = 0; t < settings.size(); t++) {
        out[t].i = settings[t].i;
        out[t].j = settings[t].j;
    }
    return out;
}

std::pair<Bit, Bit> draw(const Eigen::Vector4d &p, std::uint64_t seed, std::uint64_t setting, std::uint64_t shot) {
    KeyedRng rng(seed, setting, shot);
    return pick_outcome(p, rng.uniform());
}

}  // namespace

void InterferometerConfig::validate() const {
    if (std::abs(a * a + b * b - 1.0) > kAlgebraTolerance) {
        throw std::invalid_argument("beam splitter amplitudes must satisfy a^2 + b^2 = 1");
    }
    if (!is_unit(spin_axis)) {
        throw std::invalid_argument("spin analyzer axis must be a unit vector");
    }
}

void DetectionCounts::add(Bit path, Bit spin) {
    if (path == 0) {
        (spin == 0 ? n_plus : n_minus)++;
    } else {
        (spin == 0 ? m_plus : m_minus)++;
    }
}

PureState racsim::entangled_state(double a, double b, double delta) {
    if (std::abs(a * a + b * b - 1.0) > kAlgebraTolerance) {
        throw std::invalid_argument("entangled_state: a^2 + b^2 must be 1");
    }
    // Basis {up_p up, up_p down, down_p up, down_p down}; psi_1 is up_p.
    Ket4 psi = Ket4::Zero();
    psi[1] = a;
    psi[2] = b * std::polar(1.0, delta);
    return PureState(psi);
}

double racsim::concurrence(const PureState &state) {
    Ket4 psi = state.ket4();
    return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

BlochVector racsim::path_direction(double theta, double phi) {
    return {std::sin(2 * theta) * std::cos(phi), std::sin(2 * theta) * std::sin(phi), -std::cos(2 * theta)};
}

Mat2 racsim::path_observable(double theta, double phi) {
    return observable_from_bloch(path_direction(theta, phi));
}

std::pair<double, double> racsim::analyzer_angles(const BlochVector &direction) {
    if (!is_unit(direction)) {
        throw std::invalid_argument("analyzer direction must be a unit vector");
    }
    double two_theta = std::acos(std::clamp(-direction.z(), -1.0, 1.0));
    double phi = std::atan2(direction.y(), direction.x());
    return {two_theta / 2, phi};
}

Eigen::Vector4d racsim::born_distribution(const PureState &state, const Setting &setting) {
    return joint_distribution(state, path_direction(setting.theta, setting.phi), setting.spin_axis);
}

std::pair<Bit, Bit> racsim::pick_outcome(const Eigen::Vector4d &p, double u) {
    double acc = 0;
    for (int k = 0; k < 3; k++) {
        acc += std::max(p[k], 0.0);
        if (u < acc) {
            return {Bit(k >> 1), Bit(k & 1)};
        }
    }
    // Remaining mass, unless it is numerically zero: then fall back to the
    // last outcome that carries probability.
    for (int k = 3; k >= 0; k--) {
        if (p[k] > kAlgebraTolerance) {
            return {Bit(k >> 1), Bit(k & 1)};
        }
    }
    return {1, 1};
}

std::vector<DetectionCounts> racsim::reference::sample_events(const PureState &state,
                                                              const std::vector<Setting> &settings,
                                                              std::uint64_t shots, std::uint64_t seed,
                                                              std::vector<EventRecord> *events) {
    auto probs = distributions(state, settings);
    auto counts = empty_counts(settings);
    if (events) {
        events->clear();
    }
    for (std::size_t t = 0; t < settings.size(); t++) {
        for (std::uint64_t s = 0; s < shots; s++) {
            auto [path, spin] = draw(probs[t], seed, t, s);
            counts[t].add(path, spin);
            if (events) {
                events->push_back(EventRecord{std::uint32_t(t), path, spin, s});
            }
        }
    }
    return counts;
}

std::vector<DetectionCounts> racsim::sample_events(const PureState &state, const std::vector<Setting> &settings,
                                                   std::uint64_t shots, std::uint64_t seed, int workers,
                                                   std::vector<EventRecord> *events) {
    auto probs = distributions(state, settings);
    auto counts = empty_counts(settings);
    if (events) {
        events->assign(settings.size() * shots, EventRecord{});
    }
    const int threads = workers > 0 ? workers : omp_get_max_threads();
    for (std::size_t t = 0; t < settings.size(); t++) {
        std::uint64_t n_plus = 0, n_minus = 0, m_plus = 0, m_minus = 0;
        const Eigen::Vector4d p = probs[t];
#pragma omp parallel for num_threads(threads) schedule(static) \
    reduction(+ : n_plus, n_minus, m_plus, m_minus)
        for (std::int64_t s = 0; s < std::int64_t(shots); s++) {
            auto [path, spin] = draw(p, seed, t, std::uint64_t(s));
            if (path == 0) {
                (spin == 0 ? n_plus : n_minus)++;
            } else {
                (spin == 0 ? m_plus : m_minus)++;
            }
            if (events) {
                (*events)[t * shots + std::uint64_t(s)] = EventRecord{std::uint32_t(t), path, spin, std::uint64_t(s)};
            }
        }
        counts[t].n_plus = n_plus;
        counts[t].n_minus = n_minus;
        counts[t].m_plus = m_plus;
        counts[t].m_minus = m_minus;
    }
    return counts;
}

double racsim::correlator_from_counts(const DetectionCounts &c) {
    require_shots(c);
    double agree = double(c.n_plus) + double(c.m_minus);
    double disagree = double(c.n_minus) + double(c.m_plus);
    return (agree - disagree) / double(c.shots());
}

double racsim::correlator_product_form(const DetectionCounts &c) {
    require_shots(c);
    const double total = double(c.shots());
    double n1 = double(c.n_plus) / total, n2 = double(c.n_minus) / total;
    double m1 = double(c.m_plus) / total, m2 = double(c.m_minus) / total;
    return ((n1 + n2) - (m1 + m2)) * ((n1 - n2) + (m1 - m2));
}

std::vector<Setting> racsim::protocol_settings(const MeasurementBases &bases) {
    bases.validate();
    std::vector<Setting> out;
    for (int i = 0; i < int(bases.alice.size()); i++) {
        auto [theta, phi] = analyzer_angles(-bases.alice[i]);
        for (int j = 0; j < int(bases.bob.size()); j++) {
            out.push_back(Setting{i, j, theta, phi, bases.bob[j]});
        }
    }
    return out;
}

ProtocolEstimate racsim::estimate_from_settings(const PureState &state, const std::vector<Setting> &settings,
                                                std::uint64_t shots, std::uint64_t seed, int workers,
                                                std::vector<EventRecord> *events) {
    if (shots == 0) {
        throw std::invalid_argument("estimate needs at least one shot per setting");
    }
    const SignMatrix s = sign_matrix(2);
    for (const auto &setting : settings) {
        if (setting.i < 0 || setting.i > 1 || setting.j < 0 || setting.j > 1) {
            throw std::invalid_argument("two-bit estimate needs settings with i, j in {1, 2}");
        }
    }
    ProtocolEstimate out;
    out.counts = sample_events(state, settings, shots, seed, workers, events);
    for (const auto &c : out.counts) {
        double joint = correlator_from_counts(c);
        double literal = correlator_product_form(c);
        out.correlators.push_back(joint);
        out.correlators_product_form.push_back(literal);
        out.c2 += s.signs(c.i, c.j) * joint;
        out.c2_product_form += s.signs(c.i, c.j) * literal;
    }
    out.p = 0.5 + out.c2 / 8.0;
    return out;
}

ProtocolEstimate racsim::estimate_protocol(const PureState &state, const MeasurementBases &bases,
                                           std::uint64_t shots, std::uint64_t seed, int workers) {
    if (bases.n != 2) {
        throw std::invalid_argument("the detector-count estimate is defined for n = 2");
    }
    return estimate_from_settings(state, protocol_settings(bases), shots, seed, workers);
}
