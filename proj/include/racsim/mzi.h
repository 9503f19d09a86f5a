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

#ifndef RACSIM_MZI_H
#define RACSIM_MZI_H

#include <cstdint>
#include <utility>
#include <vector>

#include "racsim/qcore.h"
#include "racsim/qrac.h"

namespace racsim {

// Mach-Zehnder path-spin apparatus. BS1 splits with amplitudes (a, b), PS1 adds
// the phase delta on the reflected arm, BS2 + PS2 with (theta, phi) choose the
// path analyzer and the Stern-Gerlach magnets choose the spin analyzer.
struct InterferometerConfig {
    double a = 1.0 / 1.4142135623730951;
    double b = 1.0 / 1.4142135623730951;
    double delta = 3.141592653589793;
    double theta = 0;
    double phi = 0;
    BlochVector spin_axis = BlochVector::UnitZ();

    void validate() const;
};

// a |psi_1>|down> + b e^{i delta} |psi_2>|up>, path first.
PureState entangled_state(double a, double b, double delta);

// 2 |psi_uu psi_dd - psi_ud psi_du|
double concurrence(const PureState &state);

// sin2θ cosφ σx + sin2θ sinφ σy - cos2θ σz, i.e. P(psi_3) - P(psi_4).
Mat2 path_observable(double theta, double phi);
BlochVector path_direction(double theta, double phi);

// Inverse of path_direction: (theta, phi) with theta in [0, π/2].
std::pair<double, double> analyzer_angles(const BlochVector &direction);

// One joint (path, spin) measurement configuration. i and j are 0-based
// labels of the Alice and Bob settings the run estimates.
struct Setting {
    int i = 0;
    int j = 0;
    double theta = 0;
    double phi = 0;
    BlochVector spin_axis = BlochVector::UnitZ();
};

// Detector tallies for one setting. D3 sees path outcome +1 and D4 path
// outcome -1; primed detectors see spin +1 and double-primed spin -1.
struct DetectionCounts {
    int i = 0;
    int j = 0;
    std::uint64_t n_plus = 0;   // N'
    std::uint64_t n_minus = 0;  // N''
    std::uint64_t m_plus = 0;   // M'
    std::uint64_t m_minus = 0;  // M''

    std::uint64_t n_total() const { return n_plus + n_minus; }
    std::uint64_t m_total() const { return m_plus + m_minus; }
    std::uint64_t shots() const { return n_total() + m_total(); }
    void add(Bit path, Bit spin);
    bool operator==(const DetectionCounts &) const = default;
};

struct EventRecord {
    std::uint32_t setting = 0;
    Bit path = 0;
    Bit spin = 0;
    std::uint64_t shot_index = 0;
    bool operator==(const EventRecord &) const = default;
};

// Four Born probabilities [path * 2 + spin] for a setting.
Eigen::Vector4d born_distribution(const PureState &state, const Setting &setting);

// Maps a uniform draw onto the four outcomes by cumulative probability.
std::pair<Bit, Bit> pick_outcome(const Eigen::Vector4d &probabilities, double u);

// i.i.d. Born draws per setting. Shot s of setting t uses the keyed stream
// (seed, t, s), so counts and events are identical for any worker count. When
// `events` is given it is filled in (setting, shot) order.
std::vector<DetectionCounts> sample_events(const PureState &state, const std::vector<Setting> &settings,
                                           std::uint64_t shots, std::uint64_t seed, int workers = 0,
                                           std::vector<EventRecord> *events = nullptr);

// [count(+,+) - count(+,-) - count(-,+) + count(-,-)] / shots.
double correlator_from_counts(const DetectionCounts &c);

// (N - M)[(N' - N'') + (M' - M'')] on counts normalized to fractions. This is
// a product of the two marginal asymmetries, not the joint correlator; it is
// zero on the maximally entangled state whatever the analyzers.
double correlator_product_form(const DetectionCounts &c);

// Alice's class direction A_i is read out through the path analyzer -A_i:
// the singlet anti-correlation then turns the raw path-spin correlator into
// A_i . B_j, the protocol correlator.
std::vector<Setting> protocol_settings(const MeasurementBases &bases);

struct ProtocolEstimate {
    double c2 = 0;
    double p = 0;
    double c2_product_form = 0;
    std::vector<DetectionCounts> counts;
    std::vector<double> correlators;
    std::vector<double> correlators_product_form;
};

// Signed CHSH sum over the settings using sign_matrix(2) and P = ½ + C/8.
ProtocolEstimate estimate_from_settings(const PureState &state, const std::vector<Setting> &settings,
                                        std::uint64_t shots, std::uint64_t seed, int workers = 0,
                                        std::vector<EventRecord> *events = nullptr);

ProtocolEstimate estimate_protocol(const PureState &state, const MeasurementBases &bases, std::uint64_t shots,
                                   std::uint64_t seed, int workers = 0);

namespace reference {

std::vector<DetectionCounts> sample_events(const PureState &state, const std::vector<Setting> &settings,
                                           std::uint64_t shots, std::uint64_t seed,
                                           std::vector<EventRecord> *events = nullptr);

}  // namespace reference

}  // namespace racsim

#endif
