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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "racsim/rng.h"

namespace racsim {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kPi = std::numbers::pi;

Setting Aligned(const BlochVector &path, const BlochVector &spin) {
    auto [theta, phi] = analyzer_angles(path);
    return Setting{0, 0, theta, phi, spin};
}

DetectionCounts Counts(std::uint64_t np, std::uint64_t nm, std::uint64_t mp, std::uint64_t mm) {
    DetectionCounts c;
    c.n_plus = np;
    c.n_minus = nm;
    c.m_plus = mp;
    c.m_minus = mm;
    return c;
}

TEST(EntangledStateTest, SingletPoint) {
    Ket4 psi = entangled_state(kInvSqrt2, kInvSqrt2, kPi).ket4();
    EXPECT_LE((psi - singlet_state().ket4()).norm(), 1e-15);
}

TEST(EntangledStateTest, SingleBranchIsAProduct) {
    PureState s = entangled_state(1, 0, 0.3);
    EXPECT_LE((s.ket4() - Ket4(0, 1, 0, 0)).norm(), 1e-15);
    EXPECT_EQ(concurrence(s), 0.0);
}

TEST(EntangledStateTest, ConcurrenceIsTwiceAB) {
    for (double t = 0; t <= kPi / 2; t += 0.1) {
        double a = std::cos(t), b = std::sin(t);
        EXPECT_NEAR(concurrence(entangled_state(a, b, 1.234)), 2 * std::abs(a * b), 1e-14);
    }
    EXPECT_NEAR(concurrence(singlet_state()), 1.0, 1e-15);
}

TEST(EntangledStateTest, RejectsUnbalancedSplitter) {
    EXPECT_THROW(entangled_state(0.5, 0.5, 0), std::invalid_argument);
    InterferometerConfig c;
    EXPECT_NO_THROW(c.validate());
    c.a = 1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(PathObservableTest, AzimuthZero) {
    for (double theta : {0.0, 0.3, kPi / 8, 1.0}) {
        Mat2 want = std::sin(2 * theta) * pauli_x() - std::cos(2 * theta) * pauli_z();
        EXPECT_LE((path_observable(theta, 0) - want).norm(), 1e-15);
    }
}

TEST(PathObservableTest, ThetaZeroIsMinusZ) {
    for (double phi : {0.0, 1.0, 2.5}) {
        EXPECT_LE((path_observable(0, phi) + pauli_z()).norm(), 1e-15);
    }
}

TEST(PathObservableTest, QuarterTurnIsY) {
    EXPECT_LE((path_observable(kPi / 4, kPi / 2) - pauli_y()).norm(), 1e-15);
}

TEST(AnalyzerAnglesTest, InvertsPathDirection) {
    KeyedRng rng(8, 8);
    for (int t = 0; t < 200; t++) {
        BlochVector n = random_unit_vector(rng);
        auto [theta, phi] = analyzer_angles(n);
        EXPECT_GE(theta, 0.0);
        EXPECT_LE(theta, kPi / 2);
        EXPECT_LE((path_direction(theta, phi) - n).norm(), 1e-12);
    }
    EXPECT_THROW(analyzer_angles(BlochVector(0, 0, 2)), std::invalid_argument);
}

TEST(PickOutcomeTest, CumulativeOrder) {
    Eigen::Vector4d p(0.1, 0.2, 0.3, 0.4);
    EXPECT_EQ(pick_outcome(p, 0.05), std::make_pair(Bit(0), Bit(0)));
    EXPECT_EQ(pick_outcome(p, 0.25), std::make_pair(Bit(0), Bit(1)));
    EXPECT_EQ(pick_outcome(p, 0.55), std::make_pair(Bit(1), Bit(0)));
    EXPECT_EQ(pick_outcome(p, 0.99), std::make_pair(Bit(1), Bit(1)));
}

TEST(PickOutcomeTest, NeverPicksZeroMass) {
    Eigen::Vector4d p(0, 0.5, 0.5, 0);
    for (double u : {0.0, 0.3, 0.5, 0.9999999999999999}) {
        auto [path, spin] = pick_outcome(p, u);
        EXPECT_NE(path, spin) << u;
    }
    // Rounding short of 1: the tail falls back to an outcome with mass.
    Eigen::Vector4d q(0.5, 0.5 - 1e-16, 0, 0);
    EXPECT_EQ(pick_outcome(q, 0.9999999999999999), std::make_pair(Bit(0), Bit(1)));
}

TEST(DetectionCountsTest, AddRoutesToDetectors) {
    DetectionCounts c;
    c.add(0, 0);
    c.add(0, 1);
    c.add(0, 1);
    c.add(1, 0);
    c.add(1, 1);
    c.add(1, 1);
    c.add(1, 1);
    EXPECT_EQ(c, Counts(1, 2, 1, 3));
    EXPECT_EQ(c.n_total(), 3u);
    EXPECT_EQ(c.m_total(), 4u);
    EXPECT_EQ(c.shots(), 7u);
}

TEST(SampleEventsTest, SingletOnZNeverFiresForbiddenDetectors) {
    Setting s = Aligned(BlochVector::UnitZ(), BlochVector::UnitZ());
    auto counts = sample_events(singlet_state(), {s}, 100000, 42);
    ASSERT_EQ(counts.size(), 1u);
    EXPECT_EQ(counts[0].n_plus, 0u);
    EXPECT_EQ(counts[0].m_minus, 0u);
    EXPECT_EQ(counts[0].shots(), 100000u);
    EXPECT_NEAR(double(counts[0].n_minus) / 100000, 0.5, 0.01);
}

TEST(SampleEventsTest, FrequenciesMatchBorn) {
    auto settings = protocol_settings(default_bases(2));
    const std::uint64_t shots = 1000000;
    auto counts = sample_events(singlet_state(), settings, shots, 42);
    for (std::size_t t = 0; t < settings.size(); t++) {
        Eigen::Vector4d p = born_distribution(singlet_state(), settings[t]);
        const DetectionCounts &c = counts[t];
        EXPECT_LT(std::abs(double(c.n_plus) / shots - p[0]), 0.002);
        EXPECT_LT(std::abs(double(c.n_minus) / shots - p[1]), 0.002);
        EXPECT_LT(std::abs(double(c.m_plus) / shots - p[2]), 0.002);
        EXPECT_LT(std::abs(double(c.m_minus) / shots - p[3]), 0.002);
    }
}

TEST(SampleEventsTest, ZeroShotsGiveEmptyCountsThatEstimatorsReject) {
    auto counts = sample_events(singlet_state(), {Setting{}}, 0, 1);
    ASSERT_EQ(counts.size(), 1u);
    EXPECT_EQ(counts[0].shots(), 0u);
    EXPECT_THROW(correlator_from_counts(counts[0]), std::invalid_argument);
    EXPECT_THROW(correlator_product_form(counts[0]), std::invalid_argument);
    EXPECT_THROW(estimate_protocol(singlet_state(), default_bases(2), 0, 1), std::invalid_argument);
}

TEST(SampleEventsTest, ParallelMatchesReferenceForAnyWorkerCount) {
    auto settings = protocol_settings(default_bases(2));
    std::vector<EventRecord> want_events;
    auto want = reference::sample_events(singlet_state(), settings, 20000, 5, &want_events);
    for (int w : {1, 2, 3, 8}) {
        std::vector<EventRecord> events;
        EXPECT_EQ(sample_events(singlet_state(), settings, 20000, 5, w, &events), want);
        EXPECT_EQ(events, want_events);
    }
}

TEST(SampleEventsTest, SeedChangesTheDraws) {
    auto settings = protocol_settings(default_bases(2));
    EXPECT_NE(sample_events(singlet_state(), settings, 10000, 1), sample_events(singlet_state(), settings, 10000, 2));
}

TEST(SampleEventsTest, EventsAgreeWithCounts) {
    auto settings = protocol_settings(default_bases(2));
    std::vector<EventRecord> events;
    auto counts = sample_events(singlet_state(), settings, 1000, 3, 0, &events);
    ASSERT_EQ(events.size(), 4000u);
    std::vector<DetectionCounts> rebuilt(4);
    for (const auto &e : events) {
        rebuilt[e.setting].add(e.path, e.spin);
    }
    for (int t = 0; t < 4; t++) {
        rebuilt[t].i = counts[t].i;
        rebuilt[t].j = counts[t].j;
        EXPECT_EQ(rebuilt[t], counts[t]);
    }
}

TEST(CorrelatorFromCountsTest, Values) {
    EXPECT_EQ(correlator_from_counts(Counts(0, 100, 0, 0)), -1.0);
    EXPECT_EQ(correlator_from_counts(Counts(250, 250, 250, 250)), 0.0);
    EXPECT_EQ(correlator_from_counts(Counts(10, 0, 0, 30)), 1.0);
}

TEST(CorrelatorFromCountsTest, SingletOnZIsExactlyMinusOne) {
    Setting s = Aligned(BlochVector::UnitZ(), BlochVector::UnitZ());
    auto counts = sample_events(singlet_state(), {s}, 1000000, 42);
    EXPECT_EQ(correlator_from_counts(counts[0]), -1.0);
}

TEST(CorrelatorProductFormTest, ProductStateOnZ) {
    Setting s = Aligned(BlochVector::UnitZ(), BlochVector::UnitZ());
    auto counts = sample_events(entangled_state(1, 0, 0), {s}, 10000, 1);
    EXPECT_EQ(counts[0], Counts(0, 10000, 0, 0));
    EXPECT_EQ(correlator_product_form(counts[0]), -1.0);
}

TEST(CorrelatorProductFormTest, UniformIsZero) {
    EXPECT_EQ(correlator_product_form(Counts(1, 1, 1, 1)), 0.0);
}

TEST(CorrelatorProductFormTest, ProductOfMarginalAsymmetries) {
    DetectionCounts c = Counts(7, 11, 13, 19);
    double t = 50;
    double path = (7 + 11 - 13 - 19) / t;
    double spin = (7 - 11 + 13 - 19) / t;
    EXPECT_NEAR(correlator_product_form(c), path * spin, 1e-15);
}

TEST(CorrelatorProductFormTest, SingletOnZDivergesFromJointCorrelator) {
    Setting s = Aligned(BlochVector::UnitZ(), BlochVector::UnitZ());
    auto counts = sample_events(singlet_state(), {s}, 1000000, 42);
    EXPECT_NEAR(correlator_product_form(counts[0]), 0.0, 0.01);
    EXPECT_EQ(correlator_from_counts(counts[0]), -1.0);
}

TEST(ProtocolSettingsTest, RawCorrelatorEqualsProtocolCorrelator) {
    MeasurementBases b = default_bases(2);
    auto settings = protocol_settings(b);
    ASSERT_EQ(settings.size(), 4u);
    for (const auto &s : settings) {
        Eigen::Vector4d p = born_distribution(singlet_state(), s);
        EXPECT_NEAR(p[0] - p[1] - p[2] + p[3], b.alice[s.i].dot(b.bob[s.j]), 1e-14);
    }
}

TEST(EstimateProtocolTest, DefaultBasesMillionShots) {
    ProtocolEstimate e = estimate_protocol(singlet_state(), default_bases(2), 1000000, 42);
    EXPECT_LE(std::abs(e.p - 0.5 * (1 + kInvSqrt2)), 0.002);
    EXPECT_LE(std::abs(e.c2 - 2 * std::sqrt(2.0)), 0.01);
    EXPECT_EQ(e.counts.size(), 4u);
    EXPECT_NEAR(e.c2_product_form, 0.0, 0.01);
}

TEST(EstimateProtocolTest, AlignedAnalyzersGiveTheLowerBound) {
    // Protocol direction -z for Alice puts the physical path analyzer on +z,
    // aligned with every spin analyzer.
    MeasurementBases b{2, {-BlochVector::UnitZ(), -BlochVector::UnitZ()}, {BlochVector::UnitZ(), BlochVector::UnitZ()}};
    ProtocolEstimate e = estimate_protocol(singlet_state(), b, 10000, 42);
    EXPECT_EQ(e.c2, -2.0);
    EXPECT_EQ(e.p, 0.25);
}

TEST(EstimateProtocolTest, RequiresTwoBits) {
    EXPECT_THROW(estimate_protocol(singlet_state(), default_bases(3), 10, 1), std::invalid_argument);
}

TEST(EstimateProtocolTest, WorkerCountDoesNotChangeTheEstimate) {
    ProtocolEstimate a = estimate_protocol(singlet_state(), default_bases(2), 50000, 9, 1);
    ProtocolEstimate b = estimate_protocol(singlet_state(), default_bases(2), 50000, 9, 4);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.c2, b.c2);
}

}  // namespace
}  // namespace racsim
