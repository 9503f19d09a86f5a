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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "racsim/bell.h"
#include "racsim/classical.h"
#include "racsim/commands.h"
#include "racsim/concat.h"
#include "racsim/mzi.h"
#include "racsim/qrac.h"
#include "racsim/rng.h"

using namespace racsim;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    Outcome() { detail << std::setprecision(10); }

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " FAILED[" << what << "]";
        }
    }
    template <class T>
    Outcome &note(const std::string &key, const T &value) {
        detail << ' ' << key << '=' << value;
        return *this;
    }
};

int failures = 0;

void criterion(const std::string &id, const std::string &title, double budget_s,
               const std::function<void(Outcome &)> &body) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception &e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0) {
        o.require(secs < budget_s, "runtime over " + std::to_string(budget_s) + " s");
    }
    failures += !o.pass;
    std::printf("[%s] %s %s:%s (%.3f s)\n", o.pass ? "PASS" : "FAIL", id.c_str(), title.c_str(),
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
}

bool near(double got, double want, double tol) {
    return std::abs(got - want) <= tol;
}

}  // namespace

int main() {
    const double sqrt2 = std::sqrt(2.0), sqrt3 = std::sqrt(3.0);

    criterion("AC1", "classical 2-bit exhaustive bound", 1.0, [](Outcome &o) {
        EnumerationSummary e = enumerate_deterministic(2);
        o.note("count", e.count).note("max", e.max()).note("min", e.min());
        o.require(e.count == 256, "count");
        o.require(e.max() == 0.75, "max");
        o.require(e.min() == 0.25, "min");
    });

    criterion("AC2", "classical 3-bit exhaustive bound", 5.0, [](Outcome &o) {
        EnumerationSummary e = enumerate_deterministic(3);
        o.note("count", e.count).note("max", e.max());
        o.require(e.count == 16384, "count");
        o.require(e.max() == 0.75, "max");
    });

    criterion("AC3", "optimal classical formula", 0, [](Outcome &o) {
        double f2 = optimal_classical_formula(2), f3 = optimal_classical_formula(3), f4 = optimal_classical_formula(4);
        o.note("P2", f2).note("P3", f3).note("P4", f4);
        o.require(f2 == enumerate_deterministic(2).max(), "n=2");
        o.require(f3 == enumerate_deterministic(3).max(), "n=3");
        o.require(f4 == 11.0 / 16.0, "n=4");
    });

    criterion("AC4", "classical bound identity", 0, [](Outcome &o) {
        int mismatches = 0;
        for (int n = 1; n <= 30; n++) {
            std::uint64_t closed = std::uint64_t(n) * binomial(n - 1, (n - 1) / 2);
            mismatches += classical_bound(n) != closed || classical_bound_closed(n) != closed;
        }
        o.note("mismatches_1_to_30", mismatches);
        o.require(mismatches == 0, "sum vs closed form");
        for (int n : {2, 3, 4}) {
            std::int64_t m = deterministic_max(sign_matrix(n));
            o.note("det_max_" + std::to_string(n), m);
            o.require(std::uint64_t(m) == classical_bound(n), "deterministic_max n=" + std::to_string(n));
        }
    });

    criterion("AC5", "quantum headline numbers", 0, [](Outcome &o) {
        QuantumProtocolResult r2 = evaluate_protocol(default_bases(2));
        QuantumProtocolResult r3 = evaluate_protocol(default_bases(3));
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.11f", r2.success);
        o.note("P2", buf);
        std::snprintf(buf, sizeof buf, "%.11f", r2.bell.value);
        o.note("C2", buf);
        std::snprintf(buf, sizeof buf, "%.11f", r3.success);
        o.note("P3", buf);
        std::snprintf(buf, sizeof buf, "%.11f", r3.bell.value);
        o.note("C3", buf);
        o.require(near(r2.success, 0.85355339059, 1e-9), "P2");
        o.require(near(r2.bell.value, 2.82842712475, 1e-9), "C2");
        o.require(near(r3.success, 0.78867513459, 1e-9), "P3");
        o.require(near(r3.bell.value, 6.92820323028, 1e-9), "C3");
    });

    criterion("AC6", "success/correlator identity on random bases", 0, [](Outcome &o) {
        KeyedRng rng(20260101, 0);
        double worst = 0;
        for (int n : {2, 3}) {
            for (int t = 0; t < 1000; t++) {
                worst = std::max(worst, identity_check(random_bases(n, rng)));
            }
        }
        o.note("trials", 2000).note("max_residual", worst);
        o.require(worst < 1e-12, "residual");
    });

    criterion("AC7", "violation margin equals success gap", 0, [&](Outcome &o) {
        double gap2 = quantum_success(default_bases(2)) - optimal_classical_formula(2);
        double gap3 = quantum_success(default_bases(3)) - optimal_classical_formula(3);
        double beta2 = bell_from_preps(default_bases(2)).value - double(classical_bound(2));
        double beta3 = bell_from_preps(default_bases(3)).value - double(classical_bound(3));
        o.note("gap2", gap2).note("beta2/8", beta2 / 8).note("gap3", gap3).note("beta3/24", beta3 / 24);
        o.require(near(gap2, beta2 / 8, 1e-9), "n=2 gap vs beta/8");
        o.require(near(gap3, beta3 / 24, 1e-9), "n=3 gap vs beta/24");
        // Printed to seven decimals.
        o.require(near(beta2 / 8, 0.1035534, 5e-8), "n=2 decimal value");
        o.require(near(beta3 / 24, 0.0386751, 5e-8), "n=3 decimal value");
        o.require(near(beta2, 2 * sqrt2 - 2, 1e-12) && near(beta3, 4 * sqrt3 - 6, 1e-12), "beta");
    });

    criterion("AC8", "seesaw reaches and respects the quantum cap", 0, [](Outcome &o) {
        for (int n : {2, 3}) {
            SeesawOptions opt;
            opt.starts = 100;
            opt.seed = 8;
            SeesawResult r = maximize_bell(n, opt);
            double cap = quantum_max(n);
            o.note("best" + std::to_string(n), r.best.value);
            o.require(r.best.value >= cap - 1e-6, "reach n=" + std::to_string(n));
            o.require(r.best.value <= cap + 1e-9, "cap n=" + std::to_string(n));
        }
    });

    criterion("AC9", "Monte Carlo estimate from detector counts", 30.0, [&](Outcome &o) {
        ProtocolEstimate e = estimate_protocol(singlet_state(), default_bases(2), 1000000, 42);
        o.note("shots_per_setting", 1000000).note("seed", 42).note("P", e.p).note("C2", e.c2);
        o.require(std::abs(e.p - 0.8535534) <= 0.002, "P");
        o.require(std::abs(e.c2 - 2 * sqrt2) <= 0.01, "C2");
    });

    criterion("AC10", "aligned analyzers give the classical lower bound", 0, [](Outcome &o) {
        MeasurementBases aligned{2, {-BlochVector::UnitZ(), -BlochVector::UnitZ()},
                                 {BlochVector::UnitZ(), BlochVector::UnitZ()}};
        ProtocolEstimate e = estimate_protocol(singlet_state(), aligned, 1000000, 42);
        o.note("C2", e.c2).note("P", e.p);
        o.require(near(e.c2, -2, 0.01), "C2");
        o.require(near(e.p, 0.25, 0.002), "P");
    });

    criterion("AC11", "concatenated codes", 0, [](Outcome &o) {
        double p20 = pkj(2, 0), p11 = pkj(1, 1);
        o.note("P20", p20).note("P11", p11);
        o.require(p20 == 0.75, "P20");
        o.require(p11 == 0.5 * (1 + 1 / std::sqrt(6.0)) && near(p11, 0.7041241, 5e-8), "P11");
        for (double p : analytic_per_bit(build_tree(4))) {
            o.require(p == 0.75, "analytic n=4");
        }
        for (double p : analytic_per_bit(build_tree(6))) {
            o.require(p == p11, "analytic n=6");
        }
        SimulationOptions opt;
        opt.shots = 200000;
        opt.seed = 7;
        double r4 = simulate(build_tree(4), {1, 0, 1, 1}, 2, opt).rate();
        double r6 = simulate(build_tree(6), {0, 1, 1, 0, 1, 0}, 4, opt).rate();
        o.note("sim4", r4).note("sim6", r6);
        o.require(near(r4, 0.75, 0.01), "sim n=4");
        o.require(near(r6, p11, 0.01), "sim n=6");
        double via_bell = success_from_bell({4, 16.0});
        o.note("P(4,C=16)", via_bell);
        o.require(via_bell == 0.75 && quantum_bound(4) == 0.75, "n=4 bound");
    });

    criterion("AC12", "padded lower bounds", 0, [](Outcome &o) {
        double p5 = padded_lower_bound(5), p7 = padded_lower_bound(7);
        o.note("ceil5", smooth_ceiling(5)).note("ceil7", smooth_ceiling(7)).note("P5", p5).note("P7", p7);
        o.require(smooth_ceiling(5) == 6 && smooth_ceiling(7) == 8, "smooth ceiling");
        o.require(near(p5, 0.5 + 1 / (2 * std::sqrt(6.0)), 1e-9), "n=5 closed form");
        o.require(near(p7, 0.5 + 1 / (2 * std::sqrt(8.0)), 1e-9), "n=7 closed form");
        // Printed to seven decimals.
        o.require(near(p5, 0.7041241, 5e-8), "n=5 decimal value");
        o.require(near(p7, 0.6767767, 5e-8), "n=7 decimal value");
    });

    criterion("AC13", "reproducibility across worker counts", 0, [](Outcome &o) {
        auto settings = protocol_settings(default_bases(2));
        auto want_counts = reference::sample_events(singlet_state(), settings, 100000, 42);
        ConcatTree tree = ConcatTree::parse("[2,[3,.,.,.],[2,.,.]]");
        SimulationOptions opt;
        opt.shots = 50000;
        opt.seed = 7;
        opt.shared_permutation = true;
        SimulationResult want_sim = reference::simulate(tree, {1, 0, 1, 1, 0}, 3, opt);
        int mismatches = 0;
        for (int w : {1, 2, 3, 4, 8}) {
            mismatches += sample_events(singlet_state(), settings, 100000, 42, w) != want_counts;
            opt.workers = w;
            mismatches += !(simulate(tree, {1, 0, 1, 1, 0}, 3, opt) == want_sim);
            opt.engine = SubunitEngine::kMzi;
            SimulationOptions serial = opt;
            serial.workers = 1;
            mismatches += !(simulate(tree, {1, 0, 1, 1, 0}, 3, opt) == reference::simulate(tree, {1, 0, 1, 1, 0}, 3, serial));
            opt.engine = SubunitEngine::kBorn;
        }
        o.note("worker_counts", "1,2,3,4,8").note("mismatches", mismatches);
        o.require(mismatches == 0, "bit-identical counts");
    });

    criterion("AC14", "detector-count estimator discrepancy is surfaced", 0, [](Outcome &o) {
        auto [theta, phi] = analyzer_angles(BlochVector::UnitZ());
        auto c = sample_events(singlet_state(), {Setting{0, 0, theta, phi, BlochVector::UnitZ()}}, 1000000, 42);
        double literal = correlator_product_form(c[0]);
        double joint = correlator_from_counts(c[0]);
        o.note("product_form", literal).note("joint", joint);
        o.require(near(literal, 0, 0.01), "product form ~ 0");
        o.require(joint == -1.0, "joint = -1");
        ReportArgs args;
        args.seed = 42;
        args.mzi_shots = 100000;
        args.concat_shots = 20000;
        auto rows = cmd_report(args);
        bool has_literal = false, has_joint = false;
        for (const auto &r : rows) {
            has_literal |= r.quantity == "aligned_correlator_product_form";
            has_joint |= r.quantity == "aligned_correlator_joint";
        }
        o.require(has_literal && has_joint, "report rows");
        o.note("report_rows", rows.size());
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
