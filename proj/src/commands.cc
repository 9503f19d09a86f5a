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

#include "racsim/commands.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "racsim/bell.h"
#include "racsim/classical.h"
#include "racsim/rng.h"

using namespace racsim;
using nlohmann::json;

namespace {

json correlators_json(const CorrelationTable &t) {
    json rows = json::array();
    for (int i = 0; i < t.rows(); i++) {
        json row = json::array();
        for (int j = 0; j < t.cols(); j++) {
            row.push_back(t(i, j));
        }
        rows.push_back(row);
    }
    return rows;
}

std::string bits_to_string(const std::vector<int> &bits) {
    std::string s;
    for (int b : bits) {
        s += char('0' + b);
    }
    return s;
}

// Worst |P - (1 + C/(n 2^(n-1)))/2| over `trials` random bases.
double worst_identity_residual(int n, int trials, std::uint64_t seed) {
    double worst = 0;
    for (int t = 0; t < trials; t++) {
        KeyedRng rng(seed, stream_id(std::uint64_t(n), std::uint64_t(t)));
        worst = std::max(worst, identity_check(random_bases(n, rng)));
    }
    return worst;
}

std::vector<Setting> aligned_settings() {
    std::vector<Setting> out;
    auto [theta, phi] = analyzer_angles(BlochVector::UnitZ());
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            out.push_back(Setting{i, j, theta, phi, BlochVector::UnitZ()});
        }
    }
    return out;
}

}  // namespace

std::vector<Record> racsim::cmd_classical(const ClassicalArgs &args) {
    std::vector<Record> rows;
    const std::string cmd = "classical";
    json params{{"n", args.n}, {"mode", args.mode}};

    if (args.mode == "formula") {
        if (args.n < 1 || args.n > 30) {
            throw std::invalid_argument("formula mode supports 1 <= n <= 30");
        }
        double formula = optimal_classical_formula(args.n);
        double via_bell = success_from_bell(BellValue{args.n, double(classical_bound(args.n))});
        rows.push_back(checked(cmd, params, "optimal_success_formula", formula, via_bell, 1e-15));
        return rows;
    }
    if (args.mode != "enumerate") {
        throw std::invalid_argument("mode must be 'enumerate' or 'formula'");
    }

    EnumerationSummary summary;
    if (args.per_strategy) {
        summary = reference::enumerate_deterministic(
            args.n,
            [&](const DeterministicStrategy &s, const SuccessReport &r) {
                json value{{"strategy_id", s.id()},
                           {"average", r.average},
                           {"correlators", correlators_json(reference_correlators(s))}};
                rows.push_back(info(cmd, params, "strategy", value));
            },
            args.allow_n4);
    } else {
        summary = enumerate_deterministic(args.n, args.workers, args.allow_n4);
    }
    const double formula = optimal_classical_formula(args.n);
    rows.push_back(checked(cmd, params, "strategy_count", double(summary.count), double(strategy_count(args.n)), 0));
    rows.push_back(checked(cmd, params, "max_success", summary.max(), formula, 0));
    rows.push_back(checked(cmd, params, "min_success", summary.min(), 1.0 - formula, 0));
    rows.push_back(info(cmd, params, "argmax_strategy_id", summary.argmax));
    rows.push_back(info(cmd, params, "argmin_strategy_id", summary.argmin));
    rows.push_back(info(cmd, params, "optimal_success_formula", formula));
    return rows;
}

std::vector<Record> racsim::cmd_bounds(int n_max) {
    if (n_max < 1 || n_max > 30) {
        throw std::invalid_argument("bounds supports 1 <= n_max <= 30");
    }
    std::vector<Record> rows;
    const std::string cmd = "bounds";
    for (int n = 1; n <= n_max; n++) {
        json params{{"n", n}};
        const double c_cl = double(classical_bound(n));
        const double c_qm = quantum_max(n);
        const double p_cl = success_from_bell(BellValue{n, c_cl});
        const double p_qm = success_from_bell(BellValue{n, c_qm});
        const ViolationMargin m = violation_margin(n, c_qm, c_cl);
        rows.push_back(checked(cmd, params, "classical_bound", c_cl, double(classical_bound_closed(n)), 0));
        rows.push_back(info(cmd, params, "quantum_max", c_qm));
        rows.push_back(checked(cmd, params, "success_at_classical_bound", p_cl, optimal_classical_formula(n), 1e-12));
        if (n >= 2) {
            rows.push_back(checked(cmd, params, "success_at_quantum_max", p_qm, quantum_bound(n), 1e-12));
        } else {
            rows.push_back(info(cmd, params, "success_at_quantum_max", p_qm));
        }
        rows.push_back(info(cmd, params, "beta", m.beta));
        rows.push_back(checked(cmd, params, "delta_p", m.delta_p, p_qm - p_cl, 1e-12));
    }
    return rows;
}

std::vector<Record> racsim::cmd_quantum(const QuantumArgs &args) {
    std::vector<Record> rows;
    const std::string cmd = "quantum";
    const bool custom = args.bases.has_value();
    MeasurementBases bases = custom ? *args.bases : default_bases(args.n);
    if (bases.n != args.n) {
        throw std::invalid_argument("bases file is for n = " + std::to_string(bases.n) + ", not " +
                                    std::to_string(args.n));
    }
    json params{{"n", args.n}, {"bases", custom ? "file" : "default"}};
    QuantumProtocolResult r = evaluate_protocol(bases);
    const double p_ideal = 0.5 * (1.0 + 1.0 / std::sqrt(double(args.n)));
    if (custom) {
        rows.push_back(info(cmd, params, "success", r.success));
        rows.push_back(info(cmd, params, "bell_value", r.bell.value));
    } else {
        rows.push_back(checked(cmd, params, "success", r.success, p_ideal, 1e-9));
        rows.push_back(checked(cmd, params, "bell_value", r.bell.value, quantum_max(args.n), 1e-9));
    }
    rows.push_back(checked(cmd, params, "identity_residual", identity_check(bases), 0, 1e-12));
    rows.push_back(info(cmd, params, "margin_over_classical", r.margin));
    rows.push_back(info(cmd, params, "correlators", correlators_json(correlation_table(bases))));

    if (args.maximize) {
        json sp = params;
        sp["starts"] = args.seesaw.starts;
        sp["iterations"] = args.seesaw.iterations;
        sp["seed"] = args.seesaw.seed;
        SeesawResult best = maximize_bell(args.n, args.seesaw);
        const double cap = quantum_max(args.n);
        rows.push_back(checked(cmd, sp, "seesaw_best", best.best.value, cap, 1e-6));
        rows.push_back(checked(cmd, sp, "seesaw_excess_over_cap", std::max(0.0, best.best.value - cap), 0, 1e-9));
        rows.push_back(info(cmd, sp, "seesaw_reseeds", best.reseeds));
        rows.push_back(info(cmd, sp, "seesaw_bases", bases_to_json(best.bases)));
    }
    return rows;
}

std::vector<Record> racsim::cmd_mzi(const MziArgs &args, std::vector<EventRecord> *events) {
    std::vector<Record> rows;
    const std::string cmd = "mzi";
    const bool defaults = !args.settings && !args.bases;
    std::vector<Setting> settings =
        args.settings ? *args.settings : protocol_settings(args.bases ? *args.bases : default_bases(2));
    PureState state = entangled_state(args.a, args.b, args.delta);
    json params{{"shots", args.shots}, {"seed", args.seed}, {"a", args.a}, {"b", args.b}, {"delta", args.delta},
                {"settings", args.settings ? "file" : (args.bases ? "bases" : "default")}};

    ProtocolEstimate est = estimate_from_settings(state, settings, args.shots, args.seed, args.workers, events);
    for (std::size_t t = 0; t < est.counts.size(); t++) {
        json sp = params;
        sp["i"] = est.counts[t].i + 1;
        sp["j"] = est.counts[t].j + 1;
        rows.push_back(info(cmd, sp, "counts", counts_to_json(est.counts[t])));
        rows.push_back(info(cmd, sp, "correlator_joint", est.correlators[t]));
        rows.push_back(info(cmd, sp, "correlator_product_form", est.correlators_product_form[t]));
    }
    if (defaults) {
        rows.push_back(checked(cmd, params, "c2_estimate", est.c2, 2.0 * std::numbers::sqrt2, 0.01));
        rows.push_back(checked(cmd, params, "success_estimate", est.p, 0.5 * (1.0 + 1.0 / std::numbers::sqrt2), 0.002));
    } else {
        rows.push_back(info(cmd, params, "c2_estimate", est.c2));
        rows.push_back(info(cmd, params, "success_estimate", est.p));
    }
    rows.push_back(info(cmd, params, "c2_product_form", est.c2_product_form));
    return rows;
}

std::vector<Record> racsim::cmd_concat(const ConcatArgs &args) {
    std::vector<Record> rows;
    const std::string cmd = "concat";
    if (args.engine != "analytic" && args.engine != "born" && args.engine != "mzi") {
        throw std::invalid_argument("engine must be analytic, born, or mzi");
    }
    if (args.n < 2) {
        throw std::invalid_argument("concat needs n >= 2");
    }
    const ConcatTree tree = args.tree ? ConcatTree::parse(*args.tree) : build_tree(smooth_ceiling(args.n));
    if (tree.leaves() < args.n) {
        throw std::invalid_argument("tree has " + std::to_string(tree.leaves()) + " leaves, fewer than n = " +
                                    std::to_string(args.n));
    }
    json params{{"n", args.n}, {"tree", tree.to_string()}, {"engine", args.engine}};
    if (args.shared_permutation) {
        params["shared_permutation"] = "seeded leaf permutation (shared-randomness stand-in)";
    }

    const auto analytic = analytic_per_bit(tree);
    const bool balanced = !args.tree && tree.leaves() == args.n;
    for (int q = 0; q < args.n; q++) {
        json sp = params;
        sp["bit"] = q + 1;
        if (balanced) {
            rows.push_back(checked(cmd, sp, "analytic_success", analytic[q], quantum_bound(args.n), 1e-12));
        } else {
            rows.push_back(info(cmd, sp, "analytic_success", analytic[q]));
        }
    }
    rows.push_back(info(cmd, params, "quantum_bound", quantum_bound(args.n)));
    rows.push_back(info(cmd, params, "padded_lower_bound", padded_lower_bound(args.n)));
    if (args.engine == "analytic") {
        return rows;
    }

    if (!args.seed) {
        throw std::invalid_argument("sampling engines need an explicit seed");
    }
    std::vector<int> input;
    if (args.input) {
        input = *args.input;
    } else {
        KeyedRng rng(*args.seed, 0xC0FFEEULL);
        for (int q = 0; q < args.n; q++) {
            input.push_back(rng.bit());
        }
    }
    if (int(input.size()) != args.n) {
        throw std::invalid_argument("input must have exactly n bits");
    }
    params["seed"] = *args.seed;
    params["shots"] = args.shots;
    params["input"] = bits_to_string(input);

    SimulationOptions opt;
    opt.shots = args.shots;
    opt.seed = *args.seed;
    opt.engine = args.engine == "mzi" ? SubunitEngine::kMzi : SubunitEngine::kBorn;
    opt.shared_permutation = args.shared_permutation;
    opt.workers = args.workers;
    const double tol = 5.0 / std::sqrt(double(args.shots));
    for (int q = 0; q < args.n; q++) {
        if (args.query >= 0 && q != args.query) {
            continue;
        }
        json sp = params;
        sp["bit"] = q + 1;
        SimulationResult r = simulate(tree, input, q, opt);
        if (args.shared_permutation) {
            double mean = 0;
            for (double v : analytic) {
                mean += v;
            }
            mean /= double(analytic.size());
            // Padding leaves carry no input, so the permuted expectation is the
            // leaf average only when every leaf holds a real bit.
            if (tree.leaves() == args.n) {
                rows.push_back(checked(cmd, sp, "simulated_success", r.rate(), mean, tol));
            } else {
                rows.push_back(info(cmd, sp, "simulated_success", r.rate()));
            }
        } else {
            rows.push_back(checked(cmd, sp, "simulated_success", r.rate(), analytic[q], tol));
        }
    }
    return rows;
}

std::vector<Record> racsim::cmd_report(const ReportArgs &args) {
    std::vector<Record> rows;
    const std::string cmd = "report";
    const double sqrt2 = std::numbers::sqrt2;

    for (int n : {2, 3}) {
        EnumerationSummary s = enumerate_deterministic(n, args.workers);
        json p{{"n", n}};
        rows.push_back(checked(cmd, p, "classical_strategy_count", double(s.count), n == 2 ? 256 : 16384, 0));
        rows.push_back(checked(cmd, p, "classical_max_success", s.max(), 0.75, 0));
        rows.push_back(checked(cmd, p, "classical_min_success", s.min(), 0.25, 0));
        rows.push_back(checked(cmd, p, "classical_formula", optimal_classical_formula(n), s.max(), 0));
    }
    rows.push_back(checked(cmd, json{{"n", 4}}, "classical_formula", optimal_classical_formula(4), 11.0 / 16.0, 0));

    int mismatches = 0;
    for (int n = 1; n <= 30; n++) {
        mismatches += classical_bound(n) != classical_bound_closed(n);
    }
    rows.push_back(checked(cmd, json{{"n_max", 30}}, "bound_identity_mismatches", mismatches, 0, 0));
    for (int n : {2, 3, 4}) {
        rows.push_back(checked(cmd, json{{"n", n}}, "deterministic_max", double(deterministic_max(sign_matrix(n), args.workers)),
                               double(classical_bound(n)), 0));
    }

    for (int n : {2, 3}) {
        QuantumProtocolResult r = evaluate_protocol(default_bases(n));
        json p{{"n", n}};
        rows.push_back(checked(cmd, p, "quantum_success", r.success, n == 2 ? 0.85355339059 : 0.78867513459, 1e-9));
        rows.push_back(checked(cmd, p, "quantum_bell_value", r.bell.value, n == 2 ? 2.82842712475 : 6.92820323028, 1e-9));
        rows.push_back(checked(cmd, json{{"n", n}, {"trials", 1000}, {"seed", args.seed}}, "identity_residual_max",
                               worst_identity_residual(n, 1000, args.seed), 0, 1e-12));
        ViolationMargin m = violation_margin(n, r.bell.value, double(classical_bound(n)));
        rows.push_back(checked(cmd, p, "success_gap", r.success - optimal_classical_formula(n), m.delta_p, 1e-9));
        rows.push_back(checked(cmd, p, "beta_over_n2n", m.delta_p, n == 2 ? 0.1035534 : 0.0386751, 5e-8));

        SeesawOptions opt;
        opt.starts = 100;
        opt.seed = args.seed;
        opt.workers = args.workers;
        SeesawResult best = maximize_bell(n, opt);
        json sp{{"n", n}, {"starts", 100}, {"seed", args.seed}};
        const double cap = quantum_max(n);
        rows.push_back(checked(cmd, sp, "seesaw_best", best.best.value, cap, 1e-6));
        rows.push_back(checked(cmd, sp, "seesaw_excess_over_cap", std::max(0.0, best.best.value - cap), 0, 1e-9));
    }

    {
        json p{{"shots", args.mzi_shots}, {"seed", args.seed}};
        ProtocolEstimate e = estimate_protocol(singlet_state(), default_bases(2), args.mzi_shots, args.seed, args.workers);
        rows.push_back(checked(cmd, p, "mzi_success_estimate", e.p, 0.8535534, 0.002));
        rows.push_back(checked(cmd, p, "mzi_c2_estimate", e.c2, 2 * sqrt2, 0.01));
        ProtocolEstimate aligned = estimate_from_settings(singlet_state(), aligned_settings(), args.mzi_shots, args.seed,
                                                          args.workers);
        p["analyzers"] = "aligned z";
        rows.push_back(checked(cmd, p, "aligned_c2_estimate", aligned.c2, -2.0, 0.01));
        rows.push_back(checked(cmd, p, "aligned_success_estimate", aligned.p, 0.25, 0.002));
        rows.push_back(checked(cmd, p, "aligned_correlator_joint", aligned.correlators[0], -1.0, 0));
        rows.push_back(checked(cmd, p, "aligned_correlator_product_form", aligned.correlators_product_form[0], 0.0, 0.01));

        int mismatches_workers = 0;
        auto base = sample_events(singlet_state(), protocol_settings(default_bases(2)), 100000, args.seed, 1);
        for (int w : {2, 4}) {
            mismatches_workers +=
                sample_events(singlet_state(), protocol_settings(default_bases(2)), 100000, args.seed, w) != base;
        }
        rows.push_back(checked(cmd, json{{"seed", args.seed}, {"workers", "1,2,4"}}, "reproducibility_mismatches",
                               mismatches_workers, 0, 0));
    }

    rows.push_back(checked(cmd, json{{"k", 2}, {"j", 0}}, "pkj", pkj(2, 0), 0.75, 1e-15));
    rows.push_back(checked(cmd, json{{"k", 1}, {"j", 1}}, "pkj", pkj(1, 1), 0.5 * (1 + 1 / std::sqrt(6.0)), 1e-15));
    for (int n : {4, 6}) {
        ConcatTree tree = build_tree(n);
        auto analytic = analytic_per_bit(tree);
        KeyedRng rng(args.seed, 0xC0FFEEULL);
        std::vector<int> input;
        for (int q = 0; q < n; q++) {
            input.push_back(rng.bit());
        }
        SimulationOptions opt;
        opt.shots = args.concat_shots;
        opt.seed = args.seed;
        opt.workers = args.workers;
        for (int q = 0; q < n; q++) {
            json p{{"n", n}, {"bit", q + 1}, {"shots", args.concat_shots}, {"seed", args.seed}};
            rows.push_back(checked(cmd, p, "concat_simulated_success", simulate(tree, input, q, opt).rate(),
                                   analytic[q], 0.01));
        }
    }
    rows.push_back(checked(cmd, json{{"n", 4}}, "success_from_bell_at_quantum_max",
                           success_from_bell(BellValue{4, 16.0}), quantum_bound(4), 1e-15));
    rows.push_back(checked(cmd, json{{"n", 5}}, "padded_lower_bound", padded_lower_bound(5),
                           0.5 + 0.5 / std::sqrt(6.0), 1e-9));
    rows.push_back(checked(cmd, json{{"n", 7}}, "padded_lower_bound", padded_lower_bound(7),
                           0.5 + 0.5 / std::sqrt(8.0), 1e-9));
    return rows;
}
