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

// racsim: random access code simulations from the command line.
//
//   racsim classical --n 3 --mode enumerate
//   racsim bounds --n-max 10
//   racsim quantum --n 3 [--maximize --seed 1]
//   racsim mzi --shots 1000000 --seed 42
//   racsim concat --n 6 --shots 200000 --seed 7 --query all
//   racsim report --all --seed 42
//
// Output is newline-delimited JSON (or CSV with --format csv). Exit status is
// 0 when every checked row passes, 1 on a failed check, 2 on a usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "racsim/commands.h"

using namespace racsim;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

int workers_from_env() {
    if (const char *env = std::getenv("RACSIM_WORKERS")) {
        try {
            return std::stoi(env);
        } catch (const std::exception &) {
            throw CLI::ValidationError("RACSIM_WORKERS", std::string("not an integer: ") + env);
        }
    }
    return 0;
}

std::vector<int> parse_bits(const std::string &s) {
    std::vector<int> bits;
    for (char c : s) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("input must be a string of 0 and 1 characters");
        }
        bits.push_back(c - '0');
    }
    return bits;
}

MeasurementBases load_bases(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open bases file " + path);
    }
    return read_bases(in, path);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Random access code protocols: classical bounds, quantum protocols, interferometer sampling"};
    app.require_subcommand(1);
    app.fallthrough();

    int workers = -1;
    std::string format = "ndjson";
    std::string output;
    app.add_option("--workers", workers, "OpenMP worker count (default: RACSIM_WORKERS or all cores)");
    app.add_option("--format", format, "ndjson or csv")->check(CLI::IsMember({"ndjson", "csv"}));
    app.add_option("--output", output, "write records to this file instead of stdout");

    ClassicalArgs classical;
    auto *c_cmd = app.add_subcommand("classical", "deterministic strategy enumeration and the optimal formula");
    c_cmd->add_option("--n", classical.n, "bit count")->required();
    c_cmd->add_option("--mode", classical.mode, "enumerate or formula")->check(CLI::IsMember({"enumerate", "formula"}));
    c_cmd->add_flag("--allow-n4", classical.allow_n4, "permit the 2^24-strategy n = 4 enumeration");
    c_cmd->add_flag("--per-strategy", classical.per_strategy, "emit {strategy-id, average, correlators} per strategy");

    int n_max = 10;
    auto *b_cmd = app.add_subcommand("bounds", "classical bound, quantum maximum and success table");
    b_cmd->add_option("--n-max", n_max, "largest n (<= 30)");

    QuantumArgs quantum;
    std::string q_bases;
    std::optional<std::uint64_t> q_seed;
    auto *q_cmd = app.add_subcommand("quantum", "2->1 and 3->1 quantum protocols");
    q_cmd->add_option("--n", quantum.n, "2 or 3")->required();
    q_cmd->add_option("--bases-file", q_bases, "JSON bases overriding the defaults");
    q_cmd->add_flag("--maximize", quantum.maximize, "run the multi-start seesaw maximization");
    q_cmd->add_option("--starts", quantum.seesaw.starts, "seesaw starts");
    q_cmd->add_option("--iterations", quantum.seesaw.iterations, "seesaw iterations per start");
    q_cmd->add_option("--seed", q_seed, "seed for the seesaw starts");

    MziArgs mzi;
    std::string m_settings, m_bases, m_events;
    auto *m_cmd = app.add_subcommand("mzi", "shot-level interferometer sampling and count estimators");
    m_cmd->add_option("--shots", mzi.shots, "shots per setting");
    m_cmd->add_option("--seed", mzi.seed, "sampling seed")->required();
    m_cmd->add_option("--settings-file", m_settings, "one JSON setting per line");
    m_cmd->add_option("--bases-file", m_bases, "n = 2 bases to realize instead of the defaults");
    m_cmd->add_option("--events", m_events, "write the per-shot event log here");
    m_cmd->add_option("--a", mzi.a, "BS1 transmission amplitude");
    m_cmd->add_option("--b", mzi.b, "BS1 reflection amplitude");
    m_cmd->add_option("--delta", mzi.delta, "PS1 phase");

    ConcatArgs concat;
    std::string k_query = "all";
    std::string k_input;
    std::optional<std::uint64_t> k_seed;
    std::string k_tree;
    auto *k_cmd = app.add_subcommand("concat", "concatenated n->1 codes");
    k_cmd->add_option("--n", concat.n, "input bits")->required();
    k_cmd->add_option("--shots", concat.shots, "shots per queried bit");
    k_cmd->add_option("--seed", k_seed, "sampling seed (required unless --engine analytic)");
    k_cmd->add_option("--query", k_query, "1-based bit index or 'all'");
    k_cmd->add_option("--engine", concat.engine, "analytic, born or mzi")
        ->check(CLI::IsMember({"analytic", "born", "mzi"}));
    k_cmd->add_option("--tree", k_tree, "nested arity list, e.g. [2,[3,.,.,.],[2,.,.]]");
    k_cmd->add_option("--input", k_input, "input bit string (default: drawn from the seed)");
    k_cmd->add_flag("--shared-permutation", concat.shared_permutation,
                    "assign bits to leaves by a seeded random permutation per shot");

    ReportArgs report;
    bool report_all = false;
    auto *r_cmd = app.add_subcommand("report", "reproduce the full table of headline numbers");
    r_cmd->add_flag("--all", report_all, "run every check")->required();
    r_cmd->add_option("--seed", report.seed, "seed for every sampled quantity")->required();
    r_cmd->add_option("--mzi-shots", report.mzi_shots, "shots per interferometer setting");
    r_cmd->add_option("--concat-shots", report.concat_shots, "shots per concatenated bit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    std::vector<Record> rows;
    std::vector<EventRecord> events;
    try {
        if (workers < 0) {
            workers = workers_from_env();
        }
        if (*c_cmd) {
            classical.workers = workers;
            rows = cmd_classical(classical);
        } else if (*b_cmd) {
            rows = cmd_bounds(n_max);
        } else if (*q_cmd) {
            if (!q_bases.empty()) {
                quantum.bases = load_bases(q_bases);
            }
            if (quantum.maximize) {
                if (!q_seed) {
                    throw std::invalid_argument("--maximize needs an explicit --seed");
                }
                quantum.seesaw.seed = *q_seed;
                quantum.seesaw.workers = workers;
            }
            rows = cmd_quantum(quantum);
        } else if (*m_cmd) {
            mzi.workers = workers;
            if (!m_settings.empty()) {
                std::ifstream in(m_settings);
                if (!in) {
                    throw std::invalid_argument("cannot open settings file " + m_settings);
                }
                mzi.settings = read_settings(in, m_settings);
            }
            if (!m_bases.empty()) {
                mzi.bases = load_bases(m_bases);
            }
            rows = cmd_mzi(mzi, m_events.empty() ? nullptr : &events);
        } else if (*k_cmd) {
            concat.workers = workers;
            concat.seed = k_seed;
            if (k_query != "all") {
                concat.query = std::stoi(k_query) - 1;
                if (concat.query < 0 || concat.query >= concat.n) {
                    throw std::invalid_argument("--query must be in [1, n] or 'all'");
                }
            }
            if (!k_tree.empty()) {
                concat.tree = k_tree;
            }
            if (!k_input.empty()) {
                concat.input = parse_bits(k_input);
            }
            rows = cmd_concat(concat);
        } else if (*r_cmd) {
            report.workers = workers;
            rows = cmd_report(report);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::ofstream file;
    if (!output.empty()) {
        file.open(output);
        if (!file) {
            std::cerr << "error: cannot write " << output << '\n';
            return kExitUsage;
        }
    }
    std::ostream &out = output.empty() ? std::cout : file;
    if (format == "csv") {
        write_csv(out, rows);
    } else {
        write_ndjson(out, rows);
    }
    if (!m_events.empty()) {
        std::ofstream ev(m_events);
        if (!ev) {
            std::cerr << "error: cannot write " << m_events << '\n';
            return kExitUsage;
        }
        write_events(ev, events);
    }
    return all_pass(rows) ? kExitPass : kExitCheckFailed;
}
