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

#ifndef RACSIM_COMMANDS_H
#define RACSIM_COMMANDS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "racsim/concat.h"
#include "racsim/mzi.h"
#include "racsim/qrac.h"
#include "racsim/records.h"

namespace racsim {

// Report builders behind the CLI subcommands. They only compute records;
// argument parsing and file output live in the tool.

struct ClassicalArgs {
    int n = 2;
    std::string mode = "enumerate";  // enumerate | formula
    bool allow_n4 = false;
    bool per_strategy = false;  // emit one record per strategy
    int workers = 0;
};
std::vector<Record> cmd_classical(const ClassicalArgs &args);

std::vector<Record> cmd_bounds(int n_max);

struct QuantumArgs {
    int n = 2;
    std::optional<MeasurementBases> bases;
    bool maximize = false;
    SeesawOptions seesaw;
};
std::vector<Record> cmd_quantum(const QuantumArgs &args);

struct MziArgs {
    std::uint64_t shots = 1000000;
    std::uint64_t seed = 0;
    int workers = 0;
    double a = 0.7071067811865476;
    double b = 0.7071067811865476;
    double delta = 3.141592653589793;
    // Defaults to the protocol settings of the default n = 2 bases.
    std::optional<std::vector<Setting>> settings;
    std::optional<MeasurementBases> bases;
};
std::vector<Record> cmd_mzi(const MziArgs &args, std::vector<EventRecord> *events = nullptr);

struct ConcatArgs {
    int n = 4;
    std::uint64_t shots = 200000;
    std::optional<std::uint64_t> seed;
    int query = -1;  // -1 for every real bit
    std::string engine = "born";  // analytic | born | mzi
    std::optional<std::string> tree;
    std::optional<std::vector<int>> input;
    bool shared_permutation = false;
    int workers = 0;
};
std::vector<Record> cmd_concat(const ConcatArgs &args);

struct ReportArgs {
    std::uint64_t seed = 0;
    int workers = 0;
    std::uint64_t mzi_shots = 1000000;
    std::uint64_t concat_shots = 200000;
};
// Every headline number with its expected value and tolerance.
std::vector<Record> cmd_report(const ReportArgs &args);

}  // namespace racsim

#endif
