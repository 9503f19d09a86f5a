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

#ifndef RACSIM_RECORDS_H
#define RACSIM_RECORDS_H

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "racsim/concat.h"
#include "racsim/mzi.h"
#include "racsim/qrac.h"

namespace racsim {

// One result line. `pass` is present only when the row is checked against an
// expected value: pass <=> |value - expected| <= tolerance.
struct Record {
    std::string cmd;
    nlohmann::json params = nlohmann::json::object();
    std::string quantity;
    nlohmann::json value;
    std::optional<double> expected;
    std::optional<double> tolerance;
    std::optional<bool> pass;

    nlohmann::json to_json() const;
};

// Builds a checked row and sets `pass`.
Record checked(std::string cmd, nlohmann::json params, std::string quantity, double value, double expected,
               double tolerance);
Record info(std::string cmd, nlohmann::json params, std::string quantity, nlohmann::json value);

bool all_pass(const std::vector<Record> &rows);

// Newline-delimited JSON, one record per line.
void write_ndjson(std::ostream &out, const std::vector<Record> &rows);
// Same columns as the JSON records; params is embedded as a JSON string.
void write_csv(std::ostream &out, const std::vector<Record> &rows);

class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string &source, std::size_t line, const std::string &what);
    std::size_t line() const { return line_; }

   private:
    std::size_t line_;
};

// One JSON object per line: {"i":1,"j":1,"theta":0.0,"phi":0.0,"spin_axis":[0,0,1]}.
// i and j are 1-based. Blank lines and lines starting with '#' are skipped.
std::vector<Setting> read_settings(std::istream &in, const std::string &source = "settings");
void write_settings(std::ostream &out, const std::vector<Setting> &settings);

// {"n":2,"alice":[[x,y,z],...],"bob":[[x,y,z],...]}
MeasurementBases read_bases(std::istream &in, const std::string &source = "bases");
nlohmann::json bases_to_json(const MeasurementBases &b);

// The six detector tallies N, N', N'', M, M', M'' plus shots.
nlohmann::json counts_to_json(const DetectionCounts &c);
void write_events(std::ostream &out, const std::vector<EventRecord> &events);

}  // namespace racsim

#endif
