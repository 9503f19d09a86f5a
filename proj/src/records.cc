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

#include "racsim/records.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

using namespace racsim;
using nlohmann::json;

namespace {

BlochVector read_vector(const json &j, const std::string &what) {
    if (!j.is_array() || j.size() != 3) {
        throw std::invalid_argument(what + " must be an array of 3 numbers");
    }
    BlochVector v(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
    if (!is_unit(v, 1e-6)) {
        throw std::invalid_argument(what + " must be a unit vector");
    }
    // Accept file precision, then renormalize to the algebra tolerance.
    return v.normalized();
}

json vector_json(const BlochVector &v) {
    return json::array({v.x(), v.y(), v.z()});
}

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string optional_number(const std::optional<double> &v) {
    if (!v) {
        return "";
    }
    return json(*v).dump();
}

}  // namespace

json Record::to_json() const {
    json j;
    j["cmd"] = cmd;
    j["params"] = params;
    j["quantity"] = quantity;
    j["value"] = value;
    j["expected"] = expected ? json(*expected) : json(nullptr);
    j["tolerance"] = tolerance ? json(*tolerance) : json(nullptr);
    j["pass"] = pass ? json(*pass) : json(nullptr);
    return j;
}

Record racsim::checked(std::string cmd, json params, std::string quantity, double value, double expected,
                       double tolerance) {
    Record r;
    r.cmd = std::move(cmd);
    r.params = std::move(params);
    r.quantity = std::move(quantity);
    r.value = value;
    r.expected = expected;
    r.tolerance = tolerance;
    r.pass = std::abs(value - expected) <= tolerance;
    return r;
}

Record racsim::info(std::string cmd, json params, std::string quantity, json value) {
    Record r;
    r.cmd = std::move(cmd);
    r.params = std::move(params);
    r.quantity = std::move(quantity);
    r.value = std::move(value);
    return r;
}

bool racsim::all_pass(const std::vector<Record> &rows) {
    for (const auto &r : rows) {
        if (r.pass && !*r.pass) {
            return false;
        }
    }
    return true;
}

void racsim::write_ndjson(std::ostream &out, const std::vector<Record> &rows) {
    for (const auto &r : rows) {
        out << r.to_json().dump() << '\n';
    }
}

void racsim::write_csv(std::ostream &out, const std::vector<Record> &rows) {
    out << "cmd,params,quantity,value,expected,tolerance,pass\n";
    for (const auto &r : rows) {
        std::string value = r.value.is_string() ? r.value.get<std::string>() : r.value.dump();
        out << csv_escape(r.cmd) << ',' << csv_escape(r.params.dump()) << ',' << csv_escape(r.quantity) << ','
            << csv_escape(value) << ',' << optional_number(r.expected) << ',' << optional_number(r.tolerance)
            << ',' << (r.pass ? (*r.pass ? "true" : "false") : "") << '\n';
    }
}

ParseError::ParseError(const std::string &source, std::size_t line, const std::string &what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {
}

std::vector<Setting> racsim::read_settings(std::istream &in, const std::string &source) {
    std::vector<Setting> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        line++;
        auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos || text[first] == '#') {
            continue;
        }
        try {
            json j = json::parse(text);
            Setting s;
            s.i = j.at("i").get<int>() - 1;
            s.j = j.at("j").get<int>() - 1;
            if (s.i < 0 || s.j < 0) {
                throw std::invalid_argument("i and j are 1-based");
            }
            s.theta = j.at("theta").get<double>();
            s.phi = j.at("phi").get<double>();
            s.spin_axis = read_vector(j.at("spin_axis"), "spin_axis");
            out.push_back(s);
        } catch (const std::exception &e) {
            throw ParseError(source, line, e.what());
        }
    }
    if (out.empty()) {
        throw ParseError(source, line, "no settings");
    }
    return out;
}

void racsim::write_settings(std::ostream &out, const std::vector<Setting> &settings) {
    for (const auto &s : settings) {
        json j;
        j["i"] = s.i + 1;
        j["j"] = s.j + 1;
        j["theta"] = s.theta;
        j["phi"] = s.phi;
        j["spin_axis"] = vector_json(s.spin_axis);
        out << j.dump() << '\n';
    }
}

MeasurementBases racsim::read_bases(std::istream &in, const std::string &source) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        std::size_t line = 1;
        for (std::size_t k = 0; k < e.byte && k < text.size(); k++) {
            line += text[k] == '\n';
        }
        throw ParseError(source, line, e.what());
    }
    try {
        MeasurementBases b;
        b.n = j.at("n").get<int>();
        for (const auto &v : j.at("alice")) {
            b.alice.push_back(read_vector(v, "alice direction"));
        }
        for (const auto &v : j.at("bob")) {
            b.bob.push_back(read_vector(v, "bob direction"));
        }
        b.validate();
        return b;
    } catch (const std::exception &e) {
        throw ParseError(source, 1, e.what());
    }
}

json racsim::bases_to_json(const MeasurementBases &b) {
    json j;
    j["n"] = b.n;
    j["alice"] = json::array();
    j["bob"] = json::array();
    for (const auto &v : b.alice) {
        j["alice"].push_back(vector_json(v));
    }
    for (const auto &v : b.bob) {
        j["bob"].push_back(vector_json(v));
    }
    return j;
}

json racsim::counts_to_json(const DetectionCounts &c) {
    return json{{"i", c.i + 1},
                {"j", c.j + 1},
                {"N", c.n_total()},
                {"N_prime", c.n_plus},
                {"N_double_prime", c.n_minus},
                {"M", c.m_total()},
                {"M_prime", c.m_plus},
                {"M_double_prime", c.m_minus},
                {"shots", c.shots()}};
}

void racsim::write_events(std::ostream &out, const std::vector<EventRecord> &events) {
    for (const auto &e : events) {
        out << "{\"setting\":" << e.setting << ",\"shot\":" << e.shot_index << ",\"path\":" << int(e.path)
            << ",\"spin\":" << int(e.spin) << "}\n";
    }
}
