// Copyright 2026 The bechain Authors
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


#include "bechain/report.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "json.hpp"

namespace bechain {

const std::vector<std::string> kErrorReportHeader = {"K", "m", "p", "c", "eta_max", "e_measured", "e_bound", "pass", "seed"};
const std::vector<std::string> kUncomputeReportHeader = {"eps_requested", "eps_measured", "delta",  "queries_VH",
                                                         "ancillae_peak", "ancillae_final", "pass", "seed"};
const std::vector<std::string> kBoostReportHeader = {"K",   "p",           "c", "eps", "alpha_before",
                                                     "k",   "alpha_after", "fidelity", "pass", "seed"};
const std::vector<std::string> kProbeReportHeader = {"K", "m", "restarts", "best_residual", "median_residual", "pass", "seed"};

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void Table::add(std::vector<Cell> row) {
    if (row.size() != header.size()) {
        throw Error("table: row width does not match header");
    }
    rows.push_back(std::move(row));
}

namespace {

std::string csv_cell(const Cell &c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(std::uint64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string &s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) {
                return s;
            }
            std::string out = "\"";
            for (char ch : s) {
                out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            }
            return out + "\"";
        }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::json json_cell(const Cell &c) {
    struct Visitor {
        nlohmann::json operator()(std::monostate) const { return nullptr; }
        nlohmann::json operator()(std::int64_t v) const { return v; }
        nlohmann::json operator()(std::uint64_t v) const { return v; }
        nlohmann::json operator()(double v) const {
            if (!std::isfinite(v)) {
                return format_double(v);
            }
            // Round-trip through the 12-digit text form so JSON and CSV agree.
            return std::strtod(format_double(v).c_str(), nullptr);
        }
        nlohmann::json operator()(bool v) const { return v; }
        nlohmann::json operator()(const std::string &s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

}  // namespace

void Table::write_csv(std::ostream &os) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        os << (i ? "," : "") << header[i];
    }
    os << "\n";
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << csv_cell(row[i]);
        }
        os << "\n";
    }
}

void Table::write_json(std::ostream &os) const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &row : rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[header[i]] = json_cell(row[i]);
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << "\n";
}

std::vector<Cell> error_report_row(const ErrorReport &r) {
    auto opt_int = [](const std::optional<int> &v) -> Cell {
        return v ? Cell(static_cast<std::int64_t>(*v)) : Cell(std::monostate{});
    };
    auto opt_double = [](const std::optional<double> &v) -> Cell { return v ? Cell(*v) : Cell(std::monostate{}); };
    return {static_cast<std::int64_t>(r.K), static_cast<std::int64_t>(r.m), opt_int(r.p), opt_double(r.c), r.eta_max,
            r.e_measured, opt_double(r.e_bound), r.pass(), r.seed};
}

std::vector<Cell> uncompute_report_row(const UncomputeReport &r, bool pass, std::uint64_t seed) {
    return {r.eps_requested, r.eps_measured, r.delta, static_cast<std::int64_t>(r.queries_VH),
            static_cast<std::int64_t>(r.ancillae_peak), static_cast<std::int64_t>(r.ancillae_final), pass, seed};
}

}  // namespace bechain
