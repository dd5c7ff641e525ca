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


#ifndef BECHAIN_REPORT_H
#define BECHAIN_REPORT_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "bechain/mcm.h"
#include "bechain/uncompute.h"

namespace bechain {

using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double, bool, std::string>;

/// Rows of named cells, written as CSV (header row) or a JSON array of objects.
/// Floating-point cells are printed with 12 significant digits.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
    void write_csv(std::ostream &os) const;
    void write_json(std::ostream &os) const;
};

std::string format_double(double v);

extern const std::vector<std::string> kErrorReportHeader;
extern const std::vector<std::string> kUncomputeReportHeader;
extern const std::vector<std::string> kBoostReportHeader;
extern const std::vector<std::string> kProbeReportHeader;

std::vector<Cell> error_report_row(const ErrorReport &r);
std::vector<Cell> uncompute_report_row(const UncomputeReport &r, bool pass, std::uint64_t seed);

}  // namespace bechain

#endif
