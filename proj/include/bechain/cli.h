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


#ifndef BECHAIN_CLI_H
#define BECHAIN_CLI_H

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace bechain {

/// Invalid flag values or combinations.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct RunConfig {
    std::string subcommand;
    std::uint64_t seed = 1;
    std::string out_path;
    OutputFormat format = OutputFormat::csv;
    std::vector<int> K;
    std::vector<int> p;
    double c = 0.5;
    double delta = 0.25;
    std::vector<double> eps;
    int n = 1;
    int a = 1;
    int m = 1;
    int trials = 1;
    int restarts = 20;
    std::string config_path;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedRows = 1;
inline constexpr int kExitUsage = 2;

const std::vector<std::string> &subcommands();

/// Accepts "8,16,32", "2..8" and mixtures such as "2..4,8".
std::vector<int> parse_int_list(const std::string &text);
std::vector<double> parse_double_list(const std::string &text);

/// Fills per-subcommand defaults for empty lists and checks ranges.
RunConfig resolve_defaults(RunConfig config);

/// Number of worker threads: BECHAIN_THREADS if set, else the hardware count.
unsigned worker_count();

/// Runs one experiment. Data rows go to config.out_path (or `out` when it is
/// empty); a summary goes to `out`. Returns 0 when every row passes, 1 when any
/// row fails and 2 on usage errors.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

}  // namespace bechain

#endif
