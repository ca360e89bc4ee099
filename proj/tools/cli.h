// Copyright 2026 The qelim Authors
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
#ifndef QELIM_TOOLS_CLI_H
#define QELIM_TOOLS_CLI_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qelim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    std::string command;
    /// Wire name, empty when absent.
    std::string scheme;
    double two_theta_deg = 45.0;
    std::size_t n = 2;
    double from = 0.0;
    double to = 90.0;
    std::size_t steps = 19;
    std::uint64_t shots = 1'000'000;
    std::uint64_t seed = 1;
    double tol = 1e-10;
    std::string out;
    /// "csv", "json", "table", or empty for the command default.
    std::string format;
    bool zero_plus = false;
};

/// Runs one invocation. args excludes the program name. seed_env is the value
/// of QELIM_SEED, if set; it only applies when --seed is absent.
int run_cli(
    const std::vector<std::string> &args,
    std::ostream &out,
    std::ostream &err,
    std::optional<std::string> seed_env = std::nullopt);

/// 17 significant digits, locale independent.
std::string format_double(double v, int precision = 17);

}  // namespace qelim::cli

#endif
