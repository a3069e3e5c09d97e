// Copyright 2026 The qnksim Authors
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


#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace qnk::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailure = 1,
    kExitConfigError = 2,
    kExitResourceLimit = 3,
};

struct Interval {
    double low = 0;
    double high = 0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

/// Parses "a..b", "a,b,c" or "a" into a list of sizes. Throws ConfigError.
std::vector<std::size_t> parse_size_list(const std::string& text);

/// Entry point of the qnksim tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qnk::cli
