// Copyright 2026 The qpd-optics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// `qpd` command-line front end: verify, play, sweep, landscape.
//
// Exit codes: 0 success, 1 a verification check failed, 2 invalid arguments.

#ifndef QPD_TOOLS_CLI_HPP_
#define QPD_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace qpd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace qpd::cli

#endif  // QPD_TOOLS_CLI_HPP_
