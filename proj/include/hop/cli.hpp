// Copyright 2026 The hop Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOP_CLI_HPP_
#define HOP_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace hop {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitStuck = 2;
inline constexpr int kExitFuel = 3;
inline constexpr int kExitIo = 64;

// Entry point of the `hop` tool; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hop

#endif  // HOP_CLI_HPP_
