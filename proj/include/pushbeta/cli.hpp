#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The pushbeta Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

// Command-line front end. Subcommands mirror the stat.extend function names
// (dpushbeta, ppushbeta, ...) as aliases.

#include <iosfwd>
#include <string>
#include <vector>

namespace pushbeta::cli {

/// Exit codes.
inline constexpr int kExitOk          = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage       = 2;

/// Parses arguments (including the program name) and runs one subcommand.
int run(int argc, char const *const *argv, std::istream &in, std::ostream &out, std::ostream &err);

/// Convenience overload; args excludes the program name.
int run(std::vector<std::string> const &args, std::istream &in, std::ostream &out,
        std::ostream &err);

/// Formats a number with 10 significant digits; non-finite values print as
/// inf, -inf or nan.
std::string format_number(double v);

}  // namespace pushbeta::cli
