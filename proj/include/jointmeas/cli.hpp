// Copyright 2026 The jointmeas Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jointmeas {

/// Runs the command-line interface. `args` excludes the program name.
/// Results go to `out` unless redirected by --out; diagnostics go to
/// `err`. Returns 0 on success, 1 on a domain or constraint violation,
/// 2 on malformed input or I/O failure.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

/// main()-style entry point writing to stdout/stderr.
int run_cli(int argc, char** argv);

} // namespace jointmeas
