// Copyright 2026 The teles Authors. All Rights Reserved.
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


#ifndef TELES_CLI_H_
#define TELES_CLI_H_

#include <ostream>

namespace teles::cli {

// Runs one subcommand (synth, score, train, predict, grid, eval, acquire,
// decode). Values come from flags first, then from the JSON object passed
// with --config (keys are flag names without the leading dashes), then from
// the built-in defaults. Setting TELES_VERBOSE=1 adds progress lines on `err`.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace teles::cli

#endif  // TELES_CLI_H_
