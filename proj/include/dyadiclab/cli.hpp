/*
 * Copyright 2026 The dyadiclab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "dyadiclab/fourier.hpp"

namespace dyadiclab::cli {

inline constexpr const char* kVersion = "dyadiclab-0.1.0";

/// Environment variable holding the default worker count.
inline constexpr const char* kWorkersEnv = "DYADICLAB_WORKERS";

inline const std::vector<std::string> kCommands = {
    "haar",           "shift-check",      "walk-moments",
    "mc-convergence", "c0",               "projection-lemma",
    "modulation-check", "average-kernel", "norm-sandwich"};

/// Flags of every command; each command reads the ones it needs.
struct ExperimentConfig {
  std::string command;
  int depth = 10;
  std::vector<int> N;
  double T = 8.0;
  std::vector<double> p;
  std::int64_t paths = 10000;
  int resolution = 0;  // 0 selects the command default
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  int workers = 1;
  std::string f = "cos";
  int restarts = 32;
  int max_k = 3;
  int max_bound = 4;
  bool strict_steps = false;

  nlohmann::json to_json() const;
};

struct CommandResult {
  bool passed = false;
  std::string summary;  // one line, no trailing newline
  nlohmann::json result;
  std::string csv;      // table body with its header row
};

/// Sum of terms such as "cos", "0.5cos3", "-sin2", "1.5" (a constant).
FourierSeries parse_function(const std::string& text);
/// "2", "4/3", "1.5".
double parse_exponent(const std::string& text);

/// Value of kWorkersEnv, or 1 when unset or invalid.
int default_workers();

/// Runs one command. Throws std::invalid_argument on an invalid config.
CommandResult execute(const ExperimentConfig& config);

/// Document written to --out (or stdout): the config and version token, then the result.
std::string render(const ExperimentConfig& config, const CommandResult& result);

/// Full command line handling. Exit status 0 on PASS, 1 on FAIL, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dyadiclab::cli
