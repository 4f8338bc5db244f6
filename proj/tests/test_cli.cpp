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

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "doctest.h"

#include "dyadiclab/cli.hpp"

using namespace dyadiclab;

namespace {

int run_args(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "dyadiclab");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

}  // namespace

TEST_CASE("function parsing") {
  const auto f = cli::parse_function("cos + 0.5cos3");
  CHECK(f(0.4) == doctest::Approx(std::cos(0.4) + 0.5 * std::cos(1.2)));
  const auto g = cli::parse_function("1.5-sin2+.25*cos");
  CHECK(g(1.1) == doctest::Approx(1.5 - std::sin(2.2) + 0.25 * std::cos(1.1)));
  CHECK(cli::parse_function("-cos")(0.0) == -1.0);
  CHECK_THROWS(cli::parse_function(""));
  CHECK_THROWS(cli::parse_function("cos tan"));
  CHECK_THROWS(cli::parse_function("cos0"));
}

TEST_CASE("exponent parsing") {
  CHECK(cli::parse_exponent("4/3") == doctest::Approx(4.0 / 3));
  CHECK(cli::parse_exponent("2") == 2.0);
  CHECK(cli::parse_exponent("1.5") == 1.5);
  CHECK_THROWS(cli::parse_exponent("0.5"));
  CHECK_THROWS(cli::parse_exponent("4/0"));
  CHECK_THROWS(cli::parse_exponent("x"));
  CHECK_THROWS(cli::parse_exponent("3/2a"));
}

TEST_CASE("exit codes") {
  std::string text;
  CHECK(run_args({"c0"}, &text) == 0);
  CHECK(text.find("PASS c0:") != std::string::npos);
  CHECK(run_args({"bogus"}) == 2);
  CHECK(run_args({"c0", "--format", "xml"}) == 2);
  CHECK(run_args({"norm-sandwich", "--p", "1/2"}) == 2);
  CHECK(run_args({"--version"}) == 0);
}

TEST_CASE("every command is registered") {
  for (const auto& name : cli::kCommands) {
    cli::ExperimentConfig config;
    config.command = name;
    config.depth = 4;
    config.paths = 200;
    config.N = {4};
    config.T = 1.0;
    config.restarts = 2;
    config.max_k = 2;
    config.max_bound = 2;
    config.resolution = name == "c0" ? 4096 : 0;
    const auto result = cli::execute(config);
    CHECK_MESSAGE(!result.summary.empty(), name);
    CHECK(result.summary.find('\n') == std::string::npos);
  }
  cli::ExperimentConfig bad;
  bad.command = "nope";
  CHECK_THROWS_AS(cli::execute(bad), std::invalid_argument);
}

TEST_CASE("json document carries version and config") {
  cli::ExperimentConfig config;
  config.command = "c0";
  const auto doc = nlohmann::json::parse(cli::render(config, cli::execute(config)));
  CHECK(doc["version"] == cli::kVersion);
  CHECK(doc["config"]["command"] == "c0");
  CHECK(doc["passed"] == true);
  config.format = "csv";
  const auto csv = cli::render(config, cli::execute(config));
  CHECK(csv.rfind(std::string("# ") + cli::kVersion, 0) == 0);
}

TEST_CASE("repeated runs are byte-identical") {
  const std::vector<std::string> args{"mc-convergence", "--N", "4,8", "--T", "1", "--paths", "400", "--seed", "3"};
  std::string a, b;
  run_args(args, &a);
  run_args(args, &b);
  CHECK(a == b);
}

TEST_CASE("worker count does not change results") {
  cli::ExperimentConfig config;
  config.command = "mc-convergence";
  config.N = {4, 8};
  config.T = 1.0;
  config.paths = 600;
  config.seed = 5;
  config.workers = 1;
  const auto one = cli::execute(config).result;
  config.workers = 3;
  CHECK(cli::execute(config).result == one);

  config.command = "norm-sandwich";
  config.depth = 4;
  config.restarts = 4;
  config.workers = 1;
  const auto serial = cli::execute(config).result;
  config.workers = 4;
  CHECK(cli::execute(config).result == serial);
}

TEST_CASE("workers from the environment") {
  setenv(cli::kWorkersEnv, "3", 1);
  CHECK(cli::default_workers() == 3);
  setenv(cli::kWorkersEnv, "zero", 1);
  CHECK(cli::default_workers() == 1);
  setenv(cli::kWorkersEnv, "-2", 1);
  CHECK(cli::default_workers() == 1);
  unsetenv(cli::kWorkersEnv);
  CHECK(cli::default_workers() == 1);
}
