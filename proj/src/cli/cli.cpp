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

#include "dyadiclab/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <regex>
#include <stdexcept>

#include "CLI11.hpp"

namespace dyadiclab::cli {

nlohmann::json ExperimentConfig::to_json() const {
  return {{"command", command}, {"depth", depth},       {"N", N},
          {"T", T},             {"p", p},               {"paths", paths},
          {"resolution", resolution}, {"seed", seed},   {"format", format},
          {"workers", workers}, {"f", f},               {"restarts", restarts},
          {"max_k", max_k},     {"max_bound", max_bound}, {"strict_steps", strict_steps}};
}

FourierSeries parse_function(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw std::invalid_argument("empty function");
  // sign, coefficient, optional '*', optional cos/sin with frequency.
  static const std::regex term(R"(([+-]?)(\d+\.?\d*|\.\d+)?\*?(?:(cos|sin)(\d*))?)");
  FourierSeries f;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::smatch m;
    const std::string rest = s.substr(pos);
    if (!std::regex_search(rest, m, term, std::regex_constants::match_continuous) ||
        m.length(0) == 0 || (!m[2].matched && !m[3].matched)) {
      throw std::invalid_argument("cannot parse function term at '" + rest + "'");
    }
    if (pos > 0 && !m[1].matched) throw std::invalid_argument("missing sign between terms");
    if (pos > 0 && m.length(1) == 0) throw std::invalid_argument("missing sign between terms");
    const double sign = m.str(1) == "-" ? -1.0 : 1.0;
    const double amplitude = sign * (m[2].matched ? std::stod(m.str(2)) : 1.0);
    if (m[3].matched) {
      const int n = m.length(4) ? std::stoi(m.str(4)) : 1;
      if (n < 1 || n > 4096) throw std::invalid_argument("frequency out of range");
      f += m.str(3) == "cos" ? FourierSeries::cosine(n, amplitude) : FourierSeries::sine(n, amplitude);
    } else {
      f += FourierSeries::constant(amplitude);
    }
    pos += static_cast<std::size_t>(m.length(0));
  }
  return f;
}

double parse_exponent(const std::string& text) {
  std::size_t used = 0;
  const auto slash = text.find('/');
  double value = 0.0;
  try {
    if (slash == std::string::npos) {
      value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
      const double a = std::stod(num, &used);
      if (used != num.size()) throw std::invalid_argument(text);
      const double b = std::stod(den, &used);
      if (used != den.size() || b == 0.0) throw std::invalid_argument(text);
      value = a / b;
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("cannot parse exponent '" + text + "'");
  }
  if (!(value >= 1.0)) throw std::invalid_argument("exponent must be at least 1");
  return value;
}

int default_workers() {
  const char* env = std::getenv(kWorkersEnv);
  if (!env) return 1;
  try {
    const int w = std::stoi(env);
    return w >= 1 ? w : 1;
  } catch (const std::logic_error&) {
    return 1;
  }
}

std::string render(const ExperimentConfig& config, const CommandResult& result) {
  if (config.format == "csv") {
    return "# " + std::string(kVersion) + " " + config.to_json().dump() + "\n" + result.csv;
  }
  const nlohmann::json doc = {{"version", kVersion},
                              {"config", config.to_json()},
                              {"passed", result.passed},
                              {"summary", result.summary},
                              {"result", result.result}};
  return doc.dump(2) + "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for the dyadic shift and the Hilbert transform", "dyadiclab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ExperimentConfig config;
  config.workers = default_workers();
  std::string n_list, p_list;
  for (const auto& name : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--depth", config.depth, "Dyadic depth");
    sub->add_option("--N", n_list, "Walk resolutions, comma separated");
    sub->add_option("--T", config.T, "Time horizon");
    sub->add_option("--p", p_list, "Exponents, comma separated; fractions like 4/3 allowed");
    sub->add_option("--paths", config.paths, "Monte-Carlo paths");
    sub->add_option("--resolution", config.resolution, "Quadrature resolution");
    sub->add_option("--seed", config.seed, "Random seed");
    sub->add_option("--out", config.out, "Output file (default stdout)");
    sub->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--workers", config.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--f", config.f, "Boundary function, e.g. cos+0.5cos3");
    sub->add_option("--restarts", config.restarts, "Optimizer restarts")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-k", config.max_k, "Longest modulation plan");
    sub->add_option("--max-bound", config.max_bound, "Largest spectral bound");
    sub->add_flag("--strict-steps", config.strict_steps,
                  "Reject walk configurations whose coarse step exceeds the boundary margin");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  config.command = app.get_subcommands().front()->get_name();

  CommandResult result;
  try {
    for (const auto& item : CLI::detail::split(n_list, ',')) {
      if (!item.empty()) config.N.push_back(std::stoi(item));
    }
    for (const auto& item : CLI::detail::split(p_list, ',')) {
      if (!item.empty()) config.p.push_back(parse_exponent(item));
    }
    result = execute(config);
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const std::string document = render(config, result);
  if (config.out.empty()) {
    out << document;
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << config.out << '\n';
      return 2;
    }
    file << document;
  }
  out << (result.passed ? "PASS " : "FAIL ") << config.command << ": " << result.summary << '\n';
  return result.passed ? 0 : 1;
}

}  // namespace dyadiclab::cli
