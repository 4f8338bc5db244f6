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

// Acceptance runner: one PASS/FAIL line per criterion. With an argument k it
// runs criterion k only; without arguments it runs all ten.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dyadiclab/cli.hpp"
#include "dyadiclab/hilbert.hpp"
#include "dyadiclab/lowerbound.hpp"
#include "dyadiclab/normlab.hpp"
#include "dyadiclab/stochastic.hpp"

using namespace dyadiclab;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string num(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

cli::CommandResult run_command(const std::string& command, const std::function<void(cli::ExperimentConfig&)>& tweak = {}) {
  cli::ExperimentConfig c;
  c.command = command;
  if (tweak) tweak(c);
  return cli::execute(c);
}

Outcome constant_c0() {
  const auto r = run_command("c0", [](auto& c) { c.resolution = 1 << 16; });
  const double series = r.result["c0_series"], quad = r.result["c0_quadrature"];
  const double recip = r.result["c0_reciprocal"];
  const bool ok = std::abs(series - 0.742454) <= 1e-6 && std::abs(quad - 0.742454) <= 1e-6 &&
                  std::abs(recip - 1.34689) <= 1e-5;
  return {ok && r.passed, "series " + num(series, 12) + ", quadrature " + num(quad, 12) +
                              ", reciprocal " + num(recip, 8)};
}

Outcome projection() {
  const double c0 = c0_constant();
  const std::array<double, 4> plus{-c0, -c0, c0, c0};
  const std::array<double, 4> minus{c0, -c0, -c0, c0};
  double worst = 0.0;
  for (Side s : {Side::kPlus, Side::kMinus}) {
    const auto arcs = hilbert_phi_arc_averages(s, 1 << 16);
    const auto& want = s == Side::kPlus ? plus : minus;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(arcs.values[i] - want[i]));
  }
  const auto r = run_command("projection-lemma", [](auto& c) { c.resolution = 1 << 16; });
  return {worst <= 1e-4 && r.passed, "max arc error " + num(worst, 3) + "; " + r.summary};
}

Outcome shift_algebra() {
  bool ok = true;
  for (int depth = 2; depth <= 10; ++depth) {
    ok = run_command("shift-check", [&](auto& c) { c.depth = depth; }).passed && ok;
  }
  return {ok, "depths 2..10: antisymmetry, square, spectrum within 1e-10; rotation exact"};
}

Outcome moments() {
  const auto r = run_command("walk-moments", [](auto& c) { c.N = {2, 4, 8}; });
  bool mixed_zero = true;
  for (const auto& row : r.result) mixed_zero = mixed_zero && row["mixed"].get<double>() == 0.0;
  return {r.passed && mixed_zero, "N = 2, 4, 8, both priors; " + r.summary};
}

Outcome convergence() {
  const auto r = run_command("mc-convergence", [](auto& c) {
    c.f = "cos";
    c.p = {2.0};
    c.N = {8, 16, 32};
    c.T = 8.0;
    c.paths = 100000;
    c.seed = 7;
  });
  std::string biases;
  for (const auto& row : r.result["rows"]) {
    biases += (biases.empty() ? "" : ", ") + std::string("N=") + std::to_string(row["N"].get<int>()) + " " +
              num(row["bias"].get<double>() / row["reference"].get<double>() * 100, 3) + "%";
  }
  return {r.passed, "relative bias " + biases + "; non-increasing " +
                        (r.result["non_increasing"].get<bool>() ? "yes" : "no") + ", within 3% at N=32 " +
                        (r.result["final_within_tolerance"].get<bool>() ? "yes" : "no") +
                        ", identity defect " + num(r.result["max_identity_defect"].get<double>(), 3)};
}

Outcome transform_inequality() {
  struct Case {
    std::string name;
    FourierSeries f;
    std::int64_t paths;
  };
  const std::vector<Case> cases = {{"cos", FourierSeries::cosine(1), 100000},
                                   {"cos+0.5cos3", FourierSeries::cosine(1) + FourierSeries::cosine(3, 0.5), 50000}};
  const double bounds[] = {norm_p2_exact(ShiftKind::shift(), 10), hp_constant(4.0) / c0_constant()};
  const std::vector<double> exps{2.0, 4.0};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    McOptions o;
    o.seed = 11;
    o.paths = c.paths;
    const auto e = simulate_ensemble(c.f, SimConfig::make(16, 8.0, true), exps, o);
    for (std::size_t i = 0; i < 2; ++i) {
      const auto r = shift_norm_inequality_check(e, exps[i], bounds[i]);
      ok = ok && r.holds;
      detail += (detail.empty() ? "" : "; ") + c.name + " p=" + num(exps[i]) + ": " + num(r.mg.value, 5) +
                " vs " + num(bounds[i], 5) + "*" + num(r.mf.value, 5);
    }
  }
  return {ok, detail};
}

Outcome kernel_averaging() {
  const auto r = run_command("average-kernel");
  return {r.passed, r.summary + ", matched defect " +
                        num(r.result["matched_translation_defect"].get<double>(), 3) + ", antisymmetry " +
                        num(r.result["antisymmetry_defect"].get<double>(), 3)};
}

Outcome modulation() {
  const auto r = run_command("modulation-check", [](auto& c) {
    c.max_k = 3;
    c.max_bound = 4;
  });
  return {r.passed, r.summary};
}

Outcome sandwich() {
  const auto r = run_command("norm-sandwich", [](auto& c) {
    c.depth = 10;
    c.p = {4.0 / 3.0, 2.0, 4.0};
  });
  return {r.passed, r.summary + ", lb(s_2) defect " + num(r.result["p2_defect"].get<double>(), 3)};
}

Outcome infrastructure() {
  std::string detail;
  bool ok = true;
  // Byte-identical documents for repeated seeded runs.
  for (const std::string& command : {std::string("mc-convergence"), std::string("haar"), std::string("norm-sandwich")}) {
    cli::ExperimentConfig c;
    c.command = command;
    c.N = {4, 8};
    c.T = 1.0;
    c.paths = 2000;
    c.depth = 5;
    c.seed = 3;
    c.restarts = 4;
    for (const std::string& format : {std::string("json"), std::string("csv")}) {
      c.format = format;
      const bool same = cli::render(c, cli::execute(c)) == cli::render(c, cli::execute(c));
      ok = ok && same;
      if (!same) detail += command + "/" + format + " differs; ";
    }
  }
  // Monte-Carlo aggregates under different worker counts.
  const std::vector<double> exps{2.0, 4.0};
  const auto f = FourierSeries::cosine(1) + FourierSeries::cosine(3, 0.5);
  for (bool fast : {true, false}) {
    McOptions o;
    o.seed = 5;
    o.paths = 3000;
    o.fast_kernel = fast;
    const auto cfg = SimConfig::make(8, 2.0, true);
    const auto base = simulate_ensemble(fast ? FourierSeries::cosine(1) : f, cfg, exps, o);
    for (int w : {2, 4}) {
      o.workers = w;
      const auto e = simulate_ensemble(fast ? FourierSeries::cosine(1) : f, cfg, exps, o);
      bool same = e.unstopped == base.unstopped && e.outside_disc == base.outside_disc &&
                  e.max_identity_defect == base.max_identity_defect &&
                  e.terminal_mf.mean == base.terminal_mf.mean && e.terminal_mg.mean == base.terminal_mg.mean &&
                  e.covariation.mean == base.covariation.mean &&
                  e.covariation.standard_error == base.covariation.standard_error;
      for (std::size_t i = 0; i < exps.size(); ++i) {
        same = same && e.mf[i].value == base.mf[i].value && e.mg[i].value == base.mg[i].value &&
               e.mf[i].standard_error == base.mf[i].standard_error &&
               e.mg[i].standard_error == base.mg[i].standard_error;
      }
      ok = ok && same;
      if (!same) detail += "ensemble differs at " + std::to_string(w) + " workers; ";
    }
  }
  return {ok, detail.empty() ? "repeated runs byte-identical; aggregates equal at 1, 2, 4 workers" : detail};
}

struct Criterion {
  const char* name;
  double budget_seconds;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"constant c0", 1, constant_c0},
    {"projection lemma", 10, projection},
    {"exact shift algebra", 5, shift_algebra},
    {"discrete moments", 5, moments},
    {"Monte-Carlo convergence", 120, convergence},
    {"martingale-transform inequality", 180, transform_inequality},
    {"kernel averaging", 30, kernel_averaging},
    {"modulation", 10, modulation},
    {"norm sandwich", 300, sandwich},
    {"infrastructure", 600, infrastructure},
};

bool run_one(int k) {
  const Criterion& c = kCriteria[k - 1];
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = seconds <= c.budget_seconds;
  const bool passed = o.passed && in_time;
  std::printf("criterion %d: %s %s: %s (%.2f s of %.0f s)%s\n", k, passed ? "PASS" : "FAIL", c.name,
              o.detail.c_str(), seconds, c.budget_seconds, in_time ? "" : " over budget");
  std::fflush(stdout);
  return passed;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  if (argc > 1) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > 10) {
      std::fprintf(stderr, "usage: acceptance [1-10]\n");
      return 2;
    }
    which.push_back(k);
  } else {
    for (int k = 1; k <= 10; ++k) which.push_back(k);
  }
  bool all = true;
  for (int k : which) all = run_one(k) && all;
  return all ? 0 : 1;
}
