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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

#include "dyadiclab/averaging.hpp"
#include "dyadiclab/cli.hpp"
#include "dyadiclab/dyadic.hpp"
#include "dyadiclab/hilbert.hpp"
#include "dyadiclab/lowerbound.hpp"
#include "dyadiclab/normlab.hpp"
#include "dyadiclab/operators.hpp"
#include "dyadiclab/stochastic.hpp"
#include "dyadiclab/walk.hpp"

namespace dyadiclab::cli {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

int resolution_or(const ExperimentConfig& c, int fallback) {
  return c.resolution > 0 ? c.resolution : fallback;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::string side_name(Side s) { return s == Side::kPlus ? "+" : "-"; }

// Rows of (check, value, tolerance, passed).
struct CheckTable {
  json rows = json::array();
  std::string csv = "check,value,tolerance,passed\n";
  bool passed = true;

  void add(const std::string& name, double value, double tolerance) {
    const bool ok = std::abs(value) <= tolerance;
    passed = passed && ok;
    rows.push_back({{"check", name}, {"value", value}, {"tolerance", tolerance}, {"passed", ok}});
    csv += name + "," + fmt(value) + "," + fmt(tolerance) + "," + (ok ? "1" : "0") + "\n";
  }
};

CommandResult cmd_haar(const ExperimentConfig& c) {
  if (c.depth < 1 || c.depth > 20) throw std::invalid_argument("haar needs depth in [1, 20]");
  const FourierSeries f = parse_function(c.f);
  const std::vector<double> samples =
      average_per_atom([&](double x) { return f(2 * kPi * x); }, c.depth);
  const HaarExpansion e = analyze(samples);
  const std::vector<double> back = synthesize_grid(e);
  double synthesis_error = 0.0, energy = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    synthesis_error = std::max(synthesis_error, std::abs(back[i] - samples[i]));
    energy += samples[i] * samples[i];
  }
  energy /= static_cast<double>(samples.size());
  const double parseval_error = std::abs(energy - e.squared_l2_norm());

  CommandResult r;
  r.passed = synthesis_error <= 1e-12 && parseval_error <= 1e-12;
  r.summary = "depth " + std::to_string(c.depth) + ", " + std::to_string(e.coefficients().size()) +
              " coefficients, synthesis error " + fmt(synthesis_error);
  r.result = {{"expansion", to_json(e)},
              {"synthesis_error", synthesis_error},
              {"parseval_error", parseval_error}};
  r.csv = "kind,level,index,value\nmean,0,0," + fmt(e.mean()) + "\n";
  for (const auto& [interval, v] : e.coefficients()) {
    r.csv += "coefficient," + std::to_string(interval.level) + "," +
             std::to_string(interval.index) + "," + fmt(v) + "\n";
  }
  return r;
}

CommandResult cmd_shift_check(const ExperimentConfig& c) {
  if (c.depth < 2 || c.depth > 12) throw std::invalid_argument("shift-check needs depth in [2, 12]");
  const Eigen::MatrixXd m = as_matrix(ShiftKind::shift(), c.depth).entries;
  const Eigen::Index n = m.rows();
  const double antisymmetry = (m + m.transpose()).cwiseAbs().maxCoeff();
  // S₀² = −I on the span of the non-root coefficients, 0 on the mean and root.
  Eigen::MatrixXd expected = -Eigen::MatrixXd::Identity(n, n);
  expected(0, 0) = expected(1, 1) = 0.0;
  const double square = (m * m - expected).cwiseAbs().maxCoeff();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  double spectrum = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()(i);
    spectrum = std::max(spectrum, std::min(std::abs(s), std::abs(s - 1.0)));
  }
  const RotationReport rotation = s0_rotation_check(c.depth);

  CheckTable t;
  t.add("antisymmetry", antisymmetry, 1e-10);
  t.add("square_is_minus_identity", square, 1e-10);
  t.add("singular_values_in_0_1", spectrum, 1e-10);
  t.add("rotation_exact", rotation.rotation_exact ? 0.0 : 1.0, 0.0);
  t.add("antiinvolution_on_increments", rotation.antiinvolution_exact ? 0.0 : 1.0, 0.0);

  CommandResult r;
  r.passed = t.passed;
  r.summary = "depth " + std::to_string(c.depth) + ", " + std::to_string(rotation.checked_steps) +
              " walk steps";
  r.result = {{"checks", t.rows}, {"dimension", n}, {"rotation_steps", rotation.checked_steps}};
  r.csv = t.csv;
  return r;
}

CommandResult cmd_walk_moments(const ExperimentConfig& c) {
  const std::vector<int> ns = c.N.empty() ? std::vector<int>{2, 4, 8} : c.N;
  CommandResult r;
  r.passed = true;
  r.result = json::array();
  r.csv =
      "N,prior,mean_horizontal,mean_vertical,second_horizontal,second_vertical,mixed,"
      "expected_horizontal,expected_vertical,fourth_horizontal,fourth_vertical,exact\n";
  for (int N : ns) {
    for (int prior : {1, -1}) {
      const MomentTable m = conditional_moments_exact(N, prior);
      const bool exact = m.mean_horizontal == 0.0 && m.mean_vertical == 0.0 &&
                         m.second_horizontal == m.expected_second_horizontal() &&
                         m.second_vertical == m.expected_second_vertical() && m.mixed == 0.0;
      r.passed = r.passed && exact;
      r.result.push_back({{"N", N},
                          {"prior", prior},
                          {"mean_horizontal", m.mean_horizontal},
                          {"mean_vertical", m.mean_vertical},
                          {"second_horizontal", m.second_horizontal},
                          {"second_vertical", m.second_vertical},
                          {"mixed", m.mixed},
                          {"expected_horizontal", m.expected_second_horizontal()},
                          {"expected_vertical", m.expected_second_vertical()},
                          {"fourth_horizontal", m.fourth_horizontal},
                          {"fourth_vertical", m.fourth_vertical},
                          {"exact", exact}});
      r.csv += std::to_string(N) + "," + std::to_string(prior) + "," + fmt(m.mean_horizontal) +
               "," + fmt(m.mean_vertical) + "," + fmt(m.second_horizontal) + "," +
               fmt(m.second_vertical) + "," + fmt(m.mixed) + "," +
               fmt(m.expected_second_horizontal()) + "," + fmt(m.expected_second_vertical()) +
               "," + fmt(m.fourth_horizontal) + "," + fmt(m.fourth_vertical) + "," +
               (exact ? "1" : "0") + "\n";
    }
  }
  r.summary = std::to_string(ns.size()) + " resolutions, second moments in units of delta";
  return r;
}

CommandResult cmd_mc_convergence(const ExperimentConfig& c) {
  const FourierSeries f = parse_function(c.f);
  const double p = c.p.empty() ? 2.0 : c.p.front();
  const std::vector<int> ns = c.N.empty() ? std::vector<int>{8, 16, 32} : c.N;
  McOptions options;
  options.seed = c.seed;
  options.paths = c.paths;
  options.workers = c.workers;
  const ConvergenceStudy study = convergence_study(f, p, ns, c.T, options, !c.strict_steps);
  double defect = 0.0;
  json rows = json::array();
  for (const auto& row : study.rows) {
    defect = std::max(defect, row.max_identity_defect);
    rows.push_back({{"N", row.N},
                    {"T", row.T},
                    {"paths", row.paths},
                    {"estimate", row.estimate},
                    {"reference", row.reference},
                    {"bias", row.bias},
                    {"stderr", row.standard_error},
                    {"unstopped_fraction", row.unstopped_fraction},
                    {"wide_steps", row.wide_steps},
                    {"outside_disc", row.outside_disc},
                    {"max_identity_defect", row.max_identity_defect},
                    {"kernel", row.kernel}});
  }
  CommandResult r;
  r.passed = study.non_increasing && study.final_within_tolerance && defect <= 1e-12;
  const auto& last = study.rows.back();
  r.summary = "bias at N=" + std::to_string(last.N) + " is " + fmt(last.bias / last.reference * 100) +
              "% (stderr " + fmt(last.standard_error) + ")";
  r.result = {{"rows", rows},
              {"p", p},
              {"non_increasing", study.non_increasing},
              {"final_within_tolerance", study.final_within_tolerance},
              {"relative_tolerance", study.relative_tolerance},
              {"max_identity_defect", defect}};
  std::ostringstream csv;
  write_csv(csv, study);
  r.csv = csv.str();
  return r;
}

CommandResult cmd_c0(const ExperimentConfig& c) {
  const int resolution = resolution_or(c, 1 << 16);
  const double series = c0_constant();
  const double quadrature = c0_via_quadrature(resolution);
  CheckTable t;
  t.add("series_minus_0.742454", series - 0.742454, 1e-6);
  t.add("quadrature_minus_0.742454", quadrature - 0.742454, 1e-6);
  t.add("reciprocal_minus_1.34689", 1.0 / series - 1.34689, 1e-5);
  t.add("series_minus_quadrature", series - quadrature, 1e-6);
  CommandResult r;
  r.passed = t.passed;
  r.summary = "c0 = " + fmt(series) + " (quadrature " + fmt(quadrature) + ")";
  r.result = {{"catalan", catalan_constant()},
              {"c0_series", series},
              {"c0_quadrature", quadrature},
              {"c0_reciprocal", 1.0 / series},
              {"resolution", resolution},
              {"checks", t.rows}};
  r.csv = t.csv;
  return r;
}

CommandResult cmd_projection_lemma(const ExperimentConfig& c) {
  const int resolution = resolution_or(c, 1 << 16);
  CommandResult r;
  r.passed = true;
  r.result = {{"resolution", resolution}, {"arcs", json::array()}, {"orthogonality", json::array()}};
  r.csv = "quantity,computed,reference,abs_error\n";
  auto emit = [&](const std::string& name, double computed, double reference, double tol) {
    const double err = std::abs(computed - reference);
    r.passed = r.passed && err <= tol;
    r.csv += name + "," + fmt(computed) + "," + fmt(reference) + "," + fmt(err) + "\n";
    return json{{"quantity", name}, {"computed", computed}, {"reference", reference},
                {"abs_error", err}, {"resolution", resolution}};
  };
  double worst = 0.0;
  for (Side sign : {Side::kPlus, Side::kMinus}) {
    const ProjectionReport p = projection_lemma_check(sign, resolution);
    worst = std::max(worst, p.max_error);
    for (std::size_t slot = 0; slot < 4; ++slot) {
      r.result["arcs"].push_back(emit("arc_average_H_phi" + side_name(sign) + "_A" +
                                          std::to_string(kArcIndices[slot]),
                                      p.computed.values[slot], p.expected.values[slot], 1e-4));
    }
  }
  for (const auto& e : dualized_orthogonality_check(resolution)) {
    r.result["orthogonality"].push_back(emit(
        "mean_H_phi" + side_name(e.sign) + "_times_phi" + side_name(e.test), e.computed,
        e.reference, 1e-4));
  }
  // Hφ⁺ is positive on (0, π) and symmetric about π/2.
  double mirror = 0.0;
  const std::function<double(double)> phi_plus = [](double t) {
    return static_cast<double>(phi_generator(Side::kPlus, t));
  };
  const auto jumps = phi_discontinuities(Side::kPlus);
  for (double x : {0.3, 0.7, 1.1, 1.4}) {
    const double a = hilbert_pv(phi_plus, x, resolution, jumps);
    const double b = hilbert_pv(phi_plus, kPi - x, resolution, jumps);
    mirror = std::max(mirror, std::abs(a - b));
    r.passed = r.passed && a > 0;
  }
  r.result["mirror_defect"] = mirror;
  r.passed = r.passed && mirror <= 1e-6;
  r.csv += "mirror_defect_H_phi+," + fmt(mirror) + ",0," + fmt(mirror) + "\n";
  r.summary = "max arc error " + fmt(worst) + " at resolution " + std::to_string(resolution);
  return r;
}

void for_each_bound_vector(int max_k, int max_bound,
                           const std::function<void(const std::vector<std::int64_t>&)>& visit) {
  std::vector<std::int64_t> bounds;
  std::function<void()> grow = [&] {
    if (!bounds.empty()) visit(bounds);
    if (static_cast<int>(bounds.size()) == max_k) return;
    for (int b = 1; b <= max_bound; ++b) {
      bounds.push_back(b);
      grow();
      bounds.pop_back();
    }
  };
  grow();
}

CommandResult cmd_modulation_check(const ExperimentConfig& c) {
  if (c.max_k < 1 || c.max_bound < 1) throw std::invalid_argument("max-k and max-bound must be positive");
  CommandResult r;
  int plans = 0, verified = 0, rejected = 0;
  std::int64_t tuples = 0;
  r.csv = "bounds,frequencies,k,tuples,dominated,boundary_dominated\n";
  for_each_bound_vector(c.max_k, c.max_bound, [&](const std::vector<std::int64_t>& bounds) {
    ++plans;
    const ModulationPlan plan = build_modulation(bounds);
    const ModulationPlan boundary = build_boundary_modulation(bounds);
    bool all_ok = true, boundary_fails = false;
    std::string bounds_text, freq_text;
    for (auto b : bounds) bounds_text += (bounds_text.empty() ? "" : " ") + std::to_string(b);
    for (auto n : plan.frequencies) freq_text += (freq_text.empty() ? "" : " ") + std::to_string(n);
    for (int k = 1; k <= static_cast<int>(bounds.size()); ++k) {
      const bool ok = verify_sign_domination(plan, k);
      const bool boundary_ok = verify_sign_domination(boundary, k);
      tuples += sign_domination_tuple_count(plan, k);
      all_ok = all_ok && ok;
      boundary_fails = boundary_fails || !boundary_ok;
      r.csv += bounds_text + "," + freq_text + "," + std::to_string(k) + "," +
               std::to_string(sign_domination_tuple_count(plan, k)) + "," + (ok ? "1" : "0") +
               "," + (boundary_ok ? "1" : "0") + "\n";
    }
    verified += all_ok ? 1 : 0;
    rejected += boundary_fails ? 1 : 0;
  });
  r.passed = verified == plans && rejected == plans;
  r.summary = std::to_string(verified) + "/" + std::to_string(plans) + " plans dominated, " +
              std::to_string(rejected) + "/" + std::to_string(plans) + " boundary plans rejected";
  r.result = {{"plans", plans},
              {"dominated", verified},
              {"boundary_rejected", rejected},
              {"tuples", tuples},
              {"max_k", c.max_k},
              {"max_bound", c.max_bound}};
  return r;
}

CommandResult cmd_average_kernel(const ExperimentConfig& c) {
  const int resolution = resolution_or(c, 1024);
  const std::vector<std::pair<double, double>> pairs = {
      {0.2, 0.7}, {0.1, 0.4}, {-0.3, 0.9}, {0.5, 0.45}, {0.05, 0.95}, {0.8, 0.15}};
  std::vector<AverageRow> rows;
  bool small = true;
  json partial = json::array();
  for (auto [t, x] : pairs) {
    rows.push_back(average_row(t, x, resolution));
    small = small && std::abs(rows.back().ratio) <= 1e-3;
    partial.push_back({{"t", t},
                       {"x", x},
                       {"minus", average_full(t, x, resolution, KernelPart::kMinus)},
                       {"plus", average_full(t, x, resolution, KernelPart::kPlus)},
                       {"even", average_full(t, x, resolution, KernelPart::kEven)}});
  }
  // Translation-only averages at matched separations and mirrored arguments.
  const std::vector<std::array<double, 4>> matched = {
      {0.1, 0.4, 0.3, 0.6}, {0.2, 0.7, 1.2, 1.7}, {-0.3, 0.9, 0.7, 1.9}};
  double matched_defect = 0.0, antisymmetry = 0.0;
  for (const auto& m : matched) {
    for (double r : {1.0, 1.25, 1.5, 1.75}) {
      const double a = average_translations(m[0], m[1], r).value;
      matched_defect = std::max(matched_defect, std::abs(a - average_translations(m[2], m[3], r).value));
      antisymmetry = std::max(antisymmetry, std::abs(a + average_translations(m[1], m[0], r).value));
    }
  }
  json homogeneity = json::array();
  for (const auto& h : homogeneity_check({0.1, 0.3}, {1.0, 1.5})) {
    homogeneity.push_back({{"separation", h.separation}, {"r", h.r}, {"at_s", h.at_s},
                           {"at_2s", h.at_2s}, {"ratio", h.ratio}});
  }
  CommandResult r;
  r.passed = small && matched_defect <= 1e-10 && antisymmetry <= 1e-10;
  double worst = 0.0;
  json table = json::array();
  for (const auto& row : rows) {
    worst = std::max(worst, std::abs(row.ratio));
    table.push_back({{"t", row.t}, {"x", row.x}, {"r_points", row.r_points},
                     {"alpha_points", row.alpha_points}, {"average", row.average},
                     {"single_grid_scale", row.single_grid_scale}, {"ratio", row.ratio}});
  }
  r.summary = "max |average|·|t-x| = " + fmt(worst) + " at " + std::to_string(resolution) +
              " dilations";
  r.result = {{"rows", table},
              {"partial_kernels", partial},
              {"matched_translation_defect", matched_defect},
              {"antisymmetry_defect", antisymmetry},
              {"homogeneity", homogeneity}};
  std::ostringstream csv;
  write_csv(csv, rows);
  r.csv = csv.str();
  return r;
}

CommandResult cmd_norm_sandwich(const ExperimentConfig& c) {
  if (c.depth < 2 || c.depth > 12) throw std::invalid_argument("norm-sandwich needs depth in [2, 12]");
  const std::vector<double> ps = c.p.empty() ? std::vector<double>{4.0 / 3.0, 2.0, 4.0} : c.p;
  std::vector<int> depths;
  for (int d = 2; d <= c.depth; ++d) depths.push_back(d);
  NormOptions options;
  options.restarts = c.restarts;
  options.workers = static_cast<unsigned>(std::max(1, c.workers));
  const SandwichTable table = sandwich_table(ps, depths, options, c.seed);
  double p2_defect = 0.0;
  int unconverged = 0;
  json rows = json::array();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    if (row.p == 2.0) p2_defect = std::max(p2_defect, std::abs(row.lb_s_p - 1.0));
    unconverged += table.estimates[i].unconverged;
    rows.push_back({{"p", row.p}, {"depth", row.depth}, {"h_p", row.h_p}, {"lb_s_p", row.lb_s_p},
                    {"ceiling", row.ceiling}, {"gap", row.gap}, {"restarts", row.restarts},
                    {"iterations", row.iterations},
                    {"unconverged", table.estimates[i].unconverged}});
  }
  CommandResult r;
  r.passed = table.consistent && table.monotone_in_depth && table.max_duality_gap <= 0.02 &&
             p2_defect <= 1e-8;
  double top = 0.0;
  for (const auto& row : table.rows) top = std::max(top, row.lb_s_p / row.ceiling);
  r.summary = "largest lb/ceiling " + fmt(top) + ", duality gap " + fmt(table.max_duality_gap);
  r.result = {{"rows", rows},
              {"consistent", table.consistent},
              {"monotone_in_depth", table.monotone_in_depth},
              {"max_duality_gap", table.max_duality_gap},
              {"p2_defect", p2_defect},
              {"unconverged_restarts", unconverged}};
  std::ostringstream csv;
  write_csv(csv, table.rows);
  r.csv = csv.str();
  return r;
}

const std::map<std::string, std::function<CommandResult(const ExperimentConfig&)>>& registry() {
  static const std::map<std::string, std::function<CommandResult(const ExperimentConfig&)>> r = {
      {"haar", cmd_haar},
      {"shift-check", cmd_shift_check},
      {"walk-moments", cmd_walk_moments},
      {"mc-convergence", cmd_mc_convergence},
      {"c0", cmd_c0},
      {"projection-lemma", cmd_projection_lemma},
      {"modulation-check", cmd_modulation_check},
      {"average-kernel", cmd_average_kernel},
      {"norm-sandwich", cmd_norm_sandwich}};
  return r;
}

}  // namespace

CommandResult execute(const ExperimentConfig& config) {
  const auto& commands = registry();
  const auto it = commands.find(config.command);
  if (it == commands.end()) throw std::invalid_argument("unknown command: " + config.command);
  return it->second(config);
}

}  // namespace dyadiclab::cli
