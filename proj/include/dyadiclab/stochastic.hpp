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
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dyadiclab/fourier.hpp"
#include "dyadiclab/walk.hpp"

namespace dyadiclab {

/**
 * M^f_k = f(0) + Σ ∇f(B_{l−1})·dB_l and M^g_k = Σ ∇^⊥f(B_{l−1})·dB_l along
 * one path, with the harmonic extension of f. `mg_rotated` is the second
 * route Σ ∇f(B_{l−1})·dB_l^⊤, (a, b)^⊤ = (b, −a).
 */
struct MartingalePair {
  std::vector<double> mf;
  std::vector<double> mg;
  std::vector<double> mg_rotated;
  std::optional<std::int64_t> stop_index;
  double max_identity_defect = 0.0;
};

/// Rejects paths that leave the closed disc unless the config allows wide steps.
MartingalePair run_pair(const FourierSeries& f, const WalkPath& path, const SimConfig& config);

struct McOptions {
  std::uint64_t seed = 1;
  std::int64_t paths = 1000;
  int workers = 1;
  /// Paths per reduction chunk. Chunk sums are combined in chunk order, so
  /// results do not depend on the number of workers.
  std::int64_t chunk_size = 256;
  /// Use the word-parallel kernel when f is affine and N divides 64.
  bool fast_kernel = true;
};

struct MCEstimate {
  double p = 2.0;
  double value = 0.0;           // (mean |M_T|^p)^{1/p}
  double standard_error = 0.0;  // delta method on the mean of |M_T|^p
  std::int64_t paths = 0;
};

/// Sample mean with its standard error.
struct MeanEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  bool within(double sigmas, double target = 0.0) const;
};

struct EnsembleResult {
  SimConfig config;
  std::int64_t paths = 0;
  std::uint64_t seed = 0;
  std::string kernel;
  std::vector<double> exponents;
  std::vector<MCEstimate> mf;  // one per exponent
  std::vector<MCEstimate> mg;
  std::int64_t unstopped = 0;
  /// Paths whose stopped position lies outside the closed unit disc.
  std::int64_t outside_disc = 0;
  double max_identity_defect = 0.0;
  MeanEstimate terminal_mf;
  MeanEstimate terminal_mg;
  /// Σ ΔM^f ΔM^g per path (discrete covariation).
  MeanEstimate covariation;
  /// Σ ΔM^f over steps whose memory toss is +1, resp. −1.
  MeanEstimate drift_after_plus;
  MeanEstimate drift_after_minus;

  double unstopped_fraction() const { return paths ? static_cast<double>(unstopped) / paths : 0.0; }
  const MCEstimate& mf_at(double p) const;
  const MCEstimate& mg_at(double p) const;
};

/// Runs the seeded ensemble and reduces every exponent in one pass.
EnsembleResult simulate_ensemble(const FourierSeries& f, const SimConfig& config,
                                 std::span<const double> exponents, const McOptions& options);

/// Estimate of ‖M^f_T‖_p.
MCEstimate mc_lp_norm(const FourierSeries& f, double p, const SimConfig& config,
                      const McOptions& options);

/// ((1/2π)∫|f|^p)^{1/p} by midpoint rule.
double reference_boundary_norm(const std::function<double(double)>& f, double p,
                               int resolution = 1 << 16);
double reference_boundary_norm(const FourierSeries& f, double p, int resolution = 1 << 16);

struct ConvergenceRow {
  int N = 0;
  double T = 0.0;
  std::int64_t paths = 0;
  double estimate = 0.0;
  double reference = 0.0;
  double bias = 0.0;
  double standard_error = 0.0;
  double unstopped_fraction = 0.0;
  bool wide_steps = false;
  std::int64_t outside_disc = 0;
  double max_identity_defect = 0.0;
  std::string kernel;
};

struct ConvergenceStudy {
  double p = 2.0;
  std::vector<ConvergenceRow> rows;
  /// bias_{i+1} ≤ bias_i + 3·√(se_i² + se_{i+1}²) along the N list.
  bool non_increasing = true;
  /// Last row: bias ≤ max(3·SE, relative_tolerance·reference).
  bool final_within_tolerance = true;
  double relative_tolerance = 0.03;
};

ConvergenceStudy convergence_study(const FourierSeries& f, double p, std::span<const int> n_list,
                                   double T, const McOptions& options,
                                   bool allow_wide_steps = false,
                                   double relative_tolerance = 0.03);

void write_csv(std::ostream& out, const ConvergenceStudy& study);

struct InequalityReport {
  double p = 2.0;
  double bound = 1.0;
  MCEstimate mf;
  MCEstimate mg;
  double combined_standard_error = 0.0;
  /// ‖M^g‖ − bound·‖M^f‖; the check passes when this is ≤ 3·combined SE.
  double excess = 0.0;
  bool holds = false;
};

InequalityReport shift_norm_inequality_check(const EnsembleResult& ensemble, double p, double bound);
InequalityReport shift_norm_inequality_check(const FourierSeries& f, double p, double bound,
                                             const SimConfig& config, const McOptions& options);

/**
 * Applies the shift operator to M^f_K viewed as a step function of the
 * tosses ε₀..ε_K (all 2^{K+1} outcomes, no stopping) and compares with M^g_K.
 * The transform identity acts on increments with the multiplier held fixed;
 * this measures how far the operator on the whole function is from it.
 */
struct OperatorIdentityReport {
  int fine_steps = 0;
  double step = 0.0;
  double l2_defect = 0.0;   // ‖S₀M^f_K − M^g_K‖₂
  double l2_mg = 0.0;       // ‖M^g_K‖₂
};

OperatorIdentityReport operator_identity_check(const FourierSeries& f, double step, int fine_steps);

}  // namespace dyadiclab
