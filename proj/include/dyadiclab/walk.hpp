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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dyadiclab/dyadic.hpp"

namespace dyadiclab {

/// Planar point in units of the fine step √(2δ).
using LatticePoint = std::array<std::int64_t, 2>;

/**
 * Resolution and horizon of a memory-walk experiment. δ is always derived
 * from (N, T) as T/N⁵; θ = Nδ is the coarse step and ε = 1/N the boundary
 * margin.
 */
struct SimConfig {
  int N = 8;
  double T = 8.0;
  double delta = 0.0;
  double theta = 0.0;
  double epsilon = 0.0;
  /// Fine step length √(2δ).
  double step = 0.0;
  std::int64_t fine_steps = 0;    // N⁵
  std::int64_t coarse_steps = 0;  // N⁴
  /// Set when the config was built with wide steps allowed and N√(2δ) > ε.
  bool wide_steps = false;

  /**
   * Builds the config. Unless `allow_wide_steps` is set, configurations where
   * one coarse step N√(2δ) = √(2T)·N^{-3/2} exceeds ε are rejected, since
   * then a coarse step can jump from inside (1−ε)𝔻 to outside the disc.
   */
  static SimConfig make(int N, double T, bool allow_wide_steps = false);

  /// Largest coarse displacement N√(2δ).
  double coarse_step_bound() const { return N * step; }
  /// (1−ε)² / (2δ): the squared stopping radius in lattice units.
  double stop_radius_squared() const;
};

/// Lattice increments for tosses ε₀..ε_K: increment l (1 ≤ l ≤ K) is
/// horizontal when ε_{l−1} = +1 and vertical otherwise, with sign ε_l.
std::vector<LatticePoint> step_increments(std::span<const int> tosses);

/// Toss ε_t ∈ {−1, +1} of a seeded path.
int path_toss(std::uint64_t seed, std::uint64_t path, std::int64_t t);

struct WalkPath {
  std::vector<std::int8_t> tosses;       // ε₀..ε_K
  std::vector<LatticePoint> positions;   // B₀..B_K
  std::optional<std::int64_t> stop_index;  // coarse index n_ε
  std::uint64_t seed = 0;
  std::uint64_t path = 0;
};

/// Path built from explicit tosses; positions are unstopped.
WalkPath walk_from_tosses(std::span<const int> tosses);

/// Seeded path with N⁵ fine steps. When `stop` is set, increments after the
/// stopping coarse time are zeroed.
WalkPath generate_path(const SimConfig& config, std::uint64_t seed, std::uint64_t path,
                       bool stop = true);

/// X_n = B_{nN} for n = 0..N⁴.
std::vector<LatticePoint> sample_coarse(const WalkPath& path, const SimConfig& config);

/// First n with |X_n| ≥ 1 − ε, or none.
std::optional<std::int64_t> stop_at_annulus(std::span<const LatticePoint> coarse,
                                            const SimConfig& config);

/// Modulus of a lattice point in length units.
double modulus(const LatticePoint& p, const SimConfig& config);

/// dB¹_l and dB²_l as Haar expansions on the toss probability space [0, 1),
/// resolved at `depth` (> l). Coefficients are per unit √(2δ).
std::array<HaarExpansion, 2> increment_expansions(int l, int depth);

struct RotationReport {
  int depth = 0;
  int checked_steps = 0;
  /// S₀dB¹ = dB², S₀dB² = −dB¹ and S₀S₀dB = −dB, each coefficientwise exact.
  bool rotation_exact = true;
  bool antiinvolution_exact = true;
  bool passed() const { return rotation_exact && antiinvolution_exact; }
};

/// Checks the rotation identity for every step l = 1..depth−1.
RotationReport s0_rotation_check(int depth);

/**
 * Exact conditional moments of one coarse increment given the prior toss,
 * over all 2^N continuations. Second moments are in units of δ, fourth
 * moments in units of δ².
 */
struct MomentTable {
  int N = 0;
  int prior = 1;
  double mean_horizontal = 0.0;  // units of √(2δ)
  double mean_vertical = 0.0;
  double second_horizontal = 0.0;
  double second_vertical = 0.0;
  double mixed = 0.0;
  double fourth_horizontal = 0.0;
  double fourth_vertical = 0.0;
  /// The closed forms 1(prior = +1)·2 + (N−1) and 1(prior = −1)·2 + (N−1).
  double expected_second_horizontal() const { return (prior > 0 ? 2.0 : 0.0) + (N - 1); }
  double expected_second_vertical() const { return (prior < 0 ? 2.0 : 0.0) + (N - 1); }
};

MomentTable conditional_moments_exact(int N, int prior);

/// Per-path trace rows: seed, path, stop index (−1 if none), coarse positions.
void write_trace_csv(std::ostream& out, std::span<const WalkPath> paths, const SimConfig& config);

}  // namespace dyadiclab
