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

#include "dyadiclab/walk.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "dyadiclab/operators.hpp"
#include "dyadiclab/philox.hpp"

namespace dyadiclab {

SimConfig SimConfig::make(int N, double T, bool allow_wide_steps) {
  if (N < 2 || N > 64) throw std::invalid_argument("N must lie in [2, 64]");
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("T must be positive");
  SimConfig c;
  c.N = N;
  c.T = T;
  const double n = N;
  c.delta = T / (n * n * n * n * n);
  c.theta = N * c.delta;
  c.epsilon = 1.0 / N;
  c.step = std::sqrt(2 * c.delta);
  c.coarse_steps = std::int64_t{N} * N * N * N;
  c.fine_steps = c.coarse_steps * N;
  c.wide_steps = c.coarse_step_bound() > c.epsilon;
  if (c.wide_steps && !allow_wide_steps) {
    throw std::invalid_argument("coarse step " + std::to_string(c.coarse_step_bound()) +
                                " exceeds the margin " + std::to_string(c.epsilon) + " (N=" +
                                std::to_string(N) + ", T=" + std::to_string(T) +
                                "); pass allow_wide_steps to run anyway");
  }
  return c;
}

double SimConfig::stop_radius_squared() const {
  return (1 - epsilon) * (1 - epsilon) / (2 * delta);
}

std::vector<LatticePoint> step_increments(std::span<const int> tosses) {
  if (tosses.empty()) throw std::invalid_argument("need at least one toss");
  std::vector<LatticePoint> out;
  out.reserve(tosses.size() - 1);
  for (std::size_t l = 1; l < tosses.size(); ++l) {
    if (std::abs(tosses[l]) != 1 || std::abs(tosses[l - 1]) != 1) {
      throw std::invalid_argument("tosses must be ±1");
    }
    if (tosses[l - 1] > 0) {
      out.push_back({tosses[l], 0});
    } else {
      out.push_back({0, tosses[l]});
    }
  }
  return out;
}

int path_toss(std::uint64_t seed, std::uint64_t path, std::int64_t t) {
  if (t < 0) throw std::out_of_range("negative toss index");
  const PathBits bits(seed, path);
  const auto w = static_cast<std::uint64_t>(t);
  return (bits.word(w / 64) >> (w % 64)) & 1 ? 1 : -1;
}

WalkPath walk_from_tosses(std::span<const int> tosses) {
  WalkPath p;
  p.tosses.assign(tosses.begin(), tosses.end());
  p.positions.push_back({0, 0});
  for (const auto& d : step_increments(tosses)) {
    const auto& b = p.positions.back();
    p.positions.push_back({b[0] + d[0], b[1] + d[1]});
  }
  return p;
}

WalkPath generate_path(const SimConfig& config, std::uint64_t seed, std::uint64_t path,
                       bool stop) {
  const PathBits bits(seed, path);
  std::vector<int> tosses(static_cast<std::size_t>(config.fine_steps + 1));
  std::uint64_t word = 0;
  for (std::size_t t = 0; t < tosses.size(); ++t) {
    if (t % 64 == 0) word = bits.word(t / 64);
    tosses[t] = (word >> (t % 64)) & 1 ? 1 : -1;
  }
  WalkPath p = walk_from_tosses(tosses);
  p.seed = seed;
  p.path = path;
  if (stop) {
    p.stop_index = stop_at_annulus(sample_coarse(p, config), config);
    if (p.stop_index) {
      const auto frozen = static_cast<std::size_t>(*p.stop_index * config.N);
      for (std::size_t k = frozen + 1; k < p.positions.size(); ++k) p.positions[k] = p.positions[frozen];
    }
  }
  return p;
}

std::vector<LatticePoint> sample_coarse(const WalkPath& path, const SimConfig& config) {
  if (static_cast<std::int64_t>(path.positions.size()) != config.fine_steps + 1) {
    throw std::invalid_argument("path has " + std::to_string(path.positions.size()) +
                                " positions, config expects " +
                                std::to_string(config.fine_steps + 1));
  }
  std::vector<LatticePoint> out;
  out.reserve(static_cast<std::size_t>(config.coarse_steps + 1));
  for (std::int64_t n = 0; n <= config.coarse_steps; ++n) {
    out.push_back(path.positions[static_cast<std::size_t>(n * config.N)]);
  }
  return out;
}

std::optional<std::int64_t> stop_at_annulus(std::span<const LatticePoint> coarse,
                                            const SimConfig& config) {
  const double threshold = config.stop_radius_squared();
  for (std::size_t n = 0; n < coarse.size(); ++n) {
    const auto& x = coarse[n];
    if (static_cast<double>(x[0] * x[0] + x[1] * x[1]) >= threshold) {
      return static_cast<std::int64_t>(n);
    }
  }
  return std::nullopt;
}

double modulus(const LatticePoint& p, const SimConfig& config) {
  return config.step * std::hypot(static_cast<double>(p[0]), static_cast<double>(p[1]));
}

std::array<HaarExpansion, 2> increment_expansions(int l, int depth) {
  if (l < 1 || l >= depth) throw std::out_of_range("step must satisfy 1 <= l < depth");
  std::array<HaarExpansion, 2> out{HaarExpansion(depth), HaarExpansion(depth)};
  const double weight = std::sqrt(std::ldexp(1.0, -l));  // |I|^{1/2}
  for (std::int64_t m = 0; m < (std::int64_t{1} << l); ++m) {
    // Memory toss ε_{l−1} = +1 exactly on right children of level l.
    out[m % 2 == 1 ? 0 : 1].set_coefficient({l, m}, weight);
  }
  return out;
}

RotationReport s0_rotation_check(int depth) {
  if (depth < 2 || depth > 14) throw std::out_of_range("rotation check depth must lie in [2, 14]");
  RotationReport r;
  r.depth = depth;
  for (int l = 1; l < depth; ++l) {
    const auto [horizontal, vertical] = increment_expansions(l, depth);
    HaarExpansion minus_horizontal(depth);
    HaarExpansion minus_vertical(depth);
    for (const auto& [interval, c] : horizontal.coefficients()) minus_horizontal.set_coefficient(interval, -c);
    for (const auto& [interval, c] : vertical.coefficients()) minus_vertical.set_coefficient(interval, -c);

    r.rotation_exact = r.rotation_exact && apply_s0(horizontal) == vertical &&
                       apply_s0(vertical) == minus_horizontal;
    r.antiinvolution_exact = r.antiinvolution_exact &&
                             apply_s0(apply_s0(horizontal)) == minus_horizontal &&
                             apply_s0(apply_s0(vertical)) == minus_vertical;
    ++r.checked_steps;
  }
  return r;
}

MomentTable conditional_moments_exact(int N, int prior) {
  if (N < 1 || N > 12) throw std::out_of_range("exhaustive moments need 1 <= N <= 12");
  if (prior != 1 && prior != -1) throw std::invalid_argument("prior toss must be ±1");
  const std::uint32_t count = 1u << N;
  // Integer sums are exact; one division by 2^N at the end is exact as well.
  std::int64_t s1[2] = {0, 0}, s2[2] = {0, 0}, s4[2] = {0, 0}, mixed = 0;
  std::vector<int> tosses(static_cast<std::size_t>(N) + 1);
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    tosses[0] = prior;
    for (int l = 1; l <= N; ++l) tosses[static_cast<std::size_t>(l)] = (bits >> (l - 1)) & 1 ? 1 : -1;
    std::int64_t d[2] = {0, 0};
    for (const auto& inc : step_increments(tosses)) {
      d[0] += inc[0];
      d[1] += inc[1];
    }
    for (int i = 0; i < 2; ++i) {
      s1[i] += d[i];
      s2[i] += d[i] * d[i];
      s4[i] += d[i] * d[i] * d[i] * d[i];
    }
    mixed += d[0] * d[1];
  }
  const double inv = std::ldexp(1.0, -N);
  MomentTable t;
  t.N = N;
  t.prior = prior;
  t.mean_horizontal = static_cast<double>(s1[0]) * inv;
  t.mean_vertical = static_cast<double>(s1[1]) * inv;
  // One lattice unit squared is 2δ; to the fourth it is 4δ².
  t.second_horizontal = 2.0 * static_cast<double>(s2[0]) * inv;
  t.second_vertical = 2.0 * static_cast<double>(s2[1]) * inv;
  t.mixed = 2.0 * static_cast<double>(mixed) * inv;
  t.fourth_horizontal = 4.0 * static_cast<double>(s4[0]) * inv;
  t.fourth_vertical = 4.0 * static_cast<double>(s4[1]) * inv;
  return t;
}

void write_trace_csv(std::ostream& out, std::span<const WalkPath> paths, const SimConfig& config) {
  const auto old_precision = out.precision(17);
  out << "seed,path,stop_index,coarse_positions\n";
  for (const auto& p : paths) {
    out << p.seed << ',' << p.path << ',' << (p.stop_index ? *p.stop_index : -1) << ',';
    const auto coarse = sample_coarse(p, config);
    for (std::size_t n = 0; n < coarse.size(); ++n) {
      if (n) out << ';';
      out << config.step * static_cast<double>(coarse[n][0]) << ' '
          << config.step * static_cast<double>(coarse[n][1]);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace dyadiclab
