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

#include "dyadiclab/stochastic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dyadiclab/hilbert.hpp"
#include "dyadiclab/operators.hpp"

namespace dyadiclab {

MartingalePair run_pair(const FourierSeries& f, const WalkPath& path, const SimConfig& config) {
  if (!f.is_real(1e-12)) throw std::invalid_argument("martingales need a real series");
  if (path.positions.empty()) throw std::invalid_argument("empty path");
  const AnalyticCompletion completion(f);
  MartingalePair pair;
  pair.stop_index = path.stop_index;
  const std::size_t steps = path.positions.size() - 1;
  pair.mf.reserve(steps + 1);
  pair.mg.reserve(steps + 1);
  pair.mg_rotated.reserve(steps + 1);
  pair.mf.push_back(completion.value(0.0).real());
  pair.mg.push_back(0.0);
  pair.mg_rotated.push_back(0.0);

  for (std::size_t l = 1; l <= steps; ++l) {
    const LatticePoint& before = path.positions[l - 1];
    const LatticePoint& after = path.positions[l];
    const Complex z(config.step * static_cast<double>(before[0]),
                    config.step * static_cast<double>(before[1]));
    if (std::abs(z) > 1.0 && !config.wide_steps) {
      throw std::domain_error("walk left the closed disc at fine step " + std::to_string(l - 1));
    }
    const double db1 = config.step * static_cast<double>(after[0] - before[0]);
    const double db2 = config.step * static_cast<double>(after[1] - before[1]);
    const Complex d = completion.derivative(z);
    // ∇f = (Re F′, −Im F′), ∇^⊥f = (Im F′, Re F′).
    const double grad_x = d.real();
    const double grad_y = -d.imag();
    const double perp_x = d.imag();
    const double perp_y = d.real();
    pair.mf.push_back(pair.mf.back() + grad_x * db1 + grad_y * db2);
    pair.mg.push_back(pair.mg.back() + perp_x * db1 + perp_y * db2);
    // dB^⊤ = (dB², −dB¹).
    pair.mg_rotated.push_back(pair.mg_rotated.back() + grad_x * db2 + grad_y * (-db1));
    pair.max_identity_defect =
        std::max(pair.max_identity_defect, std::abs(pair.mg.back() - pair.mg_rotated.back()));
  }
  return pair;
}

double reference_boundary_norm(const std::function<double(double)>& f, double p, int resolution) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be at least 1");
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  const double h = 2 * std::numbers::pi / resolution;
  double sum = 0.0;
  for (int j = 0; j < resolution; ++j) sum += std::pow(std::abs(f((j + 0.5) * h)), p);
  return std::pow(sum / resolution, 1.0 / p);
}

double reference_boundary_norm(const FourierSeries& f, double p, int resolution) {
  return reference_boundary_norm([&f](double t) { return f(t); }, p, resolution);
}

OperatorIdentityReport operator_identity_check(const FourierSeries& f, double step, int fine_steps) {
  if (fine_steps < 1 || fine_steps > 14) throw std::out_of_range("fine_steps must lie in [1, 14]");
  const AnalyticCompletion completion(f);
  const int depth = fine_steps + 1;
  const std::size_t atoms = std::size_t{1} << depth;
  std::vector<double> mf(atoms), mg(atoms);
  std::vector<int> tosses(static_cast<std::size_t>(depth));
  for (std::size_t a = 0; a < atoms; ++a) {
    // Binary digits of the atom, most significant first, are ε₀, ε₁, ...
    for (int k = 0; k < depth; ++k) tosses[static_cast<std::size_t>(k)] = (a >> (depth - 1 - k)) & 1 ? 1 : -1;
    Complex z = 0.0;
    double vf = completion.value(0.0).real();
    double vg = 0.0;
    for (const auto& inc : step_increments(tosses)) {
      const Complex dz(step * inc[0], step * inc[1]);
      const Complex w = completion.derivative(z) * dz;
      vf += w.real();
      vg += w.imag();
      z += dz;
    }
    mf[a] = vf;
    mg[a] = vg;
  }
  const auto shifted = synthesize_grid(apply_s0(analyze(mf)));
  double defect = 0.0, norm = 0.0;
  for (std::size_t a = 0; a < atoms; ++a) {
    defect += (shifted[a] - mg[a]) * (shifted[a] - mg[a]);
    norm += mg[a] * mg[a];
  }
  return {fine_steps, step, std::sqrt(defect / atoms), std::sqrt(norm / atoms)};
}

}  // namespace dyadiclab
