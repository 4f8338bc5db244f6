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
#include <stdexcept>

#include "dyadiclab/operators.hpp"

namespace dyadiclab {

namespace {

HaarExpansion difference(const HaarExpansion& a, const HaarExpansion& b) {
  HaarExpansion out = a;
  out.set_mean(a.mean() - b.mean());
  for (const auto& [interval, c] : b.coefficients()) out.add_to_coefficient(interval, -c);
  return out;
}

// Coefficients of f on I₀, re-expressed on the tree of J where I₀ is the
// level-`height` interval of index 0 (coordinates normalized so |J| = 1).
HaarExpansion embed_leftmost(const HaarExpansion& f, int height) {
  const double shrink = std::ldexp(1.0, -height);
  HaarExpansion out(f.depth() + height, f.mean() * shrink);
  // ⟨f⟩_{I₀} 1_{I₀} contributes (1_{I₀}, h_K) = −|K|^{-1/2}|I₀| on each strict ancestor K.
  for (int level = 0; level < height; ++level) {
    out.set_coefficient({level, 0}, -f.mean() * shrink * std::sqrt(std::ldexp(1.0, level)));
  }
  const double scale = std::sqrt(shrink);
  for (const auto& [interval, c] : f.coefficients()) {
    out.set_coefficient({interval.level + height, interval.index}, c * scale);
  }
  return out;
}

}  // namespace

LineConsistencyReport s0_line_vs_interval_consistency(const HaarExpansion& f, int levels_above,
                                                      double p) {
  if (levels_above < 1) throw std::invalid_argument("levels_above must be at least 1");
  if (f.depth() + levels_above > 60) throw std::invalid_argument("embedding too deep");
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");

  const int height = levels_above;
  // Norms computed in J-normalized coordinates pick up a factor |J|^{1/p}.
  const double unit = std::pow(std::ldexp(1.0, height), 1.0 / p);
  const DyadicInterval unit_interval{height, 0};

  const HaarExpansion embedded = embed_leftmost(f, height);
  HaarExpansion corrected = embedded;
  corrected.set_mean(0.0);
  corrected.set_coefficient(DyadicInterval::root(), 0.0);

  const HaarExpansion on_j = apply_s0(corrected);
  const HaarExpansion on_unit = apply_s0(f);
  const HaarExpansion on_unit_embedded = embed_leftmost(on_unit, height);

  LineConsistencyReport r;
  r.levels_above = levels_above;
  r.p = p;
  r.restriction_defect = unit * lp_norm(difference(on_j, on_unit_embedded), p, unit_interval);
  r.embedding_defect = unit * lp_norm(difference(embedded, corrected), p);
  // Ancestors K_j = [0, 2^{height+j}) of J carry (f, h_{K_j}) = −|K_j|^{-1/2}∫f; the whole-line
  // shift moves each onto the right sibling of K_j, where it has modulus |∫f|/|K_j|.
  const double integral = std::abs(f.mean());
  r.line_tail = integral * std::pow(std::ldexp(1.0, height), 1.0 / p - 1.0) /
                std::pow(1.0 - std::pow(2.0, 1.0 - p), 1.0 / p);
  r.discrepancy = r.embedding_defect + r.line_tail;
  r.interval_norm = lp_norm(on_unit, p);
  r.embedded_norm = unit * lp_norm(on_j, p);
  return r;
}

}  // namespace dyadiclab
