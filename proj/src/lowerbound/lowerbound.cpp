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

#include "dyadiclab/lowerbound.hpp"

#include <cmath>
#include <algorithm>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include "dyadiclab/hilbert.hpp"

namespace dyadiclab {

namespace {

constexpr double kPi = std::numbers::pi;

// Antiderivative of φ⁻ = sign∘sin: the 2π-periodic tent θ ↦ π − |θ mod 2π − π|.
double tent(double theta) {
  const double t = theta - 2 * kPi * std::floor(theta / (2 * kPi));
  return kPi - std::abs(t - kPi);
}

double phi_antiderivative(Side sign, double theta) {
  // φ⁺(θ) = φ⁻(θ + π/2).
  return tent(sign == Side::kMinus ? theta : theta + kPi / 2);
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("modulation frequency overflows int64");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("frequency combination overflows int64");
  return out;
}

int sign_of(std::int64_t v) { return (v > 0) - (v < 0); }

ModulationPlan build_with_factor(const std::vector<std::int64_t>& bounds, std::int64_t factor) {
  ModulationPlan plan;
  plan.spectral_bounds = bounds;
  plan.frequencies.push_back(1);
  for (std::int64_t b : bounds) {
    if (b < 1) throw std::invalid_argument("spectral bounds must be positive");
    plan.frequencies.push_back(checked_mul(checked_mul(factor, b), plan.frequencies.back()));
  }
  return plan;
}

// Number of points of ℤ^dim in the ℓ¹ ball of radius r.
std::int64_t l1_ball_count(int dim, std::int64_t r) {
  if (dim == 0) return 1;
  std::int64_t total = l1_ball_count(dim - 1, r);
  for (std::int64_t v = 1; v <= r; ++v) total += 2 * l1_ball_count(dim - 1, r - v);
  return total;
}

// Calls visit(dot) for every l⃗ in the ℓ¹ ball, with dot = l⃗·n⃗.
bool all_in_ball(std::span<const std::int64_t> freqs, std::int64_t budget, std::int64_t dot,
                 const std::function<bool(std::int64_t)>& visit) {
  if (freqs.empty()) return visit(dot);
  for (std::int64_t v = -budget; v <= budget; ++v) {
    const std::int64_t next = checked_add(dot, checked_mul(v, freqs.front()));
    if (!all_in_ball(freqs.subspan(1), budget - std::abs(v), next, visit)) return false;
  }
  return true;
}

}  // namespace

double catalan_partial_sum(int terms) {
  if (terms < 0) throw std::invalid_argument("negative term count");
  double s = 0.0;
  for (int k = 0; k < terms; ++k) {
    const double d = 2.0 * k + 1.0;
    s += (k % 2 ? -1.0 : 1.0) / (d * d);
  }
  return s;
}

double catalan_constant(double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  // Error of the accelerated sum is at most 2·(3 + √8)^{−n} times the first term.
  const double rate = 3.0 + std::sqrt(8.0);
  const int n = std::min(60, static_cast<int>(std::ceil(std::log(2.0 / tolerance) / std::log(rate))) + 1);
  double d = std::pow(rate, n);
  d = (d + 1.0 / d) / 2;
  double b = -1.0;
  double c = -d;
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    const double term = 1.0 / ((2.0 * k + 1.0) * (2.0 * k + 1.0));
    s += c * term;
    b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
  }
  return s / d;
}

double c0_constant() { return 8.0 * catalan_constant() / (kPi * kPi); }

double c0_via_quadrature(int resolution) {
  if (resolution < 1024) throw std::invalid_argument("c0 quadrature needs resolution >= 1024");
  const double a = kPi / 2;
  // ∫₀^{π/2} log(x/2) dx in closed form.
  const double singular = a * (std::log(a / 2) - 1.0);
  // log(tan(x/2)/(x/2)) is smooth on [0, π/2].
  const double h = a / resolution;
  double regular = 0.0;
  for (int j = 0; j < resolution; ++j) {
    const double half = 0.5 * (j + 0.5) * h;
    regular += std::log(std::tan(half) / half);
  }
  regular *= h;
  // Mean over (0, π/2) of (2/π) log tan(x/2) equals −c₀.
  return -(2 / kPi) * (singular + regular) / a;
}

ArcStep hilbert_phi_arc_averages(Side sign, int resolution) {
  if (resolution < 2 || resolution % 2) {
    throw std::invalid_argument("arc average resolution must be even and at least 2");
  }
  // With an even number of cells the kinks of D at s = π/2 fall on cell edges.
  constexpr double quarter = kPi / 2;
  const double h = kPi / resolution;
  ArcStep out;
  for (std::size_t slot = 0; slot < 4; ++slot) {
    const double a = kArcIndices[slot] * quarter;
    const double b = a + quarter;
    double sum = 0.0;
    for (int j = 0; j < resolution; ++j) {
      const double s = (j + 0.5) * h;
      const double diff = phi_antiderivative(sign, b - s) - phi_antiderivative(sign, a - s) -
                          phi_antiderivative(sign, b + s) + phi_antiderivative(sign, a + s);
      sum += diff / quarter / std::tan(s / 2);
    }
    out.values[slot] = sum * h / (2 * kPi);
  }
  return out;
}

std::pair<int, Side> shift_generator(Side sign) { return {sign_of(sign), opposite(sign)}; }

ProjectionReport projection_lemma_check(Side sign, int resolution) {
  ProjectionReport r;
  r.sign = sign;
  r.resolution = resolution;
  r.computed = hilbert_phi_arc_averages(sign, resolution);
  const auto [factor, image] = shift_generator(sign);
  const double c0 = c0_constant();
  for (std::size_t slot = 0; slot < 4; ++slot) {
    // Arc midpoints are never zeros of sin or cos.
    const double mid = (kArcIndices[slot] + 0.5) * kPi / 2;
    r.expected.values[slot] = c0 * factor * phi_generator(image, mid);
    r.max_error = std::max(r.max_error, std::abs(r.computed.values[slot] - r.expected.values[slot]));
  }
  return r;
}

std::vector<OrthogonalityEntry> dualized_orthogonality_check(int resolution) {
  std::vector<OrthogonalityEntry> out;
  const double c0 = c0_constant();
  for (Side sigma : {Side::kPlus, Side::kMinus}) {
    const ArcStep averages = hilbert_phi_arc_averages(sigma, resolution);
    const auto [factor, image] = shift_generator(sigma);
    for (Side eta : {Side::kPlus, Side::kMinus}) {
      OrthogonalityEntry e;
      e.sign = sigma;
      e.test = eta;
      // φ^η is constant on each arc, so the mean of the product only sees arc averages.
      double computed = 0.0, reference = 0.0;
      for (std::size_t slot = 0; slot < 4; ++slot) {
        const double mid = (kArcIndices[slot] + 0.5) * kPi / 2;
        const int test = phi_generator(eta, mid);
        computed += averages.values[slot] * test / 4;
        reference += c0 * factor * phi_generator(image, mid) * test / 4;
      }
      e.computed = computed;
      e.reference = reference;
      out.push_back(e);
    }
  }
  return out;
}

ModulationPlan build_modulation(const std::vector<std::int64_t>& spectral_bounds) {
  return build_with_factor(spectral_bounds, 2);
}

ModulationPlan build_boundary_modulation(const std::vector<std::int64_t>& spectral_bounds) {
  return build_with_factor(spectral_bounds, 1);
}

std::int64_t sign_domination_tuple_count(const ModulationPlan& plan, int k) {
  if (k < 1 || static_cast<std::size_t>(k) >= plan.frequencies.size() ||
      static_cast<std::size_t>(k) > plan.spectral_bounds.size()) {
    throw std::out_of_range("step " + std::to_string(k) + " not covered by the plan");
  }
  const std::int64_t budget = plan.spectral_bounds[static_cast<std::size_t>(k - 1)];
  if (budget > 1000) throw std::invalid_argument("spectral bound too large to enumerate");
  return l1_ball_count(k, budget) * 2 * (budget + 1);
}

bool verify_sign_domination(const ModulationPlan& plan, int k) {
  const std::int64_t count = sign_domination_tuple_count(plan, k);
  if (count > 100'000'000) {
    throw std::invalid_argument("enumeration of " + std::to_string(count) + " tuples refused");
  }
  const std::int64_t budget = plan.spectral_bounds[static_cast<std::size_t>(k - 1)];
  const std::int64_t newest = plan.frequencies[static_cast<std::size_t>(k)];
  const std::span<const std::int64_t> older(plan.frequencies.data(), static_cast<std::size_t>(k));
  return all_in_ball(older, budget, 0, [&](std::int64_t dot) {
    for (std::int64_t lk = 1; lk <= budget + 1; ++lk) {
      for (std::int64_t l : {lk, -lk}) {
        const std::int64_t top = checked_mul(l, newest);
        if (sign_of(checked_add(dot, top)) != sign_of(top)) return false;
      }
    }
    return true;
  });
}

}  // namespace dyadiclab
