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
#include <functional>
#include <span>
#include <vector>

#include "dyadiclab/dyadic.hpp"
#include "dyadiclab/fourier.hpp"

namespace dyadiclab {

/// Conjugate function on the torus: c_n ↦ −i·sign(n)·c_n.
FourierSeries hilbert_spectral(const FourierSeries& f);

/**
 * Principal value (1/2π) p.v.∫ f(t) cot((x−t)/2) dt, folded onto (0, π):
 * (1/2π)∫₀^π [f(x−s) − f(x+s)] cot(s/2) ds, midpoint rule with `resolution`
 * cells. The folded integrand is regular at s = 0, and the rule is exact for
 * trigonometric polynomials of degree below `resolution`.
 *
 * Throws std::domain_error when x lies within one cell of a listed
 * discontinuity (taken mod 2π).
 */
double hilbert_pv(const std::function<double(double)>& f, double x, int resolution,
                  std::span<const double> discontinuities = {});

/// φ⁻ = sign∘sin, φ⁺ = sign∘cos. Zeros of the underlying function are rejected.
int phi_generator(Side sign, double theta);
/// Jump locations of φ^σ in [−π, π).
std::array<double, 2> phi_discontinuities(Side sign);
/// Closed forms: Hφ⁻(x) = (2/π) log|tan(x/2)|, Hφ⁺(x) = Hφ⁻(x + π/2).
double hilbert_phi_closed_form(Side sign, double x);

/// Harmonic extension of a real series at a point of the open disc.
struct HarmonicPoint {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
  std::array<double, 2> gradient{};
  double conjugate_value = 0.0;
  std::array<double, 2> conjugate_gradient{};
};

/**
 * F(z) = c₀ + 2 Σ_{n≥1} c_n zⁿ for a real series: Re F is the Poisson
 * extension and Im F the harmonic conjugate vanishing at 0.
 * Evaluation is by Horner and is defined for any z; callers that need a
 * genuine extension must keep |z| < 1.
 */
class AnalyticCompletion {
 public:
  explicit AnalyticCompletion(const FourierSeries& f);

  Complex value(Complex z) const;
  Complex derivative(Complex z) const {
    // Real arithmetic: std::complex products take the slow Annex G path.
    const double zr = z.real(), zi = z.imag();
    double dr = 0.0, di = 0.0;
    for (auto it = derivative_taylor_.rbegin(); it != derivative_taylor_.rend(); ++it) {
      const double r = dr * zr - di * zi + it->real();
      di = dr * zi + di * zr + it->imag();
      dr = r;
    }
    return {dr, di};
  }
  /// F and F′ together.
  std::pair<Complex, Complex> value_and_derivative(Complex z) const;
  /// True when F′ is constant (degree ≤ 1).
  bool is_affine() const { return taylor_.size() <= 2; }
  std::span<const Complex> taylor() const { return taylor_; }

 private:
  std::vector<Complex> taylor_;  // coefficients of zⁿ, trailing zeros trimmed
  std::vector<Complex> derivative_taylor_;
};

/// Value, conjugate and both gradients at z = x + iy; rejects |z| ≥ 1 and complex series.
HarmonicPoint poisson_extend(const FourierSeries& f, double x, double y);

/// h_p = tan(π/2p) for 1 < p ≤ 2, cot(π/2p) for p > 2.
double hp_constant(double p);
/// m_p = 1/(p−1) for 1 < p ≤ 2, p − 1 for p > 2.
double mp_constant(double p);
/// p′ with 1/p + 1/p′ = 1.
double conjugate_exponent(double p);

}  // namespace dyadiclab
