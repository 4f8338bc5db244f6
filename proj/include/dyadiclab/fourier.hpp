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

#include <complex>
#include <vector>

#include "json.hpp"

namespace dyadiclab {

using Complex = std::complex<double>;

/**
 * Truncated bilateral Fourier series Σ_{|n|≤M} c_n e^{inθ} on the torus.
 * Coefficients are normalized so that c_n = (1/2π)∫ f(θ) e^{-inθ} dθ.
 */
class FourierSeries {
 public:
  explicit FourierSeries(int bandwidth = 0);

  static FourierSeries constant(double value);
  /// amplitude·cos(nθ) and amplitude·sin(nθ).
  static FourierSeries cosine(int n, double amplitude = 1.0);
  static FourierSeries sine(int n, double amplitude = 1.0);

  int bandwidth() const { return bandwidth_; }
  Complex coefficient(int n) const;
  void set_coefficient(int n, Complex value);

  /// True when c_{-n} = conj(c_n) for every n, to the given tolerance.
  bool is_real(double tolerance = 1e-14) const;
  double mean() const { return coefficient(0).real(); }

  Complex evaluate(double theta) const;
  /// Real part of evaluate(); the value of a real series.
  double operator()(double theta) const { return evaluate(theta).real(); }

  /// Same series, padded or truncated to a new bandwidth.
  FourierSeries with_bandwidth(int bandwidth) const;

  FourierSeries& operator+=(const FourierSeries& other);
  FourierSeries& operator*=(Complex factor);
  friend FourierSeries operator+(FourierSeries a, const FourierSeries& b) { return a += b; }
  friend FourierSeries operator*(Complex k, FourierSeries a) { return a *= k; }
  friend FourierSeries operator-(const FourierSeries& a, const FourierSeries& b) {
    return a + Complex(-1.0) * b;
  }

 private:
  int bandwidth_ = 0;
  std::vector<Complex> coeffs_;  // index n + bandwidth_
};

/// (1/2π)∫ f·conj(g), computed from coefficients.
Complex inner_product(const FourierSeries& f, const FourierSeries& g);

// {bandwidth, coeffs: [[n, re, im], ...]} with zero coefficients omitted.
nlohmann::json to_json(const FourierSeries& f);
FourierSeries fourier_from_json(const nlohmann::json& j);

}  // namespace dyadiclab
