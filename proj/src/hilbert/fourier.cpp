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

#include "dyadiclab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dyadiclab {

FourierSeries::FourierSeries(int bandwidth)
    : bandwidth_(bandwidth), coeffs_(2 * static_cast<std::size_t>(std::max(bandwidth, 0)) + 1) {
  if (bandwidth < 0) throw std::invalid_argument("negative bandwidth");
}

FourierSeries FourierSeries::constant(double value) {
  FourierSeries f(0);
  f.set_coefficient(0, value);
  return f;
}

FourierSeries FourierSeries::cosine(int n, double amplitude) {
  if (n < 0) throw std::invalid_argument("frequency must be non-negative");
  if (n == 0) return constant(amplitude);
  FourierSeries f(n);
  f.set_coefficient(n, amplitude / 2);
  f.set_coefficient(-n, amplitude / 2);
  return f;
}

FourierSeries FourierSeries::sine(int n, double amplitude) {
  if (n < 1) throw std::invalid_argument("sine frequency must be positive");
  FourierSeries f(n);
  f.set_coefficient(n, Complex(0.0, -amplitude / 2));
  f.set_coefficient(-n, Complex(0.0, amplitude / 2));
  return f;
}

Complex FourierSeries::coefficient(int n) const {
  if (n < -bandwidth_ || n > bandwidth_) return 0.0;
  return coeffs_[static_cast<std::size_t>(n + bandwidth_)];
}

void FourierSeries::set_coefficient(int n, Complex value) {
  if (n < -bandwidth_ || n > bandwidth_) {
    throw std::out_of_range("frequency " + std::to_string(n) + " beyond bandwidth " +
                            std::to_string(bandwidth_));
  }
  coeffs_[static_cast<std::size_t>(n + bandwidth_)] = value;
}

bool FourierSeries::is_real(double tolerance) const {
  for (int n = 0; n <= bandwidth_; ++n) {
    if (std::abs(coefficient(-n) - std::conj(coefficient(n))) > tolerance) return false;
  }
  return true;
}

Complex FourierSeries::evaluate(double theta) const {
  // Horner in e^{iθ} over the nonnegative and negative halves separately.
  const Complex w = std::polar(1.0, theta);
  Complex positive = 0.0;
  for (int n = bandwidth_; n >= 1; --n) positive = (positive + coefficient(n)) * w;
  const Complex wbar = std::conj(w);
  Complex negative = 0.0;
  for (int n = bandwidth_; n >= 1; --n) negative = (negative + coefficient(-n)) * wbar;
  return coefficient(0) + positive + negative;
}

FourierSeries FourierSeries::with_bandwidth(int bandwidth) const {
  FourierSeries out(bandwidth);
  const int m = std::min(bandwidth, bandwidth_);
  for (int n = -m; n <= m; ++n) out.set_coefficient(n, coefficient(n));
  return out;
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& other) {
  if (other.bandwidth_ > bandwidth_) *this = with_bandwidth(other.bandwidth_);
  for (int n = -other.bandwidth_; n <= other.bandwidth_; ++n) {
    coeffs_[static_cast<std::size_t>(n + bandwidth_)] += other.coefficient(n);
  }
  return *this;
}

FourierSeries& FourierSeries::operator*=(Complex factor) {
  for (auto& c : coeffs_) c *= factor;
  return *this;
}

Complex inner_product(const FourierSeries& f, const FourierSeries& g) {
  Complex sum = 0.0;
  const int m = std::min(f.bandwidth(), g.bandwidth());
  for (int n = -m; n <= m; ++n) sum += f.coefficient(n) * std::conj(g.coefficient(n));
  return sum;
}

nlohmann::json to_json(const FourierSeries& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int n = -f.bandwidth(); n <= f.bandwidth(); ++n) {
    const Complex c = f.coefficient(n);
    if (c != Complex(0.0)) coeffs.push_back({n, c.real(), c.imag()});
  }
  return {{"bandwidth", f.bandwidth()}, {"coeffs", coeffs}};
}

FourierSeries fourier_from_json(const nlohmann::json& j) {
  FourierSeries f(j.at("bandwidth").get<int>());
  for (const auto& row : j.at("coeffs")) {
    f.set_coefficient(row.at(0).get<int>(), {row.at(1).get<double>(), row.at(2).get<double>()});
  }
  return f;
}

}  // namespace dyadiclab
