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

#include "dyadiclab/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dyadiclab {

namespace {

constexpr double kPi = std::numbers::pi;

// Distance from a to b on the circle of length 2π.
double circle_distance(double a, double b) { return std::abs(std::remainder(a - b, 2 * kPi)); }

}  // namespace

FourierSeries hilbert_spectral(const FourierSeries& f) {
  FourierSeries out(f.bandwidth());
  for (int n = 1; n <= f.bandwidth(); ++n) {
    out.set_coefficient(n, Complex(0.0, -1.0) * f.coefficient(n));
    out.set_coefficient(-n, Complex(0.0, 1.0) * f.coefficient(-n));
  }
  return out;
}

double hilbert_pv(const std::function<double(double)>& f, double x, int resolution,
                  std::span<const double> discontinuities) {
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  const double cell = kPi / resolution;
  for (double d : discontinuities) {
    if (circle_distance(x, d) < cell) {
      throw std::domain_error("evaluation point " + std::to_string(x) +
                              " within one cell of a discontinuity at " + std::to_string(d));
    }
  }
  double sum = 0.0;
  for (int j = 0; j < resolution; ++j) {
    const double s = (j + 0.5) * cell;
    sum += (f(x - s) - f(x + s)) / std::tan(s / 2);
  }
  return sum * cell / (2 * kPi);
}

int phi_generator(Side sign, double theta) {
  const double offset = sign == Side::kMinus ? 0.0 : kPi / 2;
  if (std::abs(std::remainder(theta - offset, kPi)) < 1e-12) {
    throw std::domain_error("square wave evaluated at one of its zeros: " + std::to_string(theta));
  }
  const double v = sign == Side::kMinus ? std::sin(theta) : std::cos(theta);
  return v > 0 ? 1 : -1;
}

std::array<double, 2> phi_discontinuities(Side sign) {
  if (sign == Side::kMinus) return {-kPi, 0.0};
  return {-kPi / 2, kPi / 2};
}

double hilbert_phi_closed_form(Side sign, double x) {
  const double shifted = sign == Side::kMinus ? x : x + kPi / 2;
  const double t = std::tan(shifted / 2);
  if (t == 0.0 || !std::isfinite(t)) throw std::domain_error("closed form singular at a jump");
  return (2 / kPi) * std::log(std::abs(t));
}

AnalyticCompletion::AnalyticCompletion(const FourierSeries& f) {
  taylor_.push_back(f.coefficient(0));
  for (int n = 1; n <= f.bandwidth(); ++n) taylor_.push_back(2.0 * f.coefficient(n));
  while (taylor_.size() > 1 && taylor_.back() == Complex(0.0)) taylor_.pop_back();
  for (std::size_t n = 1; n < taylor_.size(); ++n) {
    derivative_taylor_.push_back(static_cast<double>(n) * taylor_[n]);
  }
}

Complex AnalyticCompletion::value(Complex z) const { return value_and_derivative(z).first; }

std::pair<Complex, Complex> AnalyticCompletion::value_and_derivative(Complex z) const {
  // Real arithmetic, as in derivative().
  const double zr = z.real(), zi = z.imag();
  double vr = 0.0, vi = 0.0, dr = 0.0, di = 0.0;
  for (auto it = taylor_.rbegin(); it != taylor_.rend(); ++it) {
    const double ndr = dr * zr - di * zi + vr;
    const double ndi = dr * zi + di * zr + vi;
    const double nvr = vr * zr - vi * zi + it->real();
    const double nvi = vr * zi + vi * zr + it->imag();
    dr = ndr;
    di = ndi;
    vr = nvr;
    vi = nvi;
  }
  return {{vr, vi}, {dr, di}};
}

HarmonicPoint poisson_extend(const FourierSeries& f, double x, double y) {
  if (!(std::hypot(x, y) < 1.0)) throw std::domain_error("harmonic extension needs |z| < 1");
  if (!f.is_real(1e-12)) throw std::invalid_argument("harmonic extension needs a real series");
  const auto [value, derivative] = AnalyticCompletion(f).value_and_derivative({x, y});
  HarmonicPoint h;
  h.x = x;
  h.y = y;
  h.value = value.real();
  h.conjugate_value = value.imag();
  // Cauchy–Riemann: ∇Re F = (Re F′, −Im F′), ∇Im F = (Im F′, Re F′).
  h.gradient = {derivative.real(), -derivative.imag()};
  h.conjugate_gradient = {derivative.imag(), derivative.real()};
  return h;
}

double hp_constant(double p) {
  if (!(p > 1.0)) throw std::domain_error("h_p requires p > 1");
  const double angle = kPi / (2 * p);
  return p <= 2.0 ? std::tan(angle) : 1.0 / std::tan(angle);
}

double mp_constant(double p) {
  if (!(p > 1.0)) throw std::domain_error("m_p requires p > 1");
  return p <= 2.0 ? 1.0 / (p - 1.0) : p - 1.0;
}

double conjugate_exponent(double p) {
  if (!(p > 1.0)) throw std::domain_error("conjugate exponent requires p > 1");
  return p / (p - 1.0);
}

}  // namespace dyadiclab
