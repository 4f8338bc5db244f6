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
#include <sstream>

#include "doctest.h"

#include "dyadiclab/averaging.hpp"

using namespace dyadiclab;

namespace {

// |J|^{-1/2}(1_{J₊} − 1_{J₋}) for J = [a, a + len).
double haar_on_line(double a, double len, double y) {
  if (y < a || y >= a + len) return 0.0;
  return (y >= a + len / 2 ? 1.0 : -1.0) / std::sqrt(len);
}

// Scans every scale r·2^{-j}, finds the finest interval holding both points and
// evaluates the two partial sums directly.
std::pair<double, double> kernel_oracle(double t, double x, double r, double alpha) {
  for (int j = 60; j >= -40; --j) {
    const double len = r * std::ldexp(1.0, -j);
    const double a = std::floor((t - alpha) / len);
    if (a != std::floor((x - alpha) / len)) continue;
    const double left = alpha + a * len, half = len / 2;
    const double minus = haar_on_line(left + half, half, t) * haar_on_line(left, half, x);
    const double plus = -haar_on_line(left, half, t) * haar_on_line(left + half, half, x);
    return {minus, plus};
  }
  return {0.0, 0.0};
}

}  // namespace

TEST_CASE("standard grid value") {
  CHECK(kernel_value(0.2, 0.8, {1.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-15));
  const auto term = kernel_term(0.2, 0.8, {1.0, 0.0});
  CHECK(term.separated);
  CHECK(term.level == 0);
  CHECK(term.length == 1.0);
  CHECK_FALSE(term.t_in_right);
  CHECK_THROWS(kernel_term(0.3, 0.3, {1.0, 0.0}));
}

TEST_CASE("kernel against the all-scale scan") {
  const double points[][2] = {{0.2, 0.7}, {0.1, 0.4}, {-0.3, 0.9}, {0.5, 0.45}, {3.3, 2.1}, {-5.0, -4.99}};
  for (const auto& pt : points) {
    for (double r : {1.0, 1.21, 1.5, 1.93}) {
      for (double alpha : {0.0, 0.17, -0.61, 2.4}) {
        const GridParams g{r, alpha};
        const auto [minus, plus] = kernel_oracle(pt[0], pt[1], r, alpha);
        CHECK(kernel_value(pt[0], pt[1], g, KernelPart::kMinus) == doctest::Approx(minus).epsilon(1e-12));
        CHECK(kernel_value(pt[0], pt[1], g, KernelPart::kPlus) == doctest::Approx(plus).epsilon(1e-12));
        CHECK(kernel_value(pt[0], pt[1], g) == doctest::Approx(minus + plus).epsilon(1e-12));
        CHECK(kernel_value(pt[0], pt[1], g, KernelPart::kEven) == doctest::Approx(minus - plus).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("kernel support and antisymmetry") {
  for (double alpha : {0.0, 0.3, -1.7}) {
    const GridParams g{1.37, alpha};
    // Points on either side of α never share an interval.
    CHECK_FALSE(kernel_term(alpha - 0.01, alpha + 0.01, g).separated);
    CHECK(kernel_value(alpha - 0.01, alpha + 0.01, g) == 0.0);
    for (double d : {0.05, 0.3, 1.1}) {
      const double t = alpha + 0.4, x = t + d;
      CHECK(kernel_value(t, x, g) == -kernel_value(x, t, g));
      // K₋ lives on t > x and K₊ on t < x.
      CHECK(kernel_value(t, x, g, KernelPart::kMinus) == 0.0);
      CHECK(kernel_value(x, t, g, KernelPart::kPlus) == 0.0);
      CHECK(std::abs(kernel_value(t, x, g)) == doctest::Approx(2 / kernel_term(t, x, g).length));
    }
  }
}

TEST_CASE("translation average against alpha sampling") {
  for (double r : {1.0, 1.3, 1.7}) {
    const auto exact = average_translations(0.1, 0.4, r);
    const double window = 64 * r;
    const int n = 400000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += kernel_value(0.1, 0.4, {r, (i + 0.5) * window / n});
    CHECK(std::abs(exact.value - sum / n) < 2e-3);
    CHECK(exact.cells > 0);
  }
  CHECK(average_translations(0.1, 0.4, 1.0).value == doctest::Approx(-0.4).epsilon(1e-13));
  CHECK_THROWS(average_translations(0.1, 0.4, 2.0));
  CHECK_THROWS(average_translations(0.1, 0.1, 1.0));
}

TEST_CASE("translation average is stable and depends on t - x only") {
  for (double r : {1.0, 1.45, 1.9}) {
    const double base = average_translations(0.2, 0.55, r).value;
    for (int doublings : {1, 3, 6}) {
      CHECK(average_translations(0.2, 0.55, r, KernelPart::kFull, doublings).value ==
            doctest::Approx(base).epsilon(1e-12));
    }
    CHECK(average_translations(-3.1, -2.75, r).value == doctest::Approx(base).epsilon(1e-12));
    CHECK(average_translations(0.55, 0.2, r).value == doctest::Approx(-base).epsilon(1e-14));
  }
}

TEST_CASE("homogeneity of degree -1") {
  const auto rows = homogeneity_check({0.1, 0.3, 0.77}, {1.0, 1.25, 1.5, 1.99});
  CHECK(rows.size() == 12);
  for (const auto& row : rows) {
    CHECK(row.ratio == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(row.antisymmetry_defect < 1e-13);
  }
}

TEST_CASE("full average over dilations and translations vanishes") {
  for (auto [t, x] : {std::pair{0.2, 0.7}, {0.1, 0.4}, {-0.3, 0.9}, {0.5, 0.45}}) {
    const double coarse = std::abs(average_full(t, x, 64));
    const double fine = std::abs(average_full(t, x, 1024));
    CHECK(fine < 1e-6);
    CHECK(fine < coarse);
    CHECK(average_full(t, x, 256, KernelPart::kMinus) + average_full(t, x, 256, KernelPart::kPlus) ==
          doctest::Approx(average_full(t, x, 256)).epsilon(1e-12));
  }
}

TEST_CASE("average rows and csv") {
  const auto row = average_row(0.2, 0.7, 128);
  CHECK(row.single_grid_scale == doctest::Approx(2.0));
  CHECK(row.ratio == doctest::Approx(row.average / row.single_grid_scale));
  CHECK(row.r_points == 128);
  std::ostringstream out;
  write_csv(out, {row});
  CHECK(out.str().rfind("t,x,r_points,alpha_points,average,single_grid_scale,ratio\n", 0) == 0);
}
