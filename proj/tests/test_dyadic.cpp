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
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"

#include "dyadiclab/dyadic.hpp"

using namespace dyadiclab;

namespace {

// Direct formula, no shared code with the library: |I|^{-1/2}(1_{I+} − 1_{I−}).
double haar_oracle(int k, std::int64_t m, double x) {
  const double len = std::pow(0.5, k);
  const double a = m * len, mid = a + len / 2, b = a + len;
  if (x < a || x >= b) return 0.0;
  return (x >= mid ? 1.0 : -1.0) / std::sqrt(len);
}

std::vector<double> random_samples(int depth, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> s(std::size_t{1} << depth);
  for (double& v : s) v = g(rng);
  return s;
}

}  // namespace

TEST_CASE("interval navigation") {
  const DyadicInterval i{3, 5};
  CHECK(i.parent() == DyadicInterval{2, 2});
  CHECK(i.sibling() == DyadicInterval{3, 4});
  CHECK(i.left_child() == DyadicInterval{4, 10});
  CHECK(i.right_child() == DyadicInterval{4, 11});
  CHECK(i.is_right_child());
  CHECK(i.side() == Side::kPlus);
  CHECK(i.left() == 0.625);
  CHECK(i.length() == 0.125);
  CHECK(i.contains(0.7));
  CHECK_FALSE(i.contains(0.75));
  CHECK(DyadicInterval{1, 1}.contains(i));
  CHECK(DyadicInterval::containing(3, 0.7) == i);
  CHECK_THROWS(DyadicInterval::root().parent());
  CHECK_THROWS(DyadicInterval::containing(2, 1.0));
}

TEST_CASE("haar functions match the direct formula") {
  for (int k = 0; k < 5; ++k) {
    for (std::int64_t m = 0; m < (1 << k); ++m) {
      for (int j = 0; j < 64; ++j) {
        const double x = (j + 0.37) / 64;
        CHECK(haar_eval({k, m}, x) == doctest::Approx(haar_oracle(k, m, x)).epsilon(1e-15));
      }
    }
  }
  // Negative on the left child.
  CHECK(haar_eval(DyadicInterval::root(), 0.2) == -1.0);
  CHECK(haar_eval(DyadicInterval::root(), 0.8) == 1.0);
}

TEST_CASE("haar system is orthonormal at depth 5") {
  const int depth = 6;
  const int n = 1 << depth;
  std::vector<DyadicInterval> basis;
  for (int k = 0; k < depth - 1; ++k) {
    for (std::int64_t m = 0; m < (1 << k); ++m) basis.push_back({k, m});
  }
  for (const auto& a : basis) {
    for (const auto& b : basis) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) / n;
        sum += haar_oracle(a.level, a.index, x) * haar_oracle(b.level, b.index, x);
      }
      CHECK(sum / n == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("analysis against brute-force inner products") {
  const int depth = 5;
  const auto samples = random_samples(depth, 3);
  const HaarExpansion e = analyze(samples);
  const int n = 1 << depth;
  double mean = 0.0;
  for (double v : samples) mean += v / n;
  CHECK(e.mean() == doctest::Approx(mean).epsilon(1e-13));
  for (int k = 0; k < depth; ++k) {
    for (std::int64_t m = 0; m < (1 << k); ++m) {
      double c = 0.0;
      for (int i = 0; i < n; ++i) c += samples[i] * haar_oracle(k, m, (i + 0.5) / n) / n;
      CHECK(e.coefficient({k, m}) == doctest::Approx(c).epsilon(1e-12));
    }
  }
}

TEST_CASE("synthesis inverts analysis and Parseval holds") {
  for (int depth : {1, 4, 9}) {
    const auto samples = random_samples(depth, 11 + depth);
    const HaarExpansion e = analyze(samples);
    const auto back = synthesize_grid(e);
    double energy = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      CHECK(back[i] == doctest::Approx(samples[i]).epsilon(1e-12));
      energy += samples[i] * samples[i] / static_cast<double>(samples.size());
    }
    CHECK(e.squared_l2_norm() == doctest::Approx(energy).epsilon(1e-12));
    const double x = 0.3141;
    CHECK(synthesize(e, x) == doctest::Approx(samples[static_cast<std::size_t>(x * samples.size())]));
  }
  CHECK_THROWS(analyze(std::vector<double>(3, 1.0)));
}

TEST_CASE("finer synthesis grid repeats atom values") {
  const HaarExpansion e = analyze(random_samples(3, 5));
  const auto coarse = synthesize_grid(e);
  const auto fine = synthesize_grid(e, 5);
  for (std::size_t i = 0; i < fine.size(); ++i) CHECK(fine[i] == coarse[i / 4]);
}

TEST_CASE("tosses against Rademacher functions") {
  // ε_k = −r_{k+1} with r_n(x) = sign sin(2^n π x), at non-dyadic points.
  for (int k = 0; k < 8; ++k) {
    for (int j = 0; j < 200; ++j) {
      const double x = (j + 0.123) / 200;
      const int r = std::sin(std::ldexp(std::numbers::pi, k + 1) * x) > 0 ? 1 : -1;
      CHECK(toss(k, x) == -r);
    }
  }
}

TEST_CASE("signed tosses") {
  // 0.6 lies in [0.5, 0.75): level-1 interval is a right child, ε_1(0.6) = −1.
  CHECK(toss(1, 0.6) == -1);
  CHECK(toss_signed(1, Side::kPlus, 0.6) == -1);
  CHECK(toss_signed(1, Side::kMinus, 0.6) == 0);
  CHECK_THROWS(toss_signed(0, Side::kPlus, 0.6));
  for (int k = 1; k < 6; ++k) {
    for (int j = 0; j < 97; ++j) {
      const double x = (j + 0.5) / 97;
      CHECK(toss_signed(k, Side::kPlus, x) + toss_signed(k, Side::kMinus, x) == toss(k, x));
      // The σ-toss at step k is live exactly when ε_{k−1} = σ.
      const int prior = toss(k - 1, x);
      CHECK((toss_signed(k, Side::kPlus, x) != 0) == (prior == 1));
    }
  }
}

TEST_CASE("averages and martingale differences against the synthesized grid") {
  const int depth = 6;
  const HaarExpansion e = analyze(random_samples(depth, 21));
  const auto grid = synthesize_grid(e);
  for (int k = 0; k < depth; ++k) {
    for (std::int64_t m = 0; m < (1 << k); ++m) {
      const std::size_t width = std::size_t{1} << (depth - k);
      double avg = 0.0, left = 0.0, right = 0.0;
      for (std::size_t i = 0; i < width; ++i) {
        const double v = grid[m * width + i];
        avg += v / width;
        (i < width / 2 ? left : right) += v / (width / 2.0);
      }
      CHECK(average_over(e, {k, m}) == doctest::Approx(avg).epsilon(1e-12));
      CHECK(martingale_difference(e, {k, m}) == doctest::Approx(0.5 * (right - left)).epsilon(1e-12));
    }
  }
}

TEST_CASE("lp norms against the grid") {
  const int depth = 7;
  const HaarExpansion e = analyze(random_samples(depth, 8));
  const auto grid = synthesize_grid(e);
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    double sum = 0.0;
    for (double v : grid) sum += std::pow(std::abs(v), p) / grid.size();
    CHECK(lp_norm(e, p) == doctest::Approx(std::pow(sum, 1 / p)).epsilon(1e-12));
    double part = 0.0;
    for (std::size_t i = 32; i < 64; ++i) part += std::pow(std::abs(grid[i]), p) / grid.size();
    CHECK(lp_norm(e, p, {2, 1}) == doctest::Approx(std::pow(part, 1 / p)).epsilon(1e-12));
  }
  CHECK_THROWS(lp_norm(e, 0.5));
}

TEST_CASE("sparse expansions stay sparse") {
  HaarExpansion e(4);
  e.set_coefficient({2, 1}, 3.0);
  e.set_coefficient({2, 1}, 0.0);
  CHECK(e.coefficients().empty());
  CHECK_THROWS(e.set_coefficient({4, 0}, 1.0));
  CHECK(lp_norm(HaarExpansion::unit({3, 2}, 6), 2.0) == doctest::Approx(1.0));
}

TEST_CASE("serialization round trips") {
  const HaarExpansion e = analyze(random_samples(4, 9));
  CHECK(haar_from_json(to_json(e)) == e);
  CHECK(haar_from_json(nlohmann::json::parse(to_json(e).dump())) == e);
  const auto samples = random_samples(3, 2);
  std::stringstream s;
  write_step_csv(s, samples);
  CHECK(read_step_csv(s) == samples);
}
