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

#include "dyadiclab/hilbert.hpp"
#include "dyadiclab/lowerbound.hpp"
#include "dyadiclab/normlab.hpp"

using namespace dyadiclab;

namespace {

NormOptions small_options(unsigned workers = 1) {
  NormOptions o;
  o.restarts = 8;
  o.max_iterations = 2000;
  o.workers = workers;
  return o;
}

double grid_norm(const HaarExpansion& e, double p) {
  double sum = 0.0;
  const auto grid = synthesize_grid(e);
  for (double v : grid) sum += std::pow(std::abs(v), p);
  return std::pow(sum / static_cast<double>(grid.size()), 1 / p);
}

}  // namespace

TEST_CASE("exact L2 norms") {
  for (int depth = 2; depth <= 8; ++depth) {
    CHECK(norm_p2_exact(ShiftKind::shift(), depth) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm_p2_exact(ShiftKind::classical(), depth) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm_p2_exact(ShiftKind::identity(), depth) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(norm_p2_exact(ShiftKind::shift(), 1) == 0.0);
  CHECK_THROWS(norm_p2_exact(ShiftKind::shift(), 13));
}

TEST_CASE("witness ratio against the synthesized grid") {
  HaarExpansion w(5, 0.3);
  w.set_coefficient({0, 0}, -1.0);
  w.set_coefficient({2, 1}, 0.7);
  w.set_coefficient({4, 9}, 2.0);
  for (const auto& kind : {ShiftKind::shift(), ShiftKind::classical()}) {
    for (double p : {1.5, 2.0, 4.0}) {
      const double expected = grid_norm(apply(kind, w), p) / grid_norm(w, p);
      CHECK(witness_ratio(kind, w, p) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("identity has norm one for every p") {
  for (double p : {1.3, 3.0}) {
    const auto est = norm_lp_lower_bound(ShiftKind::identity(), p, 4, small_options(), 1);
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("ascent at p = 2 reaches the exact norm") {
  const auto est = norm_lp_lower_bound(ShiftKind::shift(), 2.0, 5, small_options(), 3);
  CHECK(est.value <= 1.0 + 1e-12);
  CHECK(est.value >= 1.0 - 1e-8);
  CHECK(est.value == doctest::Approx(witness_ratio(ShiftKind::shift(), est.witness, 2.0)).epsilon(1e-14));
}

TEST_CASE("restart bookkeeping and determinism") {
  const auto a = norm_lp_lower_bound(ShiftKind::shift(), 4.0, 4, small_options(1), 17);
  REQUIRE(a.best_after_restart.size() == static_cast<std::size_t>(a.restarts));
  for (std::size_t i = 1; i < a.best_after_restart.size(); ++i) {
    CHECK(a.best_after_restart[i] >= a.best_after_restart[i - 1]);
  }
  CHECK(a.best_after_restart.back() == doctest::Approx(a.value).epsilon(1e-12));
  CHECK(a.iterations > 0);
  const auto b = norm_lp_lower_bound(ShiftKind::shift(), 4.0, 4, small_options(3), 17);
  CHECK(b.value == a.value);
  CHECK(b.witness == a.witness);
  CHECK(b.iterations == a.iterations);
}

TEST_CASE("extra starts are used") {
  const auto a = norm_lp_lower_bound(ShiftKind::shift(), 4.0, 4, small_options(), 5);
  auto opts = small_options();
  opts.restarts = 1;
  const auto b = norm_lp_lower_bound(ShiftKind::shift(), 4.0, 4, opts, 99, {a.witness});
  CHECK(b.value >= a.value - 1e-12);
  CHECK(b.restarts == 2);
}

TEST_CASE("bounds sit between one and the ceiling") {
  const double ceiling = hp_constant(4.0) / c0_constant();
  for (int depth = 2; depth <= 5; ++depth) {
    const auto row = sandwich_report(4.0, depth, small_options(), 2);
    CHECK(row.consistent);
    CHECK(row.lb_s_p <= ceiling);
    CHECK(row.ceiling == doctest::Approx(ceiling));
    CHECK(row.gap == doctest::Approx(row.h_p - row.lb_s_p));
    // ‖S₀h_{I₋}‖ = ‖h_{I₊}‖, so a single Haar function already gives 1.
    CHECK(row.lb_s_p >= 1.0 - 1e-12);
  }
}

TEST_CASE("dual witness certifies the conjugate exponent") {
  const auto est = norm_lp_lower_bound(ShiftKind::shift(), 4.0, 4, small_options(), 8);
  const auto dual = dual_witness(ShiftKind::shift(), est.witness, 4.0);
  const double q = conjugate_exponent(4.0);
  CHECK(witness_ratio(ShiftKind::shift(), dual, q) == doctest::Approx(est.value).epsilon(1e-6));
  const auto report = duality_check(ShiftKind::shift(), 4.0, 4, small_options(), 8, 2);
  CHECK(report.relative_gap < 1e-8);
  CHECK(report.primal.value >= report.independent_primal - 1e-12);
  CHECK(report.dual.value >= report.independent_dual - 1e-12);
}

TEST_CASE("refined witnesses keep their ratio") {
  const auto est = norm_lp_lower_bound(ShiftKind::shift(), 4.0, 3, small_options(), 4);
  const auto fine = refine(est.witness);
  CHECK(fine.depth() == 4);
  CHECK(witness_ratio(ShiftKind::shift(), fine, 4.0) == doctest::Approx(est.value).epsilon(1e-12));
}

TEST_CASE("sandwich table is monotone in depth") {
  const auto t = sandwich_table({4.0 / 3, 2.0, 4.0}, {2, 3, 4, 5}, small_options(), 6, 2);
  CHECK(t.rows.size() == 12);
  CHECK(t.consistent);
  CHECK(t.monotone_in_depth);
  CHECK(t.max_duality_gap < 1e-8);
  for (const auto& row : t.rows) {
    if (row.p == 2.0) CHECK(row.lb_s_p == doctest::Approx(1.0).epsilon(1e-8));
  }
  std::ostringstream out;
  write_csv(out, t.rows);
  CHECK(out.str().rfind("p,depth,h_p,lb_s_p,ceiling,gap,restarts,iterations\n", 0) == 0);
}

TEST_CASE("argument checks") {
  CHECK_THROWS(norm_lp_lower_bound(ShiftKind::shift(), 1.0, 4, small_options(), 1));
  CHECK_THROWS(norm_lp_lower_bound(ShiftKind::shift(), 2.0, 15, small_options(), 1));
}
