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

#include "dyadiclab/normlab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <Eigen/SVD>

#include "dyadiclab/hilbert.hpp"
#include "dyadiclab/lowerbound.hpp"
#include "dyadiclab/philox.hpp"

namespace dyadiclab {

namespace {

using Vec = std::vector<double>;

// Atom values → coefficients in basis slot order (slot 0 mean, slot 2^k + m).
void analyze_into(const Vec& values, Vec& coeffs, Vec& scratch) {
  const std::size_t n = values.size();
  scratch = values;
  for (std::size_t count = n / 2; count >= 1; count /= 2) {
    const double sqrt_length = std::sqrt(1.0 / static_cast<double>(count));
    for (std::size_t m = 0; m < count; ++m) {
      const double left = scratch[2 * m];
      const double right = scratch[2 * m + 1];
      coeffs[count + m] = sqrt_length * 0.5 * (right - left);
      scratch[m] = 0.5 * (left + right);
    }
  }
  coeffs[0] = scratch[0];
}

void synthesize_into(const Vec& coeffs, Vec& values) {
  const std::size_t n = coeffs.size();
  values[0] = coeffs[0];
  for (std::size_t count = 1; count < n; count *= 2) {
    const double amplitude = std::sqrt(static_cast<double>(count));
    for (std::size_t m = count; m-- > 0;) {
      const double v = values[m];
      const double c = coeffs[count + m];
      values[2 * m] = v - c * amplitude;
      values[2 * m + 1] = v + c * amplitude;
    }
  }
}

// The operator in coefficient space, with its transpose.
class CoefficientOperator {
 public:
  CoefficientOperator(const ShiftKind& kind, int depth) : kind_(kind), n_(basis_dimension(depth)) {
    if (kind.tag == ShiftKind::Tag::kSignMultiplier) {
      diagonal_.assign(n_, 1.0);
      for (std::size_t slot = 1; slot < n_; ++slot) {
        diagonal_[slot] = kind.sign_at(basis_interval(slot));
      }
    } else if (kind.tag == ShiftKind::Tag::kClassical) {
      dense_ = as_matrix(kind, depth).entries;
    }
  }

  void apply(const Vec& in, Vec& out, bool transpose) const {
    if (is_shift()) {
      // h_{I₊} ↦ h_{I₋}, h_{I₋} ↦ −h_{I₊}; the transpose is the negative.
      const double s = transpose ? -1.0 : 1.0;
      out[0] = out[1] = 0.0;
      for (std::size_t slot = 2; slot < n_; slot += 2) {
        out[slot] = s * in[slot + 1];
        out[slot + 1] = -s * in[slot];
      }
    } else if (!diagonal_.empty()) {
      for (std::size_t i = 0; i < n_; ++i) out[i] = diagonal_[i] * in[i];
    } else if (dense_.size() > 0) {
      Eigen::Map<const Eigen::VectorXd> x(in.data(), static_cast<Eigen::Index>(n_));
      Eigen::Map<Eigen::VectorXd> y(out.data(), static_cast<Eigen::Index>(n_));
      if (transpose) {
        y.noalias() = dense_.transpose() * x;
      } else {
        y.noalias() = dense_ * x;
      }
    } else {
      out = in;
    }
  }

 private:
  bool is_shift() const {
    return kind_.tag == ShiftKind::Tag::kShift || kind_.tag == ShiftKind::Tag::kShiftLineTruncated;
  }

  ShiftKind kind_;
  std::size_t n_;
  Vec diagonal_;
  Eigen::MatrixXd dense_;
};

double lp_power(const Vec& v, double p) {
  double sum = 0.0;
  for (double x : v) sum += std::pow(std::abs(x), p);
  return sum / static_cast<double>(v.size());
}

struct Workspace {
  explicit Workspace(std::size_t n) : coeffs(n), image(n), values(n), scratch(n) {}
  Vec coeffs, image, values, scratch;
};

// Atom values of Op f for atom values f; the transpose acts the same way with
// Mᵀ because the synthesis matrix is orthogonal up to a scalar.
void grid_apply(const CoefficientOperator& op, const Vec& f, Vec& out, bool transpose,
                Workspace& w) {
  analyze_into(f, w.coeffs, w.scratch);
  op.apply(w.coeffs, w.image, transpose);
  synthesize_into(w.image, out);
}

double phi(double y, double p) { return std::copysign(std::pow(std::abs(y), p - 1.0), y); }

struct RestartResult {
  double value = 0.0;
  Vec witness;
  long iterations = 0;
  bool converged = false;
};

RestartResult ascend(const CoefficientOperator& op, double p, Vec f, const NormOptions& options) {
  const std::size_t n = f.size();
  Workspace w(n);
  Vec image(n), grad(n), trial(n), back(n);

  auto ratio_of = [&](const Vec& g, Vec& img) {
    const double denom = lp_power(g, p);
    if (!(denom > 0.0)) return 0.0;
    grid_apply(op, g, img, false, w);
    return std::pow(lp_power(img, p) / denom, 1.0 / p);
  };
  auto normalize = [&](Vec& g) {
    const double norm = std::pow(lp_power(g, p), 1.0 / p);
    if (norm > 0.0) {
      for (double& x : g) x /= norm;
    }
  };

  RestartResult r;
  normalize(f);
  double value = ratio_of(f, image);
  double step = options.initial_step;
  for (int it = 0; it < options.max_iterations; ++it) {
    ++r.iterations;
    // ∇ log(‖Bf‖_p/‖f‖_p) = Bᵀφ(Bf)/‖Bf‖_p^p − φ(f)/‖f‖_p^p (up to the atom measure).
    const double image_power = lp_power(image, p) * static_cast<double>(n);
    const double f_power = lp_power(f, p) * static_cast<double>(n);
    if (!(image_power > 0.0)) break;
    for (std::size_t i = 0; i < n; ++i) trial[i] = phi(image[i], p);
    grid_apply(op, trial, back, true, w);
    double grad_norm = 0.0, f_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      grad[i] = back[i] / image_power - phi(f[i], p) / f_power;
      grad_norm += grad[i] * grad[i];
      f_norm += f[i] * f[i];
    }
    if (grad_norm == 0.0) {
      r.converged = true;
      break;
    }
    const double scale = std::sqrt(f_norm / grad_norm);
    bool improved = false;
    while (step >= options.min_step) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = f[i] + step * scale * grad[i];
      normalize(trial);
      Vec trial_image(n);
      const double candidate = ratio_of(trial, trial_image);
      if (candidate > value) {
        f.swap(trial);
        image.swap(trial_image);
        value = candidate;
        improved = true;
        step = std::min(options.initial_step, 2 * step);
        break;
      }
      step /= 2;
    }
    if (!improved) {
      r.converged = true;
      break;
    }
  }
  r.value = value;
  r.witness = std::move(f);
  return r;
}

Vec gaussian_start(std::uint64_t seed, std::uint64_t restart, std::size_t n) {
  const PathBits bits(seed, restart);
  Vec f(n);
  for (std::size_t i = 0; i < n; i += 2) {
    // Box–Muller on two uniforms per pair of atoms.
    const double radius = std::sqrt(-2.0 * std::log(bits.uniform(i)));
    const double angle = 2.0 * std::numbers::pi * bits.uniform(i + 1);
    f[i] = radius * std::cos(angle);
    if (i + 1 < n) f[i + 1] = radius * std::sin(angle);
  }
  return f;
}

Vec atom_values(const HaarExpansion& e, int depth) {
  if (e.depth() > depth) throw std::invalid_argument("start expansion deeper than the search space");
  return synthesize_grid(e, depth);
}

}  // namespace

double norm_p2_exact(const ShiftKind& kind, int depth) {
  if (depth < 0 || depth > 12) throw std::invalid_argument("norm_p2_exact requires depth <= 12");
  const OperatorMatrix m = as_matrix(kind, depth);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m.entries);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

NormEstimate norm_lp_lower_bound(const ShiftKind& kind, double p, int depth,
                                 const NormOptions& options, std::uint64_t seed,
                                 const std::vector<HaarExpansion>& starts) {
  if (!(p > 1.0)) throw std::invalid_argument("norm_lp_lower_bound requires p > 1");
  if (depth < 1 || depth > 14) throw std::invalid_argument("depth must lie in [1, 14]");
  if (options.restarts < 0 || options.max_iterations < 1) {
    throw std::invalid_argument("invalid optimizer options");
  }
  const CoefficientOperator op(kind, depth);
  const std::size_t n = basis_dimension(depth);
  const std::size_t total = starts.size() + static_cast<std::size_t>(options.restarts);
  if (total == 0) throw std::invalid_argument("no restarts requested");

  std::vector<RestartResult> results(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      Vec f = i < starts.size() ? atom_values(starts[i], depth)
                                : gaussian_start(seed, i - starts.size(), n);
      results[i] = ascend(op, p, std::move(f), options);
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(total)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  NormEstimate est;
  est.p = p;
  est.depth = depth;
  est.restarts = static_cast<int>(total);
  std::size_t best = 0;
  double running = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    est.iterations += results[i].iterations;
    if (!results[i].converged) ++est.unconverged;
    if (results[i].value > results[best].value) best = i;
    running = std::max(running, results[i].value);
    est.best_after_restart.push_back(running);
  }
  Workspace w(n);
  analyze_into(results[best].witness, w.coeffs, w.scratch);
  est.witness = from_vector(Eigen::Map<const Eigen::VectorXd>(w.coeffs.data(),
                                                               static_cast<Eigen::Index>(n)),
                            depth);
  est.value = witness_ratio(kind, est.witness, p);
  return est;
}

double witness_ratio(const ShiftKind& kind, const HaarExpansion& witness, double p) {
  const double denom = lp_norm(witness, p);
  if (!(denom > 0.0)) throw std::domain_error("witness has zero norm");
  return lp_norm(apply(kind, witness), p) / denom;
}

HaarExpansion dual_witness(const ShiftKind& kind, const HaarExpansion& witness, double p) {
  std::vector<double> values = synthesize_grid(apply(kind, witness), witness.depth());
  for (double& v : values) v = phi(v, p);
  return analyze(values);
}

HaarExpansion refine(const HaarExpansion& witness) { return witness.with_depth(witness.depth() + 1); }

namespace {

HaarExpansion refine_to(const HaarExpansion& witness, int depth) {
  HaarExpansion out = witness;
  while (out.depth() < depth) out = refine(out);
  return out;
}

}  // namespace

DualityReport duality_check(const ShiftKind& kind, double p, int depth, const NormOptions& options,
                            std::uint64_t seed, int dual_restarts) {
  const double q = conjugate_exponent(p);
  NormOptions slow = options;
  slow.restarts = dual_restarts;
  const NormOptions& opt_p = p >= 2 ? options : slow;
  const NormOptions& opt_q = q >= 2 ? options : slow;
  const NormEstimate alone_p = norm_lp_lower_bound(kind, p, depth, opt_p, seed);
  const NormEstimate alone_q = norm_lp_lower_bound(kind, q, depth, opt_q, seed + 1);

  DualityReport r;
  r.independent_primal = alone_p.value;
  r.independent_dual = alone_q.value;
  NormOptions reseed = options;
  reseed.restarts = 0;
  r.primal = norm_lp_lower_bound(kind, p, depth, reseed, seed,
                                 {alone_p.witness, dual_witness(kind, alone_q.witness, q)});
  r.dual = norm_lp_lower_bound(kind, q, depth, reseed, seed + 1,
                               {alone_q.witness, dual_witness(kind, r.primal.witness, p)});
  if (r.dual.value > r.primal.value) {
    r.primal = norm_lp_lower_bound(kind, p, depth, reseed, seed,
                                   {r.primal.witness, dual_witness(kind, r.dual.witness, q)});
  }
  r.relative_gap = std::abs(r.primal.value - r.dual.value) / std::max(r.primal.value, r.dual.value);
  return r;
}

SandwichRow sandwich_row(const NormEstimate& estimate) {
  SandwichRow row;
  row.p = estimate.p;
  row.depth = estimate.depth;
  row.h_p = hp_constant(estimate.p);
  row.lb_s_p = estimate.value;
  row.ceiling = row.h_p / c0_constant();
  row.gap = row.h_p - row.lb_s_p;
  row.restarts = estimate.restarts;
  row.iterations = estimate.iterations;
  row.consistent = row.lb_s_p <= row.ceiling + 1e-9;
  return row;
}

SandwichRow sandwich_report(double p, int depth, const NormOptions& options, std::uint64_t seed) {
  return sandwich_row(norm_lp_lower_bound(ShiftKind::shift(), p, depth, options, seed));
}

SandwichTable sandwich_table(const std::vector<double>& exponents, const std::vector<int>& depths,
                             const NormOptions& options, std::uint64_t seed, int slow_restarts) {
  for (std::size_t i = 1; i < depths.size(); ++i) {
    if (depths[i] <= depths[i - 1]) throw std::invalid_argument("depths must be increasing");
  }
  const ShiftKind s0 = ShiftKind::shift();
  const std::size_t count = exponents.size();
  auto conjugate_slot = [&](std::size_t i) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < count; ++j) {
      if (j != i && std::abs(exponents[j] - conjugate_exponent(exponents[i])) < 1e-12) return j;
    }
    return std::nullopt;
  };
  // Exponents ≥ 2 first: their ascent is well conditioned and seeds the others.
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return (exponents[a] >= 2) > (exponents[b] >= 2); });

  SandwichTable table;
  std::vector<std::optional<NormEstimate>> previous(count);
  for (int depth : depths) {
    std::vector<std::optional<NormEstimate>> current(count);
    for (std::size_t i : order) {
      const double p = exponents[i];
      NormOptions opt = options;
      if (p < 2) opt.restarts = slow_restarts;
      std::vector<HaarExpansion> starts;
      if (previous[i]) starts.push_back(refine_to(previous[i]->witness, depth));
      if (auto j = conjugate_slot(i); j && current[*j]) {
        starts.push_back(dual_witness(s0, current[*j]->witness, exponents[*j]));
      }
      current[i] = norm_lp_lower_bound(s0, p, depth, opt, seed + 1000 * i + depth, starts);
    }
    // Second pass so that both members of a conjugate pair have seen each other.
    for (std::size_t i : order) {
      auto j = conjugate_slot(i);
      if (!j || exponents[i] < 2) continue;
      NormOptions none = options;
      none.restarts = 0;
      NormEstimate first = std::move(*current[i]);
      NormEstimate again = norm_lp_lower_bound(
          s0, exponents[i], depth, none, seed,
          {first.witness, dual_witness(s0, current[*j]->witness, exponents[*j])});
      again.iterations += first.iterations;
      again.restarts += first.restarts;
      again.unconverged += first.unconverged;
      for (double& v : again.best_after_restart) v = std::max(v, first.best_after_restart.back());
      first.best_after_restart.insert(first.best_after_restart.end(),
                                      again.best_after_restart.begin(), again.best_after_restart.end());
      again.best_after_restart = std::move(first.best_after_restart);
      current[i] = std::move(again);
    }
    for (std::size_t i = 0; i < count; ++i) {
      const SandwichRow row = sandwich_row(*current[i]);
      table.consistent = table.consistent && row.consistent;
      if (previous[i]) {
        table.monotone_in_depth = table.monotone_in_depth && row.lb_s_p >= previous[i]->value - 1e-12;
      }
      if (auto j = conjugate_slot(i)) {
        const double a = current[i]->value, b = current[*j]->value;
        table.max_duality_gap = std::max(table.max_duality_gap, std::abs(a - b) / std::max(a, b));
      }
      table.rows.push_back(row);
      table.estimates.push_back(*current[i]);
    }
    previous = std::move(current);
  }
  return table;
}

void write_csv(std::ostream& out, const std::vector<SandwichRow>& rows) {
  out << "p,depth,h_p,lb_s_p,ceiling,gap,restarts,iterations\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.p << ',' << r.depth << ',' << r.h_p << ',' << r.lb_s_p << ',' << r.ceiling << ','
        << r.gap << ',' << r.restarts << ',' << r.iterations << '\n';
  }
}

}  // namespace dyadiclab
