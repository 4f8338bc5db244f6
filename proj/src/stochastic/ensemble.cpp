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

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "dyadiclab/hilbert.hpp"
#include "dyadiclab/philox.hpp"
#include "dyadiclab/stochastic.hpp"

namespace dyadiclab {

namespace {

struct PathOutcome {
  double mf = 0.0;
  double mg = 0.0;
  double identity_defect = 0.0;
  double covariation = 0.0;
  double drift_plus = 0.0;
  double drift_minus = 0.0;
  bool stopped = false;
  bool outside_disc = false;
};

struct Moments {
  double sum = 0.0;
  double sum_squares = 0.0;
  void add(double v) {
    sum += v;
    sum_squares += v * v;
  }
  void merge(const Moments& o) {
    sum += o.sum;
    sum_squares += o.sum_squares;
  }
  MeanEstimate estimate(std::int64_t n) const {
    const double mean = sum / n;
    const double var = n > 1 ? std::max(0.0, (sum_squares - n * mean * mean) / (n - 1)) : 0.0;
    return {mean, std::sqrt(var / n)};
  }
};

struct Aggregate {
  std::vector<Moments> mf_power;
  std::vector<Moments> mg_power;
  Moments mf, mg, covariation, drift_plus, drift_minus;
  std::int64_t paths = 0;
  std::int64_t unstopped = 0;
  std::int64_t outside_disc = 0;
  double max_identity_defect = 0.0;

  explicit Aggregate(std::size_t exponents) : mf_power(exponents), mg_power(exponents) {}

  void add(const PathOutcome& o, std::span<const double> exponents) {
    for (std::size_t e = 0; e < exponents.size(); ++e) {
      mf_power[e].add(std::pow(std::abs(o.mf), exponents[e]));
      mg_power[e].add(std::pow(std::abs(o.mg), exponents[e]));
    }
    mf.add(o.mf);
    mg.add(o.mg);
    covariation.add(o.covariation);
    drift_plus.add(o.drift_plus);
    drift_minus.add(o.drift_minus);
    ++paths;
    unstopped += o.stopped ? 0 : 1;
    outside_disc += o.outside_disc ? 1 : 0;
    max_identity_defect = std::max(max_identity_defect, o.identity_defect);
  }

  void merge(const Aggregate& o) {
    for (std::size_t e = 0; e < mf_power.size(); ++e) {
      mf_power[e].merge(o.mf_power[e]);
      mg_power[e].merge(o.mg_power[e]);
    }
    mf.merge(o.mf);
    mg.merge(o.mg);
    covariation.merge(o.covariation);
    drift_plus.merge(o.drift_plus);
    drift_minus.merge(o.drift_minus);
    paths += o.paths;
    unstopped += o.unstopped;
    outside_disc += o.outside_disc;
    max_identity_defect = std::max(max_identity_defect, o.max_identity_defect);
  }
};

MCEstimate lp_estimate(const Moments& m, std::int64_t n, double p) {
  const MeanEstimate mean = m.estimate(n);
  MCEstimate out;
  out.p = p;
  out.paths = n;
  out.value = std::pow(mean.mean, 1.0 / p);
  // d(m^{1/p})/dm = (1/p) m^{1/p − 1}.
  out.standard_error =
      mean.mean > 0 ? mean.standard_error * std::pow(mean.mean, 1.0 / p - 1.0) / p : 0.0;
  return out;
}

// Sequential reader of a path's toss bits. Blocks are generated in batches
// of independent counters, which keeps the generator's round latency off the
// critical path of the walk.
class TossReader {
 public:
  explicit TossReader(const PathBits& bits) : bits_(bits) {}
  std::uint64_t word(std::uint64_t w) {
    if (w < first_word_ || w >= first_word_ + kWords) refill(w);
    return buffer_[w - first_word_];
  }
  int toss(std::uint64_t t) { return (word(t / 64) >> (t % 64)) & 1; }

 private:
  static constexpr std::uint64_t kBlocks = 16;
  static constexpr std::uint64_t kWords = 2 * kBlocks;

  void refill(std::uint64_t w) {
    first_word_ = w - w % kWords;
    const std::uint64_t first_block = first_word_ / 2;
    for (std::uint64_t b = 0; b < kBlocks; ++b) {
      const auto out = bits_.block(first_block + b);
      buffer_[2 * b] = out[0];
      buffer_[2 * b + 1] = out[1];
    }
  }

  const PathBits& bits_;
  std::uint64_t first_word_ = ~std::uint64_t{0} - kWords;
  std::array<std::uint64_t, kWords> buffer_{};
};

bool outside_closed_disc(std::int64_t i, std::int64_t j, const SimConfig& c) {
  return static_cast<double>(i * i + j * j) * 2 * c.delta > 1.0;
}

// One fine step at a time, F′ evaluated at the pre-increment position.
PathOutcome simulate_general(const AnalyticCompletion& completion, const SimConfig& c,
                             const PathBits& bits) {
  TossReader reader(bits);
  const double threshold = c.stop_radius_squared();
  PathOutcome o;
  o.mf = completion.value(0.0).real();
  double mg_rotated = 0.0;
  std::int64_t i = 0, j = 0;
  std::uint64_t word = reader.word(0);
  int memory = static_cast<int>(word & 1);
  std::uint64_t t = 1;
  for (std::int64_t n = 0;; ++n) {
    if (static_cast<double>(i * i + j * j) >= threshold) {
      o.stopped = true;
      break;
    }
    if (n == c.coarse_steps) break;
    for (int s = 0; s < c.N; ++s, ++t) {
      if (t % 64 == 0) word = reader.word(t / 64);
      const int bit = static_cast<int>((word >> (t % 64)) & 1);
      const int sign = 2 * bit - 1;
      const Complex d =
          completion.derivative({c.step * static_cast<double>(i), c.step * static_cast<double>(j)});
      const double a = d.real();
      const double b = d.imag();
      // Branch-free: exactly one of db1, db2 is nonzero, so every product
      // below equals its single-direction counterpart bit for bit.
      const double horizontal = memory;
      const double db1 = horizontal * sign * c.step;
      const double db2 = (1.0 - horizontal) * sign * c.step;
      const double df = a * db1 - b * db2;  // ∇f·dB, ∇f = (a, −b)
      const double dg = b * db1 + a * db2;  // ∇^⊥f·dB, ∇^⊥f = (b, a)
      o.mf += df;
      o.mg += dg;
      mg_rotated += a * db2 + (-b) * (-db1);  // ∇f·dB^⊤, dB^⊤ = (dB², −dB¹)
      o.covariation += df * dg;
      o.drift_plus += horizontal * df;
      o.drift_minus += (1.0 - horizontal) * df;
      i += memory * sign;
      j += (1 - memory) * sign;
      memory = bit;
    }
  }
  o.outside_disc = outside_closed_disc(i, j, c);
  o.identity_defect = std::abs(o.mg - mg_rotated);
  return o;
}

// Affine F: M^f and M^g only depend on the stopped position, and coarse
// displacements come from popcounts over N-bit groups of the toss stream.
// While the walk is far from the stopping circle, whole 64-step words are
// consumed at once: each fine step moves one lattice unit, so a margin of
// more than 64 units rules out stopping inside the word.
PathOutcome simulate_affine(Complex a0, Complex a1, const SimConfig& c, const PathBits& bits) {
  TossReader reader(bits);
  const int N = c.N;
  const std::int64_t groups_per_word = 64 / N;
  const std::uint64_t mask = N == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << N) - 1;
  const double threshold = c.stop_radius_squared();
  const double inner = std::max(0.0, std::sqrt(threshold) - 66.0);
  const double inner_squared = inner * inner;

  std::int64_t i = 0, j = 0, horizontal_steps = 0;
  std::int64_t n = 0;
  bool stopped = false;
  // Memory tosses of a block are ε_s..ε_{s+L−1}; the matching sign tosses are
  // shifted by one, so the first bit after the block is needed too.
  auto advance = [&](std::uint64_t prev, std::uint64_t cur, std::uint64_t block_mask, int length) {
    const int ph = std::popcount(prev);
    i += 2 * std::popcount(prev & cur) - ph;
    j += 2 * std::popcount(~prev & cur & block_mask) - (length - ph);
    horizontal_steps += ph;
  };
  for (;;) {
    const double r2 = static_cast<double>(i * i + j * j);
    if (r2 >= threshold) {
      stopped = true;
      break;
    }
    if (n == c.coarse_steps) break;
    const auto first = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(N);
    const std::uint64_t w = first / 64;
    const bool aligned = first % 64 == 0;
    if (aligned && r2 < inner_squared) {
      std::uint64_t word = w;
      std::uint64_t prev = reader.word(word);
      while (n + groups_per_word <= c.coarse_steps &&
             static_cast<double>(i * i + j * j) < inner_squared) {
        const std::uint64_t following = reader.word(word + 1);
        advance(prev, (prev >> 1) | ((following & 1) << 63), ~std::uint64_t{0}, 64);
        n += groups_per_word;
        prev = following;
        ++word;
      }
      if (word != w) continue;
    }
    const std::uint64_t shift = first % 64;
    const std::uint64_t prev = (reader.word(w) >> shift) & mask;
    const std::uint64_t after = first + static_cast<std::uint64_t>(N);
    const std::uint64_t next_bit = (reader.word(after / 64) >> (after % 64)) & 1;
    advance(prev, (prev >> 1) | (next_bit << (N - 1)), mask, N);
    ++n;
  }
  PathOutcome o;
  o.stopped = stopped;
  const double x = c.step * static_cast<double>(i);
  const double y = c.step * static_cast<double>(j);
  const Complex w = a1 * Complex(x, y);
  o.mf = a0.real() + w.real();
  o.mg = w.imag();
  o.identity_defect = std::abs(o.mg - (a1.real() * y + a1.imag() * x));
  const std::int64_t vertical_steps = n * N - horizontal_steps;
  o.covariation = a1.real() * a1.imag() * 2 * c.delta *
                  static_cast<double>(horizontal_steps - vertical_steps);
  o.drift_plus = a1.real() * x;
  o.drift_minus = -a1.imag() * y;
  o.outside_disc = outside_closed_disc(i, j, c);
  return o;
}

}  // namespace

bool MeanEstimate::within(double sigmas, double target) const {
  return std::abs(mean - target) <= sigmas * standard_error;
}

const MCEstimate& EnsembleResult::mf_at(double p) const {
  for (std::size_t e = 0; e < exponents.size(); ++e) {
    if (exponents[e] == p) return mf[e];
  }
  throw std::out_of_range("exponent not simulated");
}

const MCEstimate& EnsembleResult::mg_at(double p) const {
  for (std::size_t e = 0; e < exponents.size(); ++e) {
    if (exponents[e] == p) return mg[e];
  }
  throw std::out_of_range("exponent not simulated");
}

EnsembleResult simulate_ensemble(const FourierSeries& f, const SimConfig& config,
                                 std::span<const double> exponents, const McOptions& options) {
  if (!f.is_real(1e-12)) throw std::invalid_argument("martingales need a real series");
  if (options.paths < 1) throw std::invalid_argument("need at least one path");
  if (options.chunk_size < 1) throw std::invalid_argument("chunk size must be positive");
  for (double p : exponents) {
    if (!(p >= 1.0)) throw std::invalid_argument("exponents must be at least 1");
  }
  const AnalyticCompletion completion(f);
  const bool fast = options.fast_kernel && completion.is_affine() && 64 % config.N == 0;
  const auto taylor = completion.taylor();
  const Complex a0 = taylor[0];
  const Complex a1 = taylor.size() > 1 ? taylor[1] : Complex(0.0);

  const std::int64_t chunks = (options.paths + options.chunk_size - 1) / options.chunk_size;
  std::vector<Aggregate> partial(static_cast<std::size_t>(chunks), Aggregate(exponents.size()));
  std::atomic<std::int64_t> next_chunk{0};
  auto worker = [&] {
    for (std::int64_t k = next_chunk++; k < chunks; k = next_chunk++) {
      Aggregate& agg = partial[static_cast<std::size_t>(k)];
      const std::int64_t begin = k * options.chunk_size;
      const std::int64_t end = std::min(options.paths, begin + options.chunk_size);
      for (std::int64_t path = begin; path < end; ++path) {
        const PathBits bits(options.seed, static_cast<std::uint64_t>(path));
        agg.add(fast ? simulate_affine(a0, a1, config, bits)
                     : simulate_general(completion, config, bits),
                exponents);
      }
    }
  };
  const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(chunks)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  Aggregate total(exponents.size());
  for (const auto& a : partial) total.merge(a);

  EnsembleResult r;
  r.config = config;
  r.paths = total.paths;
  r.seed = options.seed;
  r.kernel = fast ? "affine" : "general";
  r.exponents.assign(exponents.begin(), exponents.end());
  for (std::size_t e = 0; e < exponents.size(); ++e) {
    r.mf.push_back(lp_estimate(total.mf_power[e], total.paths, exponents[e]));
    r.mg.push_back(lp_estimate(total.mg_power[e], total.paths, exponents[e]));
  }
  r.unstopped = total.unstopped;
  r.outside_disc = total.outside_disc;
  r.max_identity_defect = total.max_identity_defect;
  r.terminal_mf = total.mf.estimate(total.paths);
  r.terminal_mg = total.mg.estimate(total.paths);
  r.covariation = total.covariation.estimate(total.paths);
  r.drift_after_plus = total.drift_plus.estimate(total.paths);
  r.drift_after_minus = total.drift_minus.estimate(total.paths);
  return r;
}

MCEstimate mc_lp_norm(const FourierSeries& f, double p, const SimConfig& config,
                      const McOptions& options) {
  const double exponents[] = {p};
  return simulate_ensemble(f, config, exponents, options).mf.front();
}

ConvergenceStudy convergence_study(const FourierSeries& f, double p, std::span<const int> n_list,
                                   double T, const McOptions& options, bool allow_wide_steps,
                                   double relative_tolerance) {
  for (std::size_t k = 1; k < n_list.size(); ++k) {
    if (n_list[k] <= n_list[k - 1]) throw std::invalid_argument("N list must be increasing");
  }
  ConvergenceStudy study;
  study.p = p;
  study.relative_tolerance = relative_tolerance;
  const double reference = reference_boundary_norm(f, p);
  const double exponents[] = {p};
  for (int N : n_list) {
    const SimConfig config = SimConfig::make(N, T, allow_wide_steps);
    const EnsembleResult e = simulate_ensemble(f, config, exponents, options);
    ConvergenceRow row;
    row.N = N;
    row.T = T;
    row.paths = e.paths;
    row.estimate = e.mf.front().value;
    row.reference = reference;
    row.bias = std::abs(row.estimate - reference);
    row.standard_error = e.mf.front().standard_error;
    row.unstopped_fraction = e.unstopped_fraction();
    row.wide_steps = config.wide_steps;
    row.outside_disc = e.outside_disc;
    row.max_identity_defect = e.max_identity_defect;
    row.kernel = e.kernel;
    study.rows.push_back(row);
  }
  for (std::size_t k = 1; k < study.rows.size(); ++k) {
    const auto& a = study.rows[k - 1];
    const auto& b = study.rows[k];
    const double slack = 3 * std::hypot(a.standard_error, b.standard_error);
    study.non_increasing = study.non_increasing && b.bias <= a.bias + slack;
  }
  if (!study.rows.empty()) {
    const auto& last = study.rows.back();
    study.final_within_tolerance =
        last.bias <= std::max(3 * last.standard_error, relative_tolerance * last.reference);
  }
  return study;
}

void write_csv(std::ostream& out, const ConvergenceStudy& study) {
  const auto old_precision = out.precision(12);
  out << "N,T,paths,estimate,reference,bias,stderr,unstopped_fraction\n";
  for (const auto& r : study.rows) {
    out << r.N << ',' << r.T << ',' << r.paths << ',' << r.estimate << ',' << r.reference << ','
        << r.bias << ',' << r.standard_error << ',' << r.unstopped_fraction << '\n';
  }
  out.precision(old_precision);
}

InequalityReport shift_norm_inequality_check(const EnsembleResult& ensemble, double p,
                                             double bound) {
  InequalityReport r;
  r.p = p;
  r.bound = bound;
  r.mf = ensemble.mf_at(p);
  r.mg = ensemble.mg_at(p);
  r.combined_standard_error = std::hypot(r.mg.standard_error, bound * r.mf.standard_error);
  r.excess = r.mg.value - bound * r.mf.value;
  r.holds = r.excess <= 3 * r.combined_standard_error;
  return r;
}

InequalityReport shift_norm_inequality_check(const FourierSeries& f, double p, double bound,
                                             const SimConfig& config, const McOptions& options) {
  const double exponents[] = {p};
  return shift_norm_inequality_check(simulate_ensemble(f, config, exponents, options), p, bound);
}

}  // namespace dyadiclab
