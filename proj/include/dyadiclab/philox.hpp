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
#include <cstdint>

namespace dyadiclab {

/// Philox-4x32-10 counter-based generator (Salmon et al., SC'11).
/// Stateless: each (counter, key) pair maps to 128 independent bits.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
};

/**
 * Reproducible bit stream for one path of one ensemble: the key is the
 * ensemble seed and the counter carries (block index, path index), so any
 * path can be regenerated without touching the others.
 */
class PathBits {
 public:
  PathBits(std::uint64_t seed, std::uint64_t path)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        path_{static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)} {}

  /// 128 bits of block b as two 64-bit words.
  std::array<std::uint64_t, 2> block(std::uint64_t b) const {
    const auto out = Philox4x32::block(
        {static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32), path_[0], path_[1]},
        key_);
    return {out[0] | (std::uint64_t{out[1]} << 32), out[2] | (std::uint64_t{out[3]} << 32)};
  }

  /// The w-th 64-bit word of the stream.
  std::uint64_t word(std::uint64_t w) const { return block(w / 2)[w % 2]; }

  /// Uniform double in (0, 1) from 53 bits of word w.
  double uniform(std::uint64_t w) const {
    return (static_cast<double>(word(w) >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  Philox4x32::Key key_;
  std::array<std::uint32_t, 2> path_;
};

}  // namespace dyadiclab
