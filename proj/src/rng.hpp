// nomadbs - transmit-power minimization for downlink NOMA over distributed antennas
// Copyright (C) 2026 the nomadbs developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>

namespace nomadbs {

/// Derives an independent substream seed from a master seed and a list of
/// counter words (trial, user, antenna, purpose...). Streams derived from
/// distinct word tuples are statistically independent, so trials can be
/// generated in any order or in parallel with identical results.
uint64_t mix_seed(std::initializer_list<uint64_t> words);

/// mt19937_64 wrapper with self-contained uniform/normal conversion.
/// std::normal_distribution is implementation-defined, so we roll the
/// float conversions by hand to keep streams identical across toolchains.
class Rng {
public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  /// Uniform draw on the open interval (0,1).
  double uniform01() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Standard normal via Box-Muller; draws are consumed in pairs.
  double normal();
  std::pair<double, double> normal_pair();

  uint64_t next_u64() { return eng_(); }

private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace nomadbs
