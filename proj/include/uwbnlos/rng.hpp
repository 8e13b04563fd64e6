/*
 * Copyright 2026 The uwbnlos Authors
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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>

namespace uwbnlos {

/// Independent random streams derived from one user seed. Each purpose draws
/// from its own stream so that, e.g., changing the number of noise samples
/// does not shift the split permutation.
enum class Stream : std::uint64_t {
  split = 1,
  noise = 2,
  delay = 3,
  labels = 4,
  amplitude = 5,
  mixing = 6,
  sources = 7,
  ica_init = 8,
  calibration = 9,
};

/// Portable seeded generator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The engine seed is splitmix64(seed ^ (stream * 0x9E3779B97F4A7C15)).
/// All derived variates are computed here rather than with <random>
/// distributions, whose algorithms differ between standard libraries:
///   uniform()  53 high bits of one draw, scaled to [0, 1)
///   below(n)   Lemire's multiply-shift with rejection
///   normal()   Box-Muller, second variate cached
///   laplace(b) inverse CDF of a uniform on (-1/2, 1/2)
class Rng {
 public:
  Rng(std::uint64_t seed, Stream stream);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t n);
  double normal();
  double laplace(double scale);

  template <typename It>
  void shuffle(It first, It last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      const auto j = below(i);
      std::iter_swap(first + static_cast<std::ptrdiff_t>(i - 1), first + static_cast<std::ptrdiff_t>(j));
    }
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace uwbnlos
