// Copyright 2026 The qindel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "qindel/cmatrix.hpp"
#include "qindel/state.hpp"

namespace qindel {

/// SplitMix64: 64-bit state, satisfies UniformRandomBitGenerator, and
/// `split` derives an independent stream so samplers stay deterministic
/// regardless of how work is partitioned.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  SplitMix64 split() { return SplitMix64((*this)() ^ 0x6a09e667f3bcc909ULL); }

  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  double normal();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Entries i.i.d. standard complex Gaussian.
CMatrix ginibre(std::size_t rows, std::size_t cols, SplitMix64& rng);
CMatrix random_hermitian(std::size_t dim, SplitMix64& rng);
/// G G^dagger / tr(G G^dagger) with G of shape dim x rank.
DensityMatrix random_density(const QuditShape& shape, std::size_t rank, SplitMix64& rng);
DensityMatrix random_density(const QuditShape& shape, SplitMix64& rng);
CVector random_unit_vector(std::size_t dim, SplitMix64& rng);
/// `count` orthonormal vectors in C^dim (count <= dim).
std::vector<CVector> random_orthonormal(std::size_t dim, std::size_t count, SplitMix64& rng);

}  // namespace qindel
