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

#include "qindel/random.hpp"

#include <cmath>
#include <numbers>

#include "qindel/error.hpp"

namespace qindel {

int SplitMix64::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>((*this)() % span);
}

double SplitMix64::normal() {
  // Box-Muller; deterministic across standard libraries, unlike
  // std::normal_distribution.
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

CMatrix ginibre(std::size_t rows, std::size_t cols, SplitMix64& rng) {
  CMatrix g(rows, cols);
  for (cplx& z : g.data()) {
    const double re = rng.normal();
    const double im = rng.normal();
    z = {re, im};
  }
  return g;
}

CMatrix random_hermitian(std::size_t dim, SplitMix64& rng) {
  return hermitian_part(ginibre(dim, dim, rng));
}

DensityMatrix random_density(const QuditShape& shape, std::size_t rank, SplitMix64& rng) {
  if (rank == 0 || rank > shape.dim()) {
    throw Error(ErrorCode::InvalidArgument, "rank must be in [1, l^n]");
  }
  const CMatrix g = ginibre(shape.dim(), rank, rng);
  CMatrix m = g * adjoint(g);
  m *= 1.0 / trace(m).real();
  return DensityMatrix::assume_valid(shape, m);
}

DensityMatrix random_density(const QuditShape& shape, SplitMix64& rng) {
  const int rank = rng.uniform_int(1, static_cast<int>(shape.dim()));
  return random_density(shape, static_cast<std::size_t>(rank), rng);
}

CVector random_unit_vector(std::size_t dim, SplitMix64& rng) {
  return random_orthonormal(dim, 1, rng).front();
}

std::vector<CVector> random_orthonormal(std::size_t dim, std::size_t count, SplitMix64& rng) {
  if (count > dim) throw Error(ErrorCode::InvalidArgument, "more orthonormal vectors than dimension");
  std::vector<CVector> out;
  out.reserve(count);
  while (out.size() < count) {
    const CMatrix g = ginibre(dim, 1, rng);
    CVector v(g.data().begin(), g.data().end());
    // Two passes of Gram-Schmidt keep the basis orthonormal to rounding.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : out) {
        const cplx c = inner(u, v);
        for (std::size_t i = 0; i < dim; ++i) v[i] -= c * u[i];
      }
    }
    const double nv = norm(v);
    if (nv < 1e-8) continue;
    for (auto& z : v) z /= nv;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace qindel
