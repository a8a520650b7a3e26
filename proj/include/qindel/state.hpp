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

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qindel/cmatrix.hpp"
#include "qindel/tolerance.hpp"

namespace qindel {

/// Largest l^n accepted for a state.
inline constexpr std::size_t kDefaultSizeCap = 256;

/// n qudits of l levels each. n = 0 is the one-dimensional space holding (1).
class QuditShape {
 public:
  /// Throws InvalidArgument when level < 2 or length < 0, SizeCapExceeded
  /// when level^length exceeds `cap`.
  QuditShape(int level, int length, std::size_t cap = kDefaultSizeCap);

  int level() const noexcept { return level_; }
  int length() const noexcept { return length_; }
  std::size_t dim() const noexcept { return dim_; }

  QuditShape with_length(int length) const { return {level_, length}; }

  bool operator==(const QuditShape&) const = default;

 private:
  int level_;
  int length_;
  std::size_t dim_;
};

/// l^k for small k, used for strides.
std::size_t ipow(std::size_t base, int exp);

/// Hermitian, unit-trace, PSD matrix of order l^n. Only obtainable through
/// `validate` or from operations that preserve these properties.
class DensityMatrix {
 public:
  const QuditShape& shape() const noexcept { return shape_; }
  const CMatrix& matrix() const noexcept { return mat_; }
  int level() const noexcept { return shape_.level(); }
  int length() const noexcept { return shape_.length(); }
  std::size_t dim() const noexcept { return shape_.dim(); }

  /// For results that are density matrices by construction (partial traces,
  /// qudit relabelings, PSD-checked assemblies). Symmetrizes away rounding.
  static DensityMatrix assume_valid(QuditShape shape, const CMatrix& m);

  /// The unique state on zero qudits.
  static DensityMatrix empty(int level);

 private:
  DensityMatrix(QuditShape shape, CMatrix m) : shape_(shape), mat_(std::move(m)) {}

  QuditShape shape_;
  CMatrix mat_;
};

struct PureKet {
  QuditShape shape;
  CVector amplitudes;
};

struct SpectralPair {
  double weight;
  CVector ket;
};

/// rho = sum_x p_x |x_L><x_L| with zero-weight terms dropped.
struct SpectralForm {
  QuditShape shape;
  std::vector<SpectralPair> pairs;

  std::size_t rank() const noexcept { return pairs.size(); }
};

/// Errors: ShapeMismatch, NotHermitian, TraceNotOne, NotPSD. The thrown Error
/// carries the violating residual.
DensityMatrix validate(const CMatrix& m, QuditShape shape, const Tolerance& tol);
DensityMatrix validate(const CMatrix& m, QuditShape shape);

/// |phi><phi|; NotNormalized when | ||phi|| - 1 | > eq_tol.
DensityMatrix density_from_ket(const PureKet& k, const Tolerance& tol);
DensityMatrix density_from_ket(const PureKet& k);

/// Eigenpairs with weights <= psd_tol dropped and the rest renormalized,
/// sorted by decreasing weight. Degenerate eigenspaces come back in whatever
/// orthonormal basis the eigensolver produced.
SpectralForm spectral_decompose(const DensityMatrix& rho, const Tolerance& tol);
SpectralForm spectral_decompose(const DensityMatrix& rho);

CMatrix reconstruct(const SpectralForm& form);

/// tr(rho^2); equals 1 exactly for pure states.
double purity(const DensityMatrix& rho);

/// sum_i x_i l^{n-i}; qudit 1 is the most significant digit.
std::size_t basis_index(std::span<const int> digits, const QuditShape& shape);
/// Same, from a string of base-l digits such as "021".
std::size_t basis_index(std::string_view digits, const QuditShape& shape);
std::vector<int> basis_digits(std::size_t index, const QuditShape& shape);

/// The computational basis ket |x_1 ... x_n>.
CVector basis_ket(std::span<const int> digits, const QuditShape& shape);
CVector basis_ket(std::string_view digits, int level);

}  // namespace qindel
