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
#include <optional>

namespace qindel {

/// Absolute thresholds used by one computation.
struct Tolerance {
  double eq_tol = 0.0;   ///< Frobenius distance below which two matrices are equal.
  double psd_tol = 0.0;  ///< Eigenvalues above -psd_tol count as nonnegative.
  double eig_tol = 0.0;  ///< Off-diagonal Frobenius norm at which Jacobi stops.

  /// eq_tol = 1e-9 sqrt(dim), psd_tol = 1e-9 dim, eig_tol = 1e-12 dim.
  static Tolerance for_dim(std::size_t dim);

  /// Throws InvalidArgument on negative or non-finite fields.
  void check() const;
};

/// Dimension-aware tolerance source. Unset fields fall back to the
/// dimension-scaled defaults of Tolerance::for_dim; set fields are used as
/// absolute values for every dimension.
struct ToleranceSettings {
  std::optional<double> eq_tol;
  std::optional<double> psd_tol;
  std::optional<double> eig_tol;

  Tolerance at(std::size_t dim) const;
};

}  // namespace qindel
