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

#include <vector>

#include "qindel/cmatrix.hpp"
#include "qindel/tolerance.hpp"

namespace qindel {

struct EigenDecomposition {
  std::vector<double> values;  ///< ascending
  CMatrix vectors;             ///< column k is the unit eigenvector of values[k]
  int sweeps = 0;
};

/// Throws NotHermitian unless ||a - a^dagger||_F <= tol.eq_tol (NonSquare for
/// non-square input). Returns the symmetrized (a + a^dagger)/2.
CMatrix require_hermitian(const CMatrix& a, const Tolerance& tol);

/// Cyclic complex Jacobi with two-sided unitary rotations. Sweeps until the
/// off-diagonal Frobenius norm is at most tol.eig_tol; throws NoConvergence
/// after kMaxJacobiSweeps sweeps.
EigenDecomposition hermitian_eigen(const CMatrix& a, const Tolerance& tol);

inline constexpr int kMaxJacobiSweeps = 100;

std::vector<double> hermitian_eigenvalues(const CMatrix& a, const Tolerance& tol);

/// min eigenvalue >= -psd_tol.
bool is_psd(const CMatrix& a, const Tolerance& tol);

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues clipped to zero.
CMatrix project_psd(const CMatrix& a, const Tolerance& tol);

/// sum_k w_k |v_k><v_k| for the columns of `vectors`.
CMatrix reassemble(const std::vector<double>& weights, const CMatrix& vectors);

}  // namespace qindel
