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

#include "qindel/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qindel/error.hpp"
#include "qindel/kernels.hpp"

namespace qindel {

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

// Annihilates a(p,q) with J = D R, D = diag(1, e^{-i phi}) making the pivot
// real and R a real Jacobi rotation. `w` holds eigenvectors as rows.
void rotate(CMatrix& a, CMatrix& w, std::size_t p, std::size_t q) {
  const cplx b = a(p, q);
  const double mag = std::abs(b);
  if (mag == 0.0) return;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const cplx phase = b / mag;

  const double zeta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(zeta) > 1e150) {
    t = 0.5 / zeta;
  } else {
    t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  kernels::rot2(c, -s * phase, s, c * phase, a.row(p), a.row(q));
  kernels::rot2(c, -s * std::conj(phase), s, c * std::conj(phase), w.row(p), w.row(q));

  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i == p || i == q) continue;
    a(i, p) = std::conj(a(p, i));
    a(i, q) = std::conj(a(q, i));
  }
}

}  // namespace

CMatrix require_hermitian(const CMatrix& a, const Tolerance& tol) {
  if (!a.is_square()) {
    throw Error(ErrorCode::NonSquare,
                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " matrix");
  }
  const double asym = frobenius_distance(a, adjoint(a));
  if (asym > tol.eq_tol) throw Error(ErrorCode::NotHermitian, "||A - A^dagger||_F too large", asym);
  return hermitian_part(a);
}

EigenDecomposition hermitian_eigen(const CMatrix& input, const Tolerance& tol) {
  CMatrix a = require_hermitian(input, tol);
  const std::size_t n = a.rows();
  CMatrix w = CMatrix::identity(n);

  // Below a few ulps of ||A|| the off-diagonal mass is rounding noise.
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * frobenius_norm(a);
  const double threshold = std::max(tol.eig_tol, floor);
  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (sweep == kMaxJacobiSweeps) {
      throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap reached", off_diagonal_norm(a));
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, w, p, q);
    ++sweep;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.values.reserve(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values.push_back(a(src, src).real());
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = w(src, i);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& a, const Tolerance& tol) {
  return hermitian_eigen(a, tol).values;
}

bool is_psd(const CMatrix& a, const Tolerance& tol) {
  const auto values = hermitian_eigenvalues(a, tol);
  return values.empty() || values.front() >= -tol.psd_tol;
}

CMatrix reassemble(const std::vector<double>& weights, const CMatrix& vectors) {
  const std::size_t n = vectors.rows();
  CMatrix out(n, n);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = weights[k] * vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(vectors(j, k));
    }
  }
  return hermitian_part(out);
}

CMatrix project_psd(const CMatrix& a, const Tolerance& tol) {
  auto eig = hermitian_eigen(a, tol);
  for (double& v : eig.values) v = std::max(v, 0.0);
  return reassemble(eig.values, eig.vectors);
}

}  // namespace qindel
