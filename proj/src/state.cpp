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

#include "qindel/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qindel/error.hpp"
#include "qindel/hermitian.hpp"

namespace qindel {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

QuditShape::QuditShape(int level, int length, std::size_t cap) : level_(level), length_(length) {
  if (level < 2) throw Error(ErrorCode::InvalidArgument, "qudit level must be >= 2");
  if (length < 0) throw Error(ErrorCode::InvalidArgument, "qudit count must be >= 0");
  dim_ = 1;
  for (int i = 0; i < length; ++i) {
    dim_ *= static_cast<std::size_t>(level);
    if (dim_ > cap) {
      throw Error(ErrorCode::SizeCapExceeded, std::to_string(level) + "^" + std::to_string(length) +
                                                  " exceeds size cap " + std::to_string(cap));
    }
  }
}

DensityMatrix DensityMatrix::assume_valid(QuditShape shape, const CMatrix& m) {
  if (m.rows() != shape.dim() || m.cols() != shape.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix order does not match l^n");
  }
  return {shape, hermitian_part(m)};
}

DensityMatrix DensityMatrix::empty(int level) {
  return {QuditShape(level, 0), CMatrix::identity(1)};
}

DensityMatrix validate(const CMatrix& m, QuditShape shape, const Tolerance& tol) {
  if (m.rows() != shape.dim() || m.cols() != shape.dim()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    " matrix for l^n = " + std::to_string(shape.dim()));
  }
  for (const cplx& z : m.data()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::NotHermitian, "non-finite entry");
    }
  }
  CMatrix h = require_hermitian(m, tol);
  const double tr_err = std::abs(trace(h) - cplx(1.0));
  if (tr_err > tol.eq_tol) throw Error(ErrorCode::TraceNotOne, "trace differs from 1", tr_err);
  const auto values = hermitian_eigenvalues(h, tol);
  if (!values.empty() && values.front() < -tol.psd_tol) {
    throw Error(ErrorCode::NotPSD, "minimum eigenvalue below -psd_tol", values.front());
  }
  return DensityMatrix::assume_valid(shape, h);
}

DensityMatrix validate(const CMatrix& m, QuditShape shape) {
  return validate(m, shape, Tolerance::for_dim(shape.dim()));
}

DensityMatrix density_from_ket(const PureKet& k, const Tolerance& tol) {
  if (k.amplitudes.size() != k.shape.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "ket length " + std::to_string(k.amplitudes.size()) +
                                              " for l^n = " + std::to_string(k.shape.dim()));
  }
  const double err = std::abs(norm(k.amplitudes) - 1.0);
  if (err > tol.eq_tol) throw Error(ErrorCode::NotNormalized, "ket norm differs from 1", err);
  return DensityMatrix::assume_valid(k.shape, CMatrix::outer(k.amplitudes, k.amplitudes));
}

DensityMatrix density_from_ket(const PureKet& k) {
  return density_from_ket(k, Tolerance::for_dim(k.shape.dim()));
}

SpectralForm spectral_decompose(const DensityMatrix& rho, const Tolerance& tol) {
  const auto eig = hermitian_eigen(rho.matrix(), tol);
  SpectralForm form{rho.shape(), {}};
  double total = 0.0;
  for (std::size_t k = eig.values.size(); k-- > 0;) {
    const double w = eig.values[k];
    if (w <= tol.psd_tol) continue;
    CVector ket(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) ket[i] = eig.vectors(i, k);
    form.pairs.push_back({w, std::move(ket)});
    total += w;
  }
  for (auto& pair : form.pairs) pair.weight /= total;
  return form;
}

SpectralForm spectral_decompose(const DensityMatrix& rho) {
  return spectral_decompose(rho, Tolerance::for_dim(rho.dim()));
}

CMatrix reconstruct(const SpectralForm& form) {
  CMatrix out(form.shape.dim(), form.shape.dim());
  for (const auto& [w, ket] : form.pairs) out += w * CMatrix::outer(ket, ket);
  return out;
}

double purity(const DensityMatrix& rho) {
  return trace(rho.matrix() * rho.matrix()).real();
}

std::size_t basis_index(std::span<const int> digits, const QuditShape& shape) {
  if (digits.size() != static_cast<std::size_t>(shape.length())) {
    throw Error(ErrorCode::ShapeMismatch, "digit string length " + std::to_string(digits.size()) +
                                              " for n = " + std::to_string(shape.length()));
  }
  std::size_t index = 0;
  for (int x : digits) {
    if (x < 0 || x >= shape.level()) {
      throw Error(ErrorCode::DigitOutOfRange,
                  "digit " + std::to_string(x) + " not in Z_" + std::to_string(shape.level()));
    }
    index = index * static_cast<std::size_t>(shape.level()) + static_cast<std::size_t>(x);
  }
  return index;
}

namespace {

std::vector<int> parse_digits(std::string_view digits, int level) {
  std::vector<int> out;
  out.reserve(digits.size());
  for (char ch : digits) {
    int v;
    if (ch >= '0' && ch <= '9') {
      v = ch - '0';
    } else if (ch >= 'a' && ch <= 'z') {
      v = 10 + (ch - 'a');
    } else {
      throw Error(ErrorCode::DigitOutOfRange, std::string("not a digit: '") + ch + "'");
    }
    if (v >= level) {
      throw Error(ErrorCode::DigitOutOfRange,
                  "digit " + std::to_string(v) + " not in Z_" + std::to_string(level));
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::size_t basis_index(std::string_view digits, const QuditShape& shape) {
  const auto parsed = parse_digits(digits, shape.level());
  return basis_index(parsed, shape);
}

std::vector<int> basis_digits(std::size_t index, const QuditShape& shape) {
  if (index >= shape.dim()) {
    throw Error(ErrorCode::DigitOutOfRange, "basis index " + std::to_string(index) + " >= l^n");
  }
  std::vector<int> digits(static_cast<std::size_t>(shape.length()));
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = static_cast<int>(index % static_cast<std::size_t>(shape.level()));
    index /= static_cast<std::size_t>(shape.level());
  }
  return digits;
}

CVector basis_ket(std::span<const int> digits, const QuditShape& shape) {
  CVector v(shape.dim());
  v[basis_index(digits, shape)] = 1.0;
  return v;
}

CVector basis_ket(std::string_view digits, int level) {
  const QuditShape shape(level, static_cast<int>(digits.size()));
  return basis_ket(parse_digits(digits, level), shape);
}

}  // namespace qindel
