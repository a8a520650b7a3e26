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

#include "qindel/cmatrix.hpp"

#include <cmath>
#include <string>

#include "qindel/error.hpp"
#include "qindel/kernels.hpp"

namespace qindel {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::ShapeMismatch, "entry count " + std::to_string(data_.size()) +
                                              " does not match " + std::to_string(rows_) + "x" +
                                              std::to_string(cols_));
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::column(std::span<const cplx> v) {
  return {v.size(), 1, std::vector<cplx>(v.begin(), v.end())};
}

CMatrix CMatrix::outer(std::span<const cplx> u, std::span<const cplx> v) {
  CMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_shape(*this, o, "operator+=");
  kernels::axpy(1.0, o.data(), data());
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_shape(*this, o, "operator-=");
  kernels::axpy(-1.0, o.data(), data());
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix product: inner dimensions " +
                                              std::to_string(a.cols()) + " and " +
                                              std::to_string(b.rows()));
  }
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto crow = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      kernels::axpy(aik, b.row(k), crow);
    }
  }
  return c;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t p = b.rows();
  const std::size_t q = b.cols();
  CMatrix out(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t r = 0; r < p; ++r)
        for (std::size_t c = 0; c < q; ++c) out(i * p + r, j * q + c) = aij * b(r, c);
    }
  return out;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

cplx trace(const CMatrix& a) {
  if (!a.is_square()) {
    throw Error(ErrorCode::NonSquare,
                "trace of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " matrix");
  }
  cplx acc{};
  for (std::size_t i = 0; i < a.rows(); ++i) acc += a(i, i);
  return acc;
}

double frobenius_norm(const CMatrix& a) {
  double acc = 0.0;
  for (const cplx& z : a.data()) acc += std::norm(z);
  return std::sqrt(acc);
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "frobenius_distance");
  return std::sqrt(kernels::sqdist(a.data(), b.data()));
}

CMatrix hermitian_part(const CMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::NonSquare, "hermitian_part of non-square matrix");
  CMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return out;
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw Error(ErrorCode::ShapeMismatch, "inner product length mismatch");
  cplx acc{};
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

double norm(std::span<const cplx> v) {
  double acc = 0.0;
  for (const cplx& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

}  // namespace qindel
