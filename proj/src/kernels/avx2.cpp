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

// Compiled with -mavx2 -mfma. Only reached after a CPUID check.
#include <immintrin.h>

#include "qindel/kernels.hpp"

namespace qindel::kernels {
namespace {

// Two complex doubles per register, interleaved (re0, im0, re1, im1).
// Product with a broadcast scalar s = (sr, si):
//   re = xr*sr - xi*si,  im = xr*si + xi*sr
inline __m256d cmul_scalar(__m256d v, __m256d sr, __m256d si) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(v, sr, _mm256_mul_pd(swapped, si));
}

struct Broadcast {
  __m256d re;
  __m256d im;
  explicit Broadcast(cplx s) : re(_mm256_set1_pd(s.real())), im(_mm256_set1_pd(s.imag())) {}
};

void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const Broadcast ab(a);
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul_scalar(xv, ab.re, ab.im)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void rot2_avx2(cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y, std::size_t n) {
  const Broadcast ab(a), bb(b), cb(c), db(d);
  auto* xd = reinterpret_cast<double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d nx = _mm256_add_pd(cmul_scalar(xv, ab.re, ab.im), cmul_scalar(yv, bb.re, bb.im));
    const __m256d ny = _mm256_add_pd(cmul_scalar(xv, cb.re, cb.im), cmul_scalar(yv, db.re, db.im));
    _mm256_storeu_pd(xd + 2 * i, nx);
    _mm256_storeu_pd(yd + 2 * i, ny);
  }
  for (; i < n; ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = a * xi + b * yi;
    y[i] = c * xi + d * yi;
  }
}

double sqdist_avx2(const cplx* x, const cplx* y, std::size_t n) {
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<const double*>(y);
  const std::size_t m = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(xd + i), _mm256_loadu_pd(yd + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(xd + i + 4), _mm256_loadu_pd(yd + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  for (; i + 4 <= m; i += 4) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(xd + i), _mm256_loadu_pd(yd + i));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < m; ++i) {
    const double diff = xd[i] - yd[i];
    acc += diff * diff;
  }
  return acc;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Isa::Avx2, axpy_avx2, rot2_avx2, sqdist_avx2};
  return &table;
}

}  // namespace qindel::kernels
