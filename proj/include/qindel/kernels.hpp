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

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

// Inner loops of the dense complex arithmetic. Every kernel has a portable
// scalar reference and, on x86-64, an AVX2/FMA variant. The variant is chosen
// once at startup from CPUID; tests run both and compare.

namespace qindel::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  /// y += a * x
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  /// (x, y) <- (a x + b y, c x + d y)
  void (*rot2)(cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y, std::size_t n);
  /// sum |x_i - y_i|^2
  double (*sqdist)(const cplx* x, const cplx* y, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_table();

bool cpu_has_avx2();

/// Table selected at runtime. Override with QINDEL_ISA=scalar in the environment.
const KernelTable& active();

std::string_view isa_name(Isa isa);

inline void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}
inline void rot2(cplx a, cplx b, cplx c, cplx d, std::span<cplx> x, std::span<cplx> y) {
  active().rot2(a, b, c, d, x.data(), y.data(), x.size());
}
inline double sqdist(std::span<const cplx> x, std::span<const cplx> y) {
  return active().sqdist(x.data(), y.data(), x.size());
}

}  // namespace qindel::kernels
