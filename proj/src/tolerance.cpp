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

#include "qindel/tolerance.hpp"

#include <cmath>

#include "qindel/error.hpp"

namespace qindel {

Tolerance Tolerance::for_dim(std::size_t dim) {
  const double d = static_cast<double>(dim == 0 ? 1 : dim);
  return {1e-9 * std::sqrt(d), 1e-9 * d, 1e-12 * d};
}

void Tolerance::check() const {
  for (double v : {eq_tol, psd_tol, eig_tol}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "tolerances must be finite and nonnegative");
    }
  }
}

Tolerance ToleranceSettings::at(std::size_t dim) const {
  Tolerance t = Tolerance::for_dim(dim);
  if (eq_tol) t.eq_tol = *eq_tol;
  if (psd_tol) t.psd_tol = *psd_tol;
  if (eig_tol) t.eig_tol = *eig_tol;
  t.check();
  return t;
}

}  // namespace qindel
