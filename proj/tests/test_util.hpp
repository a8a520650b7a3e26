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

#include <gtest/gtest.h>

#include "qindel/cmatrix.hpp"
#include "qindel/error.hpp"
#include "qindel/state.hpp"

namespace qindel::testing {

inline ::testing::AssertionResult MatrixNear(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return ::testing::AssertionFailure() << "shape " << a.rows() << "x" << a.cols() << " vs "
                                         << b.rows() << "x" << b.cols();
  }
  const double d = frobenius_distance(a, b);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "Frobenius distance " << d << " > " << tol;
}

inline CMatrix proj(std::string_view digits, int level = 2) {
  const CVector k = basis_ket(digits, level);
  return CMatrix::outer(k, k);
}

}  // namespace qindel::testing

#define EXPECT_QINDEL_ERROR(stmt, expected_code)                               \
  do {                                                                         \
    try {                                                                      \
      stmt;                                                                    \
      ADD_FAILURE() << "expected " << ::qindel::to_string(expected_code);      \
    } catch (const ::qindel::Error& e) {                                       \
      EXPECT_EQ(e.code(), expected_code) << e.what();                          \
    }                                                                          \
  } while (0)
