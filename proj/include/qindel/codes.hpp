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

#include <string>
#include <utility>
#include <vector>

#include "qindel/cmatrix.hpp"
#include "qindel/state.hpp"
#include "qindel/tolerance.hpp"

// Fixture states and codes, with closed forms for their deletions.

namespace qindel::codes {

/// Unnormalized sum of all n-bit basis kets of Hamming weight i, as an exact
/// 0/1 vector of length 2^n.
struct DickeKet {
  int n;
  int weight;
  CVector vector;
};

/// Throws WeightOutOfRange unless 0 <= i <= n.
DickeKet dicke(int n, int i);

/// alpha |0_L> + beta |1_L>.
struct CodewordParam {
  cplx alpha;
  cplx beta;

  /// Throws NotNormalized when |alpha|^2 + |beta|^2 is not 1 within eq_tol.
  static CodewordParam make(cplx alpha, cplx beta, double eq_tol = 1e-9);
  /// (cos theta, e^{i phi} sin theta)
  static CodewordParam polar(double theta, double phi);
};

/// |0_L> = (|0000> + |1111>)/sqrt2, |1_L> = |2_(4)>/sqrt6.
CVector hagiwara_ket(const CodewordParam& p);
DensityMatrix hagiwara_codeword(const CodewordParam& p);

/// alpha|00> + beta|11>.
DensityMatrix x1_codeword(const CodewordParam& p);

/// Closed form of any single deletion of a 4-qubit codeword (a 3-qubit
/// state, identical for every position).
CMatrix hagiwara_single_deletion(const CodewordParam& p);
/// Closed form of any double deletion (2 qubits).
CMatrix hagiwara_double_deletion(const CodewordParam& p);

/// (psi_1, psi_2) with psi_2 = alpha|0_L> + e^{2i(arg alpha - arg beta)} beta|1_L>.
/// Throws DegenerateParam when alpha or beta vanishes or the phase factor is
/// 1, since the pair then coincides.
std::pair<DensityMatrix, DensityMatrix> collision_pair_x2(const CodewordParam& p);
CodewordParam collision_partner_x2(const CodewordParam& p);

// Two-qubit fixtures with weights (p0, p1).

/// p0|00><00| + p1|11><11|
DensityMatrix rho(double p0 = 0.5, double p1 = 0.5);
/// sqrt(p0)|01> + sqrt(p1)|10>
DensityMatrix psi(double p0 = 0.5, double p1 = 0.5);

/// Insertions of rho at position i (1, 2 or 3) with inserted-qubit blocks
/// pi00, pi11 and coherence block A (trace zero). Returned unvalidated: the
/// assembly is PSD only for compatible A.
CMatrix sigma1(double p0, double p1, const CMatrix& pi00, const CMatrix& pi11, const CMatrix& a);
CMatrix sigma2(double p0, double p1, const CMatrix& pi00, const CMatrix& pi11, const CMatrix& a);
CMatrix sigma3(double p0, double p1, const CMatrix& pi00, const CMatrix& pi11, const CMatrix& a);

/// Closed-form membership of a 2-qubit state in D^1 o I^1(rho(p0, p1)):
/// p0 pi00 (x) |0><0| + p1 pi11 (x) |1><1| or p0 |0><0| (x) pi00 + p1 |1><1| (x) pi11.
bool in_del_ins_rho(const CMatrix& sigma, double p0, double p1, double eq_tol);

/// Closed-form membership in I^1 o D^1(rho(p0, p1)): D_Q(sigma) equals
/// p0|0><0| + p1|1><1| for Q = {1} or Q = {2}.
bool in_ins_del_rho(const CMatrix& sigma, double p0, double p1, double eq_tol);

/// Both composed spheres of |00><00|: |0><0| (x) pi or pi (x) |0><0|.
bool in_spheres_of_00(const CMatrix& sigma, double eq_tol);

struct GridOptions {
  int theta_steps = 4;  ///< theta = k pi / (2 theta_steps), k = 0..theta_steps
  int phi_steps = 8;    ///< phi = k 2pi / phi_steps, k = 0..phi_steps-1
};

struct CodeGrid {
  std::vector<CodewordParam> params;
  std::vector<std::string> labels;
  std::size_t grid_points = 0;  ///< parameter points before appended pairs
};

/// Default grid plus the engineered phase-collision pair
/// alpha = cos(pi/8), beta = sin(pi/8) e^{i pi/3} and its partner.
CodeGrid x1_grid(const GridOptions& g = {});
CodeGrid x2_grid(const GridOptions& g = {});

/// The engineered pair appended to both grids.
CodewordParam engineered_param();

}  // namespace qindel::codes
