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

#include "qindel/codes.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qindel/channels.hpp"
#include "qindel/error.hpp"

namespace qindel::codes {

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix proj(std::string_view digits) {
  const CVector k = basis_ket(digits, 2);
  return CMatrix::outer(k, k);
}

CMatrix ketbra(std::string_view a, std::string_view b) {
  return CMatrix::outer(basis_ket(a, 2), basis_ket(b, 2));
}

CVector scaled_sum(cplx a, const CVector& u, cplx b, const CVector& v) {
  CVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = a * u[i] + b * v[i];
  return out;
}

DensityMatrix pure(const CVector& ket, int length) {
  return density_from_ket(PureKet{QuditShape(2, length), ket});
}

std::string pi_fraction(int k, int denom) {
  if (k == 0) return "0";
  const int g = std::gcd(k, denom);
  k /= g;
  denom /= g;
  std::string s = k == 1 ? "pi" : std::to_string(k) + "pi";
  return denom == 1 ? s : s + "/" + std::to_string(denom);
}

CodeGrid make_grid(const GridOptions& g, const std::string& prefix) {
  if (g.theta_steps < 1 || g.phi_steps < 1) {
    throw Error(ErrorCode::InvalidArgument, "grid needs at least one step per axis");
  }
  CodeGrid grid;
  for (int a = 0; a <= g.theta_steps; ++a)
    for (int b = 0; b < g.phi_steps; ++b) {
      const double theta = a * kPi / (2.0 * g.theta_steps);
      const double phi = b * 2.0 * kPi / g.phi_steps;
      grid.params.push_back(CodewordParam::polar(theta, phi));
      grid.labels.push_back(prefix + "(theta=" + pi_fraction(a, 2 * g.theta_steps) +
                            ",phi=" + pi_fraction(2 * b, g.phi_steps) + ")");
    }
  grid.grid_points = grid.params.size();
  const CodewordParam e = engineered_param();
  grid.params.push_back(e);
  grid.labels.push_back(prefix + "(engineered)");
  grid.params.push_back(collision_partner_x2(e));
  grid.labels.push_back(prefix + "(engineered partner)");
  return grid;
}

}  // namespace

DickeKet dicke(int n, int i) {
  if (n < 0 || i < 0 || i > n) {
    throw Error(ErrorCode::WeightOutOfRange,
                "weight " + std::to_string(i) + " outside [0, " + std::to_string(n) + "]");
  }
  const QuditShape shape(2, n);
  DickeKet d{n, i, CVector(shape.dim())};
  for (std::size_t x = 0; x < shape.dim(); ++x)
    if (std::popcount(x) == i) d.vector[x] = 1.0;
  return d;
}

CodewordParam CodewordParam::make(cplx alpha, cplx beta, double eq_tol) {
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > eq_tol) {
    throw Error(ErrorCode::NotNormalized, "|alpha|^2 + |beta|^2 != 1", std::abs(norm2 - 1.0));
  }
  return {alpha, beta};
}

CodewordParam CodewordParam::polar(double theta, double phi) {
  return {std::cos(theta), std::polar(std::sin(theta), phi)};
}

CVector hagiwara_ket(const CodewordParam& p) {
  CodewordParam::make(p.alpha, p.beta);
  const CVector zero = scaled_sum(1.0 / std::numbers::sqrt2, dicke(4, 0).vector,
                                  1.0 / std::numbers::sqrt2, dicke(4, 4).vector);
  const CVector& two = dicke(4, 2).vector;
  return scaled_sum(p.alpha, zero, p.beta / std::sqrt(6.0), two);
}

DensityMatrix hagiwara_codeword(const CodewordParam& p) { return pure(hagiwara_ket(p), 4); }

DensityMatrix x1_codeword(const CodewordParam& p) {
  CodewordParam::make(p.alpha, p.beta);
  return pure(scaled_sum(p.alpha, basis_ket("00", 2), p.beta, basis_ket("11", 2)), 2);
}

CMatrix hagiwara_single_deletion(const CodewordParam& p) {
  const cplx b = p.beta / std::sqrt(3.0);
  const CVector v = scaled_sum(p.alpha, dicke(3, 0).vector, b, dicke(3, 2).vector);
  const CVector w = scaled_sum(p.alpha, dicke(3, 3).vector, b, dicke(3, 1).vector);
  return 0.5 * CMatrix::outer(v, v) + 0.5 * CMatrix::outer(w, w);
}

CMatrix hagiwara_double_deletion(const CodewordParam& p) {
  const double a2 = std::norm(p.alpha);
  const double b2 = std::norm(p.beta);
  const cplx cross = (p.alpha * std::conj(p.beta) + std::conj(p.alpha) * p.beta) /
                     (2.0 * std::sqrt(3.0));
  const CVector& one = dicke(2, 1).vector;
  return 0.5 * (a2 + b2 / 3.0) * (proj("00") + proj("11")) +
         cross * (ketbra("00", "11") + ketbra("11", "00")) +
         (b2 / 3.0) * CMatrix::outer(one, one);
}

CodewordParam collision_partner_x2(const CodewordParam& p) {
  if (std::abs(p.alpha) < 1e-12 || std::abs(p.beta) < 1e-12) {
    throw Error(ErrorCode::DegenerateParam, "alpha and beta must both be nonzero");
  }
  const cplx phase = std::polar(1.0, 2.0 * (std::arg(p.alpha) - std::arg(p.beta)));
  if (std::abs(phase - 1.0) < 1e-9) {
    throw Error(ErrorCode::DegenerateParam,
                "phase factor is 1, so the pair coincides", std::abs(phase - 1.0));
  }
  return {p.alpha, phase * p.beta};
}

std::pair<DensityMatrix, DensityMatrix> collision_pair_x2(const CodewordParam& p) {
  return {hagiwara_codeword(p), hagiwara_codeword(collision_partner_x2(p))};
}

DensityMatrix rho(double p0, double p1) {
  if (p0 < 0 || p1 < 0) throw Error(ErrorCode::InvalidArgument, "weights must be nonnegative");
  return validate(p0 * proj("00") + p1 * proj("11"), QuditShape(2, 2));
}

DensityMatrix psi(double p0, double p1) {
  if (p0 < 0 || p1 < 0) throw Error(ErrorCode::InvalidArgument, "weights must be nonnegative");
  return pure(scaled_sum(std::sqrt(p0), basis_ket("01", 2), std::sqrt(p1), basis_ket("10", 2)), 2);
}

CMatrix sigma1(double p0, double p1, const CMatrix& pi00, const CMatrix& pi11, const CMatrix& a) {
  const double c = std::sqrt(p0 * p1);
  return p0 * kron(pi00, proj("00")) + p1 * kron(pi11, proj("11")) +
         c * kron(a, ketbra("11", "00")) + c * kron(adjoint(a), ketbra("00", "11"));
}

CMatrix sigma2(double p0, double p1, const CMatrix& pi00, const CMatrix& pi11, const CMatrix& a) {
  const double c = std::sqrt(p0 * p1);
  return p0 * kron(kron(proj("0"), pi00), proj("0")) +
         p1 * kron(kron(proj("1"), pi11), proj("1")) +
         c * kron(kron(ketbra("1", "0"), a), ketbra("1", "0")) +
         c * kron(kron(ketbra("0", "1"), adjoint(a)), ketbra("0", "1"));
}

CMatrix sigma3(double p0, double p1, const CMatrix& pi00, const CMatrix& pi11, const CMatrix& a) {
  const double c = std::sqrt(p0 * p1);
  return p0 * kron(proj("00"), pi00) + p1 * kron(proj("11"), pi11) +
         c * kron(ketbra("11", "00"), a) + c * kron(ketbra("00", "11"), adjoint(a));
}

bool in_del_ins_rho(const CMatrix& sigma, double p0, double p1, double eq_tol) {
  if (sigma.rows() != 4 || sigma.cols() != 4) {
    throw Error(ErrorCode::ShapeMismatch, "expected a 2-qubit matrix");
  }
  // `stride` selects the qubit that must be classical: 1 for the second, 2
  // for the first.
  auto classical_on = [&](std::size_t stride) {
    double coherence = 0.0;
    cplx block0{};
    cplx block1{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        const bool bi = (i / stride) % 2;
        const bool bj = (j / stride) % 2;
        if (bi != bj) coherence += std::norm(sigma(i, j));
        if (i == j) (bi ? block1 : block0) += sigma(i, i);
      }
    const double miss = std::sqrt(coherence + std::norm(block0 - p0) + std::norm(block1 - p1));
    return miss <= eq_tol;
  };
  return classical_on(1) || classical_on(2);
}

bool in_ins_del_rho(const CMatrix& sigma, double p0, double p1, double eq_tol) {
  const QuditShape shape(2, 2);
  const CMatrix target = p0 * proj("0") + p1 * proj("1");
  for (int q = 1; q <= 2; ++q) {
    if (frobenius_distance(partial_trace_matrix(sigma, shape, q), target) <= eq_tol) return true;
  }
  return false;
}

bool in_spheres_of_00(const CMatrix& sigma, double eq_tol) {
  if (sigma.rows() != 4 || sigma.cols() != 4) {
    throw Error(ErrorCode::ShapeMismatch, "expected a 2-qubit matrix");
  }
  auto zero_outside = [&](std::size_t stride) {
    double acc = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if ((i / stride) % 2 || (j / stride) % 2) acc += std::norm(sigma(i, j));
    return std::sqrt(acc) <= eq_tol;
  };
  return zero_outside(1) || zero_outside(2);
}

CodewordParam engineered_param() {
  return CodewordParam::polar(kPi / 8.0, kPi / 3.0);
}

CodeGrid x1_grid(const GridOptions& g) { return make_grid(g, "x1"); }
CodeGrid x2_grid(const GridOptions& g) { return make_grid(g, "x2"); }

}  // namespace qindel::codes
