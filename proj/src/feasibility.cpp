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

#include "qindel/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qindel/error.hpp"
#include "qindel/hermitian.hpp"
#include "qindel/random.hpp"

namespace qindel {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Adjoint of D_P on a single output basis element: tau^P(E (x) I).
CMatrix deletion_adjoint(const CMatrix& e, const QuditShape& domain, const IndexSet& positions) {
  const int kept = domain.length() - static_cast<int>(positions.size());
  const std::size_t traced = ipow(static_cast<std::size_t>(domain.level()),
                                  static_cast<int>(positions.size()));
  const CMatrix lifted = kron(e, CMatrix::identity(traced));
  return index_permutation_matrix(lifted, domain, tau_q(positions, kept));
}

// Orthonormal Hermitian basis element k of order d, matching
// hermitian_coordinates.
CMatrix hermitian_basis(std::size_t k, std::size_t d) {
  CMatrix e(d, d);
  if (k < d) {
    e(k, k) = 1.0;
    return e;
  }
  std::size_t idx = k - d;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      if (idx == 0) {
        e(i, j) = 1.0 / kSqrt2;
        e(j, i) = 1.0 / kSqrt2;
        return e;
      }
      if (idx == 1) {
        e(i, j) = cplx(0.0, 1.0 / kSqrt2);
        e(j, i) = cplx(0.0, -1.0 / kSqrt2);
        return e;
      }
      idx -= 2;
    }
  return e;
}

// Low-rank refinement from the dominant eigenpairs of a PSD iterate.
// Dykstra converges slowly when every solution is singular; Gauss-Newton on
// the factor finishes the job once the iterate's range has settled. Ranks at
// the clearest spectral gaps are tried first.
std::optional<CMatrix> polish(const AffineProjector& affine, const CMatrix& psd, double feas_tol,
                              const Tolerance& tol) {
  const auto eig = hermitian_eigen(psd, tol);
  const std::size_t d = eig.values.size();
  std::vector<std::pair<double, std::size_t>> cuts;  // (ratio, rank)
  for (std::size_t k = 1; k < d; ++k) {
    const double big = eig.values[d - k];
    const double small = std::max(eig.values[d - k - 1], 0.0);
    if (big <= 0.0) break;
    if (small <= 0.1 * big) cuts.emplace_back(small / big, k);
  }
  std::sort(cuts.begin(), cuts.end());
  if (cuts.size() > 2) cuts.resize(2);
  for (const auto& cut : cuts) {
    const std::size_t k = cut.second;
    CMatrix v0(d, k);
    for (std::size_t c = 0; c < k; ++c) {
      const double w = std::sqrt(eig.values[d - 1 - c]);
      for (std::size_t r = 0; r < d; ++r) v0(r, c) = w * eig.vectors(r, d - 1 - c);
    }
    if (auto w = affine.refine_factor(v0, feas_tol)) return w;
  }
  return std::nullopt;
}

}  // namespace

std::vector<double> hermitian_coordinates(const CMatrix& h) {
  const std::size_t d = h.rows();
  std::vector<double> v;
  v.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) v.push_back(h(i, i).real());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      // Average both triangles so slightly non-Hermitian input maps to its
      // Hermitian part.
      const cplx z = 0.5 * (h(i, j) + std::conj(h(j, i)));
      v.push_back(kSqrt2 * z.real());
      v.push_back(kSqrt2 * z.imag());
    }
  return v;
}

CMatrix hermitian_from_coordinates(const std::vector<double>& v, std::size_t d) {
  if (v.size() != d * d) throw Error(ErrorCode::ShapeMismatch, "coordinate vector length");
  CMatrix h(d, d);
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i) h(i, i) = v[k++];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const cplx z(v[k] / kSqrt2, v[k + 1] / kSqrt2);
      k += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  return h;
}

namespace {

LinearSolutionSet build_constraint_rows(const AffineConstraint& c) {
  const std::size_t dim = c.domain.dim() * c.domain.dim();
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const auto& cond : c.conditions) {
    const int kept = c.domain.length() - static_cast<int>(cond.positions.size());
    const std::size_t d = ipow(static_cast<std::size_t>(c.domain.level()), kept);
    if (cond.target.rows() != d || cond.target.cols() != d) {
      throw Error(ErrorCode::ShapeMismatch, "constraint target order does not match");
    }
    const auto target = hermitian_coordinates(cond.target);
    for (std::size_t k = 0; k < d * d; ++k) {
      rows.push_back(hermitian_coordinates(
          deletion_adjoint(hermitian_basis(k, d), c.domain, cond.positions)));
      rhs.push_back(target[k]);
    }
  }
  return LinearSolutionSet(std::move(rows), std::move(rhs), dim);
}

}  // namespace

LinearSolutionSet::LinearSolutionSet(std::vector<std::vector<double>> rows,
                                     std::vector<double> rhs, std::size_t dim)
    : dim_(dim), rows_(std::move(rows)), rhs_(std::move(rhs)) {
  for (const auto& row : rows_) {
    std::vector<double> v = row;
    const double n0 = norm2(v);
    if (n0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : basis_) {
        const double proj = dot(u, v);
        for (std::size_t i = 0; i < dim_; ++i) v[i] -= proj * u[i];
      }
    const double nv = norm2(v);
    if (nv <= 1e-10 * n0) continue;
    for (double& z : v) z /= nv;
    basis_.push_back(std::move(v));
  }

  // Least squares for x = U c: the columns of M = R U are independent, so a
  // Gram-Schmidt QR of M solves it.
  const std::size_t m = rows_.size();
  const std::size_t r = basis_.size();
  std::vector<std::vector<double>> qcols;
  std::vector<std::vector<double>> rmat(r, std::vector<double>(r, 0.0));
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<double> col(m);
    for (std::size_t i = 0; i < m; ++i) col[i] = dot(rows_[i], basis_[j]);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < qcols.size(); ++k) {
        const double proj = dot(qcols[k], col);
        rmat[k][j] += proj;
        for (std::size_t i = 0; i < m; ++i) col[i] -= proj * qcols[k][i];
      }
    const double nc = norm2(col);
    rmat[j][j] = nc;
    for (double& z : col) z /= nc;
    qcols.push_back(std::move(col));
  }
  std::vector<double> coeff(r);
  for (std::size_t k = 0; k < r; ++k) coeff[k] = dot(qcols[k], rhs_);
  for (std::size_t j = r; j-- > 0;) {
    double acc = coeff[j];
    for (std::size_t k = j + 1; k < r; ++k) acc -= rmat[j][k] * coeff[k];
    coeff[j] = acc / rmat[j][j];
  }
  particular_.assign(dim_, 0.0);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < dim_; ++i) particular_[i] += coeff[j] * basis_[j][i];
  consistency_ = residual(particular_);
}

std::vector<double> LinearSolutionSet::project(const std::vector<double>& v) const {
  std::vector<double> out = v;
  for (const auto& u : basis_) {
    const double proj = dot(u, v);
    for (std::size_t i = 0; i < dim_; ++i) out[i] -= proj * u[i];
  }
  for (std::size_t i = 0; i < dim_; ++i) out[i] += particular_[i];
  return out;
}

double LinearSolutionSet::residual(const std::vector<double>& x) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const double diff = dot(rows_[k], x) - rhs_[k];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

AffineProjector::AffineProjector(const AffineConstraint& c)
    : order_(c.domain.dim()), set_(build_constraint_rows(c)) {}

std::optional<CMatrix> AffineProjector::refine_factor(const CMatrix& v0, double feas_tol,
                                                      int max_steps) const {
  const std::size_t d = v0.rows();
  const std::size_t k = v0.cols();
  const auto& rows = set_.rows();
  const auto& rhs = set_.rhs();
  auto misfit = [&](const CMatrix& v) {
    const auto x = hermitian_coordinates(v * adjoint(v));
    std::vector<double> r(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) r[i] = rhs[i] - dot(rows[i], x);
    return r;
  };

  CMatrix v = v0;
  auto r = misfit(v);
  double res = norm2(r);
  // Aim well below feas_tol so accepted witnesses have margin.
  for (int step = 0; step < max_steps && res >= 1e-3 * feas_tol; ++step) {
    // Jacobian columns: the image of V E^dagger + E V^dagger for each real
    // and imaginary unit E of the factor.
    std::vector<std::vector<double>> jac(rows.size(), std::vector<double>(2 * d * k));
    const CMatrix vd = adjoint(v);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t c = 0; c < k; ++c)
        for (int part = 0; part < 2; ++part) {
          const cplx unit = part == 0 ? cplx(1.0) : cplx(0.0, 1.0);
          // V E^dagger has column a equal to conj(unit) V[:, c]; E V^dagger
          // has row a equal to unit V[:, c]^dagger.
          CMatrix img(d, d);
          for (std::size_t i = 0; i < d; ++i) {
            img(i, a) += std::conj(unit) * v(i, c);
            img(a, i) += unit * vd(c, i);
          }
          const auto col = hermitian_coordinates(img);
          const std::size_t j = 2 * (a * k + c) + static_cast<std::size_t>(part);
          for (std::size_t i = 0; i < rows.size(); ++i) jac[i][j] = dot(rows[i], col);
        }
    const LinearSolutionSet lin(std::move(jac), r, 2 * d * k);
    const auto delta = lin.project(std::vector<double>(2 * d * k, 0.0));

    bool improved = false;
    for (double scale = 1.0; scale > 1e-3; scale *= 0.5) {
      CMatrix trial = v;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t c = 0; c < k; ++c) {
          const std::size_t j = 2 * (a * k + c);
          trial(a, c) += scale * cplx(delta[j], delta[j + 1]);
        }
      auto tr = misfit(trial);
      const double tres = norm2(tr);
      if (tres < res) {
        v = std::move(trial);
        r = std::move(tr);
        res = tres;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (res >= feas_tol) return std::nullopt;
  return v * adjoint(v);
}

std::string_view to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::Feasible: return "Feasible";
    case FeasibilityStatus::Infeasible: return "Infeasible";
    case FeasibilityStatus::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

FeasibilityReport solve_feasibility(const AffineConstraint& constraint,
                                    const FeasibilityOptions& opts) {
  const std::size_t d = constraint.domain.dim();
  if (d > opts.size_cap) {
    throw Error(ErrorCode::SizeCapExceeded, "feasibility domain of order " + std::to_string(d) +
                                                " exceeds cap " + std::to_string(opts.size_cap));
  }
  const AffineProjector affine(constraint);
  FeasibilityReport report;
  if (affine.consistency_residual() > opts.feas_tol) {
    report.status = FeasibilityStatus::Infeasible;
    report.gap = affine.consistency_residual();
    report.residual = affine.consistency_residual();
    return report;
  }

  const Tolerance eig_tol = opts.tol.at(d);
  const std::size_t n = affine.dim();
  std::vector<double> x(n, 0.0), p(n, 0.0), q(n, 0.0), y(n), tmp(n);
  std::vector<double> gaps;
  gaps.reserve(static_cast<std::size_t>(opts.max_iterations));

  for (int k = 1; k <= opts.max_iterations; ++k) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + p[i];
    y = affine.project(tmp);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = tmp[i] - y[i];
      tmp[i] = y[i] + q[i];
    }
    const CMatrix psd = project_psd(hermitian_from_coordinates(tmp, d), eig_tol);
    x = hermitian_coordinates(psd);
    for (std::size_t i = 0; i < n; ++i) q[i] = tmp[i] - x[i];

    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap += (y[i] - x[i]) * (y[i] - x[i]);
    gap = std::sqrt(gap);
    const double residual = affine.residual(x);
    gaps.push_back(gap);

    if (opts.observer) {
      const CMatrix affine_point = hermitian_from_coordinates(y, d);
      opts.observer({k, affine_point, psd, gap, residual});
    }

    report.iterations = k;
    report.gap = gap;
    report.residual = residual;
    if (residual < opts.feas_tol) {
      report.status = FeasibilityStatus::Feasible;
      report.witness = DensityMatrix::assume_valid(constraint.domain, psd);
      return report;
    }
    if (opts.polish_interval > 0 && k % opts.polish_interval == 0) {
      if (auto w = polish(affine, psd, opts.feas_tol, eig_tol)) {
        report.status = FeasibilityStatus::Feasible;
        report.residual = affine.residual(hermitian_coordinates(*w));
        report.polished = true;
        report.witness = DensityMatrix::assume_valid(constraint.domain, *w);
        return report;
      }
    }
    if (k > opts.plateau_window) {
      const double before = gaps[static_cast<std::size_t>(k - 1 - opts.plateau_window)];
      if (gap > opts.gap_tol && std::abs(gap - before) <= opts.plateau_rel * gap) {
        report.status = FeasibilityStatus::Infeasible;
        return report;
      }
    }
  }
  report.status = FeasibilityStatus::Inconclusive;
  return report;
}

bool member_ins_del(const DensityMatrix& sigma, const DensityMatrix& rho, int s, int t,
                    const ToleranceSettings& tol) {
  if (sigma.level() != rho.level() || s < 0 || t < 0 || s > rho.length() ||
      sigma.length() != rho.length() - s + t) {
    throw Error(ErrorCode::ShapeMismatch, "member_ins_del: n(sigma) = " +
                                              std::to_string(sigma.length()) + ", n(rho) = " +
                                              std::to_string(rho.length()) + ", s = " +
                                              std::to_string(s) + ", t = " + std::to_string(t));
  }
  const auto from_sigma = deletion_sphere(sigma, t, tol);
  const auto from_rho = deletion_sphere(rho, s, tol);
  const double eq_tol = tol.at(ipow(static_cast<std::size_t>(rho.level()), rho.length() - s)).eq_tol;
  return sphere_intersection(from_sigma, from_rho, eq_tol).has_value();
}

FeasibilityReport feasibility_del_ins(const DensityMatrix& sigma, const DensityMatrix& rho,
                                      const IndexSet& p, const IndexSet& q,
                                      const FeasibilityOptions& opts) {
  const int total = rho.length() + static_cast<int>(q.size());
  if (sigma.level() != rho.level() || q.ambient() != total || p.ambient() != total ||
      sigma.length() != total - static_cast<int>(p.size())) {
    throw Error(ErrorCode::ShapeMismatch, "feasibility_del_ins: P = " + p.to_string() +
                                              ", Q = " + q.to_string() + " inconsistent with " +
                                              std::to_string(rho.length()) + " -> " +
                                              std::to_string(sigma.length()) + " qudits");
  }
  const std::size_t dim = ipow(static_cast<std::size_t>(rho.level()), total);
  if (dim > opts.size_cap) {
    throw Error(ErrorCode::SizeCapExceeded, "l^(n+t) = " + std::to_string(dim) +
                                                " exceeds feasibility cap " +
                                                std::to_string(opts.size_cap));
  }
  AffineConstraint c{QuditShape(rho.level(), total), {{q, rho.matrix()}, {p, sigma.matrix()}}};
  FeasibilityReport report = solve_feasibility(c, opts);
  report.p = p;
  report.q = q;
  return report;
}

FeasibilityReport member_del_ins(const DensityMatrix& sigma, const DensityMatrix& rho, int s,
                                 int t, const FeasibilityOptions& opts) {
  if (sigma.level() != rho.level() || s < 0 || t < 0 ||
      sigma.length() != rho.length() + t - s || sigma.length() < 0) {
    throw Error(ErrorCode::ShapeMismatch, "member_del_ins: n(sigma) = " +
                                              std::to_string(sigma.length()) + ", n(rho) = " +
                                              std::to_string(rho.length()) + ", s = " +
                                              std::to_string(s) + ", t = " + std::to_string(t));
  }
  const int total = rho.length() + t;
  FeasibilityReport combined;
  combined.status = FeasibilityStatus::Infeasible;
  bool any_inconclusive = false;
  double min_gap = std::numeric_limits<double>::infinity();
  for (const IndexSet& p : all_subsets(total, s)) {
    for (const IndexSet& q : all_subsets(total, t)) {
      FeasibilityReport r = feasibility_del_ins(sigma, rho, p, q, opts);
      const bool inconsistent = r.status == FeasibilityStatus::Infeasible && r.iterations == 0;
      combined.pairs.push_back({p, q, r.status, r.gap, r.residual, r.iterations, inconsistent});
      combined.iterations += r.iterations;
      if (r.status == FeasibilityStatus::Feasible) {
        combined.status = FeasibilityStatus::Feasible;
        combined.witness = std::move(r.witness);
        combined.polished = r.polished;
        combined.gap = r.gap;
        combined.residual = r.residual;
        combined.p = p;
        combined.q = q;
        return combined;
      }
      if (r.status == FeasibilityStatus::Inconclusive) any_inconclusive = true;
      if (r.gap < min_gap) {
        min_gap = r.gap;
        combined.residual = r.residual;
        combined.p = p;
        combined.q = q;
      }
    }
  }
  combined.gap = min_gap;
  if (any_inconclusive) combined.status = FeasibilityStatus::Inconclusive;
  return combined;
}

ContainmentTrial check_containment_trial(const DensityMatrix& rho, std::uint64_t seed, int s,
                                         int t, const ToleranceSettings& tol) {
  if (s < 0 || t < 0 || s > rho.length()) {
    throw Error(ErrorCode::CountOutOfRange, "trajectory needs 0 <= s <= n and t >= 0");
  }
  SplitMix64 rng(seed);
  std::vector<char> ops(static_cast<std::size_t>(s), 'D');
  ops.insert(ops.end(), static_cast<std::size_t>(t), 'I');
  for (std::size_t i = ops.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i) - 1));
    std::swap(ops[i - 1], ops[j]);
  }

  DensityMatrix cur = rho;
  std::string trajectory;
  for (char op : ops) {
    if (!trajectory.empty()) trajectory += ' ';
    if (op == 'D') {
      const IndexSet pos({rng.uniform_int(1, cur.length())}, cur.length());
      cur = delete_qudits(cur, pos);
      trajectory += "D" + pos.to_string();
    } else {
      const int len = cur.length() + 1;
      const IndexSet pos({rng.uniform_int(1, len)}, len);
      cur = sample_insertions(cur, pos, 1 + static_cast<int>(rng() % 2), rng(), tol).back();
      trajectory += "I" + pos.to_string();
    }
  }
  const bool contained = member_ins_del(cur, rho, s, t, tol);
  return {contained, std::move(trajectory), std::move(cur)};
}

}  // namespace qindel
