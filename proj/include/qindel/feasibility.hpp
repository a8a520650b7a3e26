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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qindel/channels.hpp"
#include "qindel/cmatrix.hpp"
#include "qindel/state.hpp"
#include "qindel/tolerance.hpp"

namespace qindel {

/// tau ranges over Hermitian matrices on `domain`; each condition demands
/// D_positions(tau) == target.
struct AffineConstraint {
  struct Condition {
    IndexSet positions;
    CMatrix target;
  };

  QuditShape domain;
  std::vector<Condition> conditions;
};

/// Real coordinates of an order-d Hermitian matrix in an orthonormal basis
/// (diagonal, then sqrt2 Re and sqrt2 Im of the strict upper triangle), so
/// Euclidean distance equals Frobenius distance.
std::vector<double> hermitian_coordinates(const CMatrix& h);
CMatrix hermitian_from_coordinates(const std::vector<double>& v, std::size_t dim);

/// Solution set of a real linear system {x : R x = b}, with the orthogonal
/// projector onto it. Rows are orthonormalized by modified Gram-Schmidt with
/// reorthogonalization and a relative rank cutoff, so redundant rows are
/// harmless.
class LinearSolutionSet {
 public:
  LinearSolutionSet(std::vector<std::vector<double>> rows, std::vector<double> rhs,
                    std::size_t dim);

  /// Least-squares misfit; above feas_tol the set is empty.
  double consistency_residual() const noexcept { return consistency_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  std::size_t dim() const noexcept { return dim_; }

  std::vector<double> project(const std::vector<double>& v) const;
  /// ||R x - b||
  double residual(const std::vector<double>& x) const;
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  const std::vector<double>& rhs() const noexcept { return rhs_; }

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::vector<std::vector<double>> basis_;
  std::vector<double> particular_;
  double consistency_ = 0.0;
};

/// The affine set of an AffineConstraint in Hermitian coordinates.
class AffineProjector {
 public:
  explicit AffineProjector(const AffineConstraint& c);

  double consistency_residual() const noexcept { return set_.consistency_residual(); }
  std::size_t rank() const noexcept { return set_.rank(); }
  std::size_t dim() const noexcept { return set_.dim(); }

  std::vector<double> project(const std::vector<double>& v) const { return set_.project(v); }
  /// sqrt(sum ||D_P(x) - target||_F^2)
  double residual(const std::vector<double>& x) const { return set_.residual(x); }

  /// Gauss-Newton on a factor V of tau = V V^dagger, starting from `v0`
  /// (order x k). Returns V V^dagger when the residual ends below
  /// `feas_tol`, nullopt otherwise.
  std::optional<CMatrix> refine_factor(const CMatrix& v0, double feas_tol,
                                       int max_steps = 30) const;

 private:
  std::size_t order_;
  LinearSolutionSet set_;
};

enum class FeasibilityStatus { Feasible, Infeasible, Inconclusive };

std::string_view to_string(FeasibilityStatus s);

struct DykstraIterate {
  int iteration;
  const CMatrix& affine_point;  ///< after the affine projection
  const CMatrix& psd_point;     ///< after the PSD projection
  double gap;
  double residual;
};

struct FeasibilityOptions {
  double feas_tol = 1e-6;
  double gap_tol = 1e-3;
  int max_iterations = 5000;
  int plateau_window = 100;
  double plateau_rel = 1e-8;
  std::size_t size_cap = 16;  ///< on l^{n+t}
  /// Every this many iterations, try an exact solve on the face spanned by
  /// the iterate's dominant eigenvectors; 0 disables.
  int polish_interval = 50;
  ToleranceSettings tol;
  std::function<void(const DykstraIterate&)> observer;
};

struct PairOutcome {
  IndexSet p;
  IndexSet q;
  FeasibilityStatus status;
  double gap;
  double residual;
  int iterations;
  bool inconsistent;  ///< affine constraints alone have no solution
};

struct FeasibilityReport {
  FeasibilityStatus status = FeasibilityStatus::Inconclusive;
  std::optional<DensityMatrix> witness;
  double gap = 0.0;       ///< distance between the affine set and the PSD iterate
  double residual = 0.0;  ///< constraint misfit of the PSD iterate
  int iterations = 0;
  bool polished = false;  ///< witness came from a face-restricted solve
  std::optional<IndexSet> p;  ///< deletion positions of the deciding pair
  std::optional<IndexSet> q;  ///< insertion positions of the deciding pair
  std::vector<PairOutcome> pairs;
};

/// Dykstra alternating projections between the PSD cone and an affine set.
FeasibilityReport solve_feasibility(const AffineConstraint& constraint,
                                    const FeasibilityOptions& opts = {});

/// Decides sigma in I^t o D^s(rho) exactly, as D^t(sigma) and D^s(rho)
/// intersecting. ShapeMismatch unless n(sigma) = n(rho) - s + t.
bool member_ins_del(const DensityMatrix& sigma, const DensityMatrix& rho, int s, int t,
                    const ToleranceSettings& tol = {});

/// Is sigma in D_P(I_Q(rho))? Searches tau >= 0 with D_Q(tau) = rho and
/// D_P(tau) = sigma. SizeCapExceeded when l^{n+t} > opts.size_cap.
FeasibilityReport feasibility_del_ins(const DensityMatrix& sigma, const DensityMatrix& rho,
                                      const IndexSet& p, const IndexSet& q,
                                      const FeasibilityOptions& opts = {});

/// sigma in D^s o I^t(rho), as the disjunction of feasibility_del_ins over
/// all (P, Q). Stops at the first Feasible pair.
FeasibilityReport member_del_ins(const DensityMatrix& sigma, const DensityMatrix& rho, int s,
                                 int t, const FeasibilityOptions& opts = {});

struct ContainmentTrial {
  bool contained;
  std::string trajectory;  ///< e.g. "I{1} D{3}"
  DensityMatrix result;
};

/// Random (s,t)-error trajectory on rho (shuffled single insertions drawn
/// with sample_insertions and single deletions at random positions), then
/// member_ins_del on the result. Requires s <= n(rho).
ContainmentTrial check_containment_trial(const DensityMatrix& rho, std::uint64_t seed, int s,
                                         int t, const ToleranceSettings& tol = {});

}  // namespace qindel
