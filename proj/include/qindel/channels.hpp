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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qindel/cmatrix.hpp"
#include "qindel/state.hpp"
#include "qindel/tolerance.hpp"

namespace qindel {

/// Strictly increasing 1-based qudit positions inside [1, ambient].
class IndexSet {
 public:
  IndexSet() = default;
  /// Sorts `positions`. Throws InvalidIndexSet on duplicates and
  /// PositionOutOfRange on entries outside [1, ambient].
  IndexSet(std::vector<int> positions, int ambient);

  const std::vector<int>& positions() const noexcept { return positions_; }
  int ambient() const noexcept { return ambient_; }
  std::size_t size() const noexcept { return positions_.size(); }
  bool empty() const noexcept { return positions_.empty(); }
  bool contains(int p) const;

  std::string to_string() const;  ///< e.g. "{1,3}"

  bool operator==(const IndexSet&) const = default;

 private:
  std::vector<int> positions_;
  int ambient_ = 0;
};

/// All k-subsets of [1, n] in lexicographic order.
std::vector<IndexSet> all_subsets(int n, int k);

// Raw-matrix forms. They accept any operator of order l^n, not only states,
// which the feasibility solver needs for its linear constraint map.
CMatrix partial_trace_matrix(const CMatrix& m, const QuditShape& shape, int position);
CMatrix delete_matrix(const CMatrix& m, const QuditShape& shape, const IndexSet& positions);
CMatrix index_permutation_matrix(const CMatrix& m, const QuditShape& shape,
                                 std::span<const int> perm);

/// Tr_p. Throws PositionOutOfRange unless 1 <= p <= n.
DensityMatrix partial_trace(const DensityMatrix& rho, int position);

/// D_P = Tr_{p_1} o ... o Tr_{p_s}, applied from the largest position down so
/// the remaining positions keep their labels.
DensityMatrix delete_qudits(const DensityMatrix& rho, const IndexSet& positions);

struct SphereEntry {
  DensityMatrix state;
  IndexSet origin;            ///< first index set that produced this state
  std::size_t multiplicity;   ///< how many index sets produced it
};

/// Finite set of states with tolerance-based membership.
struct SphereSet {
  std::vector<SphereEntry> members;
  std::size_t raw_count = 0;  ///< candidates before deduplication

  std::size_t size() const noexcept { return members.size(); }
  /// Index of a member within `eq_tol` of `m`, or -1.
  std::ptrdiff_t find(const CMatrix& m, double eq_tol) const;
};

/// D^s(rho) over all C(n, s) index sets, greedily deduplicated: a candidate
/// joins only if it is farther than eq_tol from every existing member.
/// Throws CountOutOfRange unless 0 <= s <= n.
SphereSet deletion_sphere(const DensityMatrix& rho, int s, const ToleranceSettings& tol = {});

struct SphereMatch {
  std::size_t first;   ///< member index in the first sphere
  std::size_t second;  ///< member index in the second sphere
  double distance;
};

/// Closest cross pair of two spheres over states of equal length, or nullopt
/// when either sphere is empty.
std::optional<SphereMatch> closest_members(const SphereSet& a, const SphereSet& b);

/// A cross pair within `eq_tol`, if the spheres intersect.
std::optional<SphereMatch> sphere_intersection(const SphereSet& a, const SphereSet& b,
                                               double eq_tol);

/// tau(rho): qudit i is moved to position perm[i-1] (1-based values).
/// Throws NotAPermutation.
DensityMatrix index_permutation(const DensityMatrix& rho, std::span<const int> perm);

/// tau^Q on [n+t]: the appended slots n+1..n+t go to q_1 < ... < q_t and the
/// original slots keep their relative order. Throws InvalidIndexSet unless
/// Q.ambient() == n + |Q|.
std::vector<int> tau_q(const IndexSet& q, int n);

/// Blocks A_{x,y} of an insertion, indexed by the spectral pairs of rho.
struct InsertionBlocks {
  int t = 0;
  std::vector<std::vector<CMatrix>> a;  ///< a[x][y], each l^t x l^t

  /// Separable insertion: A_{x,x} = pis[x], off-diagonal blocks zero.
  static InsertionBlocks separable(int t, const std::vector<CMatrix>& pis);
};

/// sigma = tau^Q( sum_{x,y} sqrt(p_x p_y) |x_L><y_L| (x) A_{x,y} ).
/// Errors: BlockConstraintViolated (A_{x,x} not a state, A_{x,y}^dagger !=
/// A_{y,x}, tr A_{x,y} != 0), NotPSD (valid blocks, non-PSD assembly),
/// RoundTripFailed (D_Q(sigma) != rho), InvalidIndexSet.
DensityMatrix insert_construct(const SpectralForm& form, const IndexSet& q,
                               const InsertionBlocks& blocks, const ToleranceSettings& tol = {});
DensityMatrix insert_construct(const DensityMatrix& rho, const IndexSet& q,
                               const InsertionBlocks& blocks, const ToleranceSettings& tol = {});

/// D_Q(sigma) == rho within eq_tol. ShapeMismatch when n(sigma) != n(rho) + |Q|.
bool insertion_member(const DensityMatrix& sigma, const DensityMatrix& rho, const IndexSet& q,
                      const ToleranceSettings& tol = {});

enum class InsertionFamily { Separable, Entangled };

struct InsertionSample {
  DensityMatrix state;
  InsertionFamily family;
};

/// `count` members of I_Q(rho). Even-numbered samples are separable (random
/// A_{x,x}, zero coherences); odd-numbered ones are purification-style
/// |Phi> = sum_x sqrt(p_x)|x_L>|u_x> when l^t >= rank(rho), else separable.
std::vector<InsertionSample> sample_insertions_tagged(const DensityMatrix& rho, const IndexSet& q,
                                                      int count, std::uint64_t seed,
                                                      const ToleranceSettings& tol = {});
std::vector<DensityMatrix> sample_insertions(const DensityMatrix& rho, const IndexSet& q,
                                             int count, std::uint64_t seed,
                                             const ToleranceSettings& tol = {});

}  // namespace qindel
