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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qindel/channels.hpp"
#include "qindel/feasibility.hpp"
#include "qindel/state.hpp"
#include "qindel/tolerance.hpp"

namespace qindel {

struct DistanceWitness {
  int s;  ///< deletions applied to the first state
  int t;  ///< deletions applied to the second state
  IndexSet p;
  IndexSet q;
  DensityMatrix common;  ///< D_P(first), equal to D_Q(second) within eq_tol
};

struct DistanceResult {
  int value;
  DistanceWitness witness;
};

/// Smallest s + t with D^s(a) and D^t(b) intersecting. Totals are visited in
/// increasing order and, within a total, by increasing s. Always terminates
/// at n + m. Throws LevelMismatch.
DistanceResult indel_distance(const DensityMatrix& a, const DensityMatrix& b,
                              const ToleranceSettings& tol = {});

/// Finite sample of a code: pairwise distinct states of one shape.
class CodeSample {
 public:
  /// Throws TooFewStates when empty, ShapeMismatch on mixed shapes or a
  /// label count that differs from the state count, InvalidArgument on
  /// duplicate states.
  static CodeSample make(std::vector<DensityMatrix> states, std::vector<std::string> labels,
                         const ToleranceSettings& tol = {});
  /// Keeps the first of every group of states equal within eq_tol.
  static CodeSample deduplicated(const std::vector<DensityMatrix>& states,
                                 const std::vector<std::string>& labels,
                                 const ToleranceSettings& tol = {});

  const std::vector<DensityMatrix>& states() const noexcept { return states_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return states_.size(); }
  const QuditShape& shape() const { return states_.front().shape(); }

 private:
  CodeSample() = default;
  std::vector<DensityMatrix> states_;
  std::vector<std::string> labels_;
};

struct PairDistance {
  std::size_t i;
  std::size_t j;
  DistanceResult result;
};

struct MinDistance {
  int value;
  std::size_t i;  ///< achieving pair, i < j
  std::size_t j;
  std::vector<PairDistance> pairs;  ///< every unordered pair, in (i, j) order
};

/// Minimum pairwise indel distance. Throws TooFewStates below two states.
MinDistance min_distance(const CodeSample& code, const ToleranceSettings& tol = {});

struct CrossSphereGap {
  double distance;  ///< smallest Frobenius distance between D^t spheres of distinct codewords
  std::size_t i;
  std::size_t j;
};

/// Closest approach of the t-deletion spheres of distinct codewords.
CrossSphereGap min_cross_sphere_distance(const CodeSample& code, int t,
                                         const ToleranceSettings& tol = {});

/// All pairwise D^t spheres disjoint at eq_tol.
bool deletion_spheres_disjoint(const CodeSample& code, int t, const ToleranceSettings& tol = {});

enum class ErrorModel { Deletions, Indel, Insertions };
enum class Verdict { True, False, Unknown };

std::string_view to_string(ErrorModel m);
std::string_view to_string(Verdict v);
/// Parses "deletions", "indel" or "insertions"; throws InvalidArgument.
ErrorModel parse_error_model(std::string_view s);

struct PairEvidence {
  std::size_t i;
  std::size_t j;
  std::optional<DistanceResult> distance;
  std::optional<FeasibilityReport> feasibility;
};

struct CapabilityVerdict {
  Verdict verdict;
  ErrorModel model;
  int t;
  std::string criterion;
  std::optional<int> min_distance;
  std::optional<PairEvidence> evidence;  ///< closest or deciding pair
};

/// Deletions: true iff d_min >= 2t + 1. Indel (t insertions and deletions in
/// total): same test, since correcting t deletions already suffices and is
/// also necessary. Throws TooFewStates and CountOutOfRange (t < 1).
CapabilityVerdict corrects(const CodeSample& code, ErrorModel model, int t,
                           const ToleranceSettings& tol = {});

/// Pairwise disjointness of t-insertion spheres through member_del_ins.
/// Any Feasible pair gives False, otherwise any Inconclusive pair gives
/// Unknown. Throws SizeCapExceeded.
CapabilityVerdict corrects_insertions(const CodeSample& code, int t,
                                      const FeasibilityOptions& opts = {});

struct MetricViolation {
  std::size_t triple;
  std::string axiom;
  std::string detail;
};

struct MetricReport {
  std::size_t triples = 0;
  std::size_t distances = 0;
  std::vector<MetricViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Identity of indiscernibles, symmetry, the triangle inequality in every
/// orientation, and evenness for equal lengths, on each triple.
MetricReport metric_check(const std::vector<std::array<DensityMatrix, 3>>& triples,
                          const ToleranceSettings& tol = {});

}  // namespace qindel
