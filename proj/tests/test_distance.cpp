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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qindel/codes.hpp"
#include "qindel/distance.hpp"
#include "qindel/random.hpp"
#include "test_util.hpp"

namespace qindel {
namespace {

using testing::MatrixNear;
using testing::proj;

DensityMatrix state(const CMatrix& m, int n) { return validate(m, QuditShape(2, n)); }

// Reference: brute force over every (s, t) and every pair of index sets.
int brute_distance(const DensityMatrix& a, const DensityMatrix& b) {
  int best = a.length() + b.length();
  for (int s = 0; s <= a.length(); ++s) {
    const int t = b.length() - a.length() + s;
    if (t < 0 || t > b.length()) continue;
    for (const auto& p : all_subsets(a.length(), s))
      for (const auto& q : all_subsets(b.length(), t)) {
        const double d = frobenius_distance(delete_qudits(a, p).matrix(), delete_qudits(b, q).matrix());
        if (d <= Tolerance::for_dim(ipow(2, a.length() - s)).eq_tol) best = std::min(best, s + t);
      }
  }
  return best;
}

void expect_witness(const DistanceResult& r, const DensityMatrix& a, const DensityMatrix& b) {
  EXPECT_EQ(r.witness.s + r.witness.t, r.value);
  EXPECT_EQ(static_cast<int>(r.witness.p.size()), r.witness.s);
  EXPECT_EQ(static_cast<int>(r.witness.q.size()), r.witness.t);
  const auto da = delete_qudits(a, r.witness.p), db = delete_qudits(b, r.witness.q);
  EXPECT_TRUE(MatrixNear(da.matrix(), db.matrix(), Tolerance::for_dim(da.dim()).eq_tol));
  EXPECT_TRUE(MatrixNear(da.matrix(), r.witness.common.matrix(), 1e-12));
}

TEST(IndelDistance, Examples) {
  SplitMix64 rng(1);
  const auto r = random_density(QuditShape(2, 3), rng);
  EXPECT_EQ(indel_distance(r, r).value, 0);

  const auto rho1 = state(0.5 * proj("00") + 0.5 * proj("11"), 2);
  const auto rho2 = state(0.5 * proj("10") + 0.5 * proj("01"), 2);
  const auto d = indel_distance(rho1, rho2);
  EXPECT_EQ(d.value, 2);
  expect_witness(d, rho1, rho2);
  EXPECT_TRUE(MatrixNear(d.witness.common.matrix(), 0.5 * CMatrix::identity(2), 1e-10));

  const auto d01 = indel_distance(state(proj("0"), 1), state(proj("01"), 2));
  EXPECT_EQ(d01.value, 1);
  EXPECT_EQ(d01.witness.q.to_string(), "{2}");

  EXPECT_EQ(indel_distance(state(proj("00"), 2), state(proj("11"), 2)).value, 4);
  EXPECT_QINDEL_ERROR(indel_distance(r, validate(CMatrix::identity(3) * (1.0 / 3.0), QuditShape(3, 1))),
                      ErrorCode::LevelMismatch);
}

TEST(IndelDistance, FullDeletionBound) {
  SplitMix64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_density(QuditShape(2, rng.uniform_int(0, 3)), rng);
    const auto b = random_density(QuditShape(2, rng.uniform_int(0, 3)), rng);
    const auto d = indel_distance(a, b);
    EXPECT_LE(d.value, a.length() + b.length());
    expect_witness(d, a, b);
  }
}

TEST(DistanceProperties, DistanceMatchesBruteForce) {
  SplitMix64 rng(3);
  // Product states from a small pool so that spheres do collide.
  std::vector<CMatrix> singles{proj("0"), proj("1"), 0.5 * CMatrix::identity(2)};
  for (int i = 0; i < 60; ++i) {
    auto make = [&](int n) {
      CMatrix m{{1.0}};
      for (int k = 0; k < n; ++k) m = kron(m, singles[static_cast<std::size_t>(rng.uniform_int(0, 2))]);
      return state(m, n);
    };
    const auto a = make(rng.uniform_int(1, 3));
    const auto b = make(rng.uniform_int(1, 3));
    const auto d = indel_distance(a, b);
    EXPECT_EQ(d.value, brute_distance(a, b));
    EXPECT_EQ(d.value, indel_distance(b, a).value);
    if (a.length() == b.length()) EXPECT_EQ(d.value % 2, 0);
    expect_witness(d, a, b);
  }
}

TEST(CodeSample, Validation) {
  EXPECT_QINDEL_ERROR(CodeSample::make({}, {}), ErrorCode::TooFewStates);
  const auto a = state(proj("00"), 2);
  EXPECT_QINDEL_ERROR(CodeSample::make({a, a}, {"a", "b"}), ErrorCode::InvalidArgument);
  EXPECT_QINDEL_ERROR(CodeSample::make({a, state(proj("0"), 1)}, {"a", "b"}), ErrorCode::ShapeMismatch);
  EXPECT_QINDEL_ERROR(CodeSample::make({a}, {"a", "b"}), ErrorCode::ShapeMismatch);
  const auto c = CodeSample::deduplicated({a, a, state(proj("11"), 2)}, {"a", "a2", "b"});
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.labels()[1], "b");
}

TEST(MinDistance, OrthogonalProducts) {
  const auto code = CodeSample::make({state(proj("00"), 2), state(proj("11"), 2)}, {"00", "11"});
  const auto md = min_distance(code);
  EXPECT_EQ(md.value, 4);
  EXPECT_EQ(md.pairs.size(), 1u);
  EXPECT_QINDEL_ERROR(min_distance(CodeSample::make({state(proj("00"), 2)}, {"00"})), ErrorCode::TooFewStates);
}

CodeSample grid_code(const codes::CodeGrid& g, bool x2) {
  std::vector<DensityMatrix> states;
  for (const auto& p : g.params) states.push_back(x2 ? codes::hagiwara_codeword(p) : codes::x1_codeword(p));
  return CodeSample::deduplicated(states, g.labels);
}

TEST(MinDistance, X1GridIsTwo) {
  const auto code = grid_code(codes::x1_grid(), false);
  const auto md = min_distance(code);
  EXPECT_EQ(md.value, 2);
  const auto v = corrects(code, ErrorModel::Deletions, 1);
  EXPECT_EQ(v.verdict, Verdict::False);
  ASSERT_TRUE(v.evidence.has_value());
  // Evidence is a phase pair: equal moduli, different relative phase.
  const auto& a = code.states()[v.evidence->i].matrix();
  const auto& b = code.states()[v.evidence->j].matrix();
  EXPECT_NEAR(std::abs(a(0, 0) - b(0, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(a(3, 3) - b(3, 3)), 0.0, 1e-12);
  EXPECT_GT(std::abs(a(0, 3) - b(0, 3)), 1e-6);
}

TEST(MinDistance, X2GridIsFour) {
  const auto code = grid_code(codes::x2_grid(), true);
  EXPECT_GT(min_cross_sphere_distance(code, 1).distance, 1e-6);
  EXPECT_TRUE(deletion_spheres_disjoint(code, 1));
  EXPECT_FALSE(deletion_spheres_disjoint(code, 2));
  const auto md = min_distance(code);
  EXPECT_EQ(md.value, 4);
  for (const auto& pd : md.pairs) EXPECT_EQ(pd.result.value % 2, 0);
  EXPECT_EQ(corrects(code, ErrorModel::Deletions, 1).verdict, Verdict::True);
  EXPECT_EQ(corrects(code, ErrorModel::Indel, 1).verdict, Verdict::True);
  EXPECT_EQ(corrects(code, ErrorModel::Deletions, 2).verdict, Verdict::False);
}

TEST(Corrects, InsertionButNotDeletion) {
  const auto code = CodeSample::make({codes::rho(), codes::psi()}, {"rho", "psi"});
  const auto del = corrects(code, ErrorModel::Deletions, 1);
  EXPECT_EQ(del.verdict, Verdict::False);
  EXPECT_EQ(del.min_distance, 2);
  const auto ins = corrects_insertions(code, 1);
  EXPECT_EQ(ins.verdict, Verdict::True);
  ASSERT_TRUE(ins.evidence && ins.evidence->feasibility);
  EXPECT_GE(ins.evidence->feasibility->gap, 1e-3);
}

TEST(Corrects, SharedInsertionIsDetected) {
  // Two states that are deletions of one parent share that parent as an
  // insertion.
  SplitMix64 rng(4);
  const auto tau = random_density(QuditShape(2, 3), 2, rng);
  const auto a = delete_qudits(tau, IndexSet({1}, 3));
  const auto b = delete_qudits(tau, IndexSet({3}, 3));
  const auto code = CodeSample::make({a, b}, {"a", "b"});
  const auto v = corrects_insertions(code, 1);
  EXPECT_EQ(v.verdict, Verdict::False);
  ASSERT_TRUE(v.evidence && v.evidence->feasibility && v.evidence->feasibility->witness);
  const auto& w = *v.evidence->feasibility->witness;
  EXPECT_LT(frobenius_distance(delete_qudits(w, *v.evidence->feasibility->q).matrix(), b.matrix()), 1e-6);
  EXPECT_LT(frobenius_distance(delete_qudits(w, *v.evidence->feasibility->p).matrix(), a.matrix()), 1e-6);
}

TEST(Corrects, DistanceThreeImpliesInsertionCorrection) {
  // d(|00>, |11>) = 4 >= 3, so single-insertion spheres cannot meet.
  const auto code = CodeSample::make({state(proj("00"), 2), state(proj("11"), 2)}, {"00", "11"});
  EXPECT_GE(min_distance(code).value, 3);
  EXPECT_EQ(corrects_insertions(code, 1).verdict, Verdict::True);
}

TEST(Corrects, Errors) {
  const auto code = CodeSample::make({codes::rho(), codes::psi()}, {"rho", "psi"});
  EXPECT_QINDEL_ERROR(corrects(code, ErrorModel::Deletions, 0), ErrorCode::CountOutOfRange);
  EXPECT_QINDEL_ERROR(corrects_insertions(code, 0), ErrorCode::CountOutOfRange);
  EXPECT_QINDEL_ERROR(corrects_insertions(code, 3), ErrorCode::SizeCapExceeded);
  EXPECT_QINDEL_ERROR(parse_error_model("bogus"), ErrorCode::InvalidArgument);
  EXPECT_EQ(parse_error_model("indel"), ErrorModel::Indel);
}

TEST(DistanceProperties, DeletionCorrectionEquivalence) {
  SplitMix64 rng(5);
  for (int i = 0; i < 30; ++i) {
    std::vector<DensityMatrix> states;
    std::vector<std::string> labels;
    const int size = rng.uniform_int(2, 4);
    for (int k = 0; k < size; ++k) {
      // Mix of random and basis states to get both verdicts.
      if (rng.uniform() < 0.5) {
        states.push_back(random_density(QuditShape(2, 3), rng));
      } else {
        std::string bits;
        for (int b = 0; b < 3; ++b) bits += static_cast<char>('0' + rng.uniform_int(0, 1));
        states.push_back(state(proj(bits), 3));
      }
      labels.push_back(std::to_string(k));
    }
    const auto code = CodeSample::deduplicated(states, labels);
    if (code.size() < 2) continue;
    const int dmin = min_distance(code).value;
    for (int t : {1, 2}) {
      EXPECT_EQ(deletion_spheres_disjoint(code, t), dmin >= 2 * t + 1) << "t=" << t;
      const auto v = corrects(code, ErrorModel::Deletions, t);
      EXPECT_EQ(v.verdict == Verdict::True, dmin >= 2 * t + 1);
    }
  }
}

TEST(DistanceProperties, DeletionCorrectionNeverContradictsInsertions) {
  SplitMix64 rng(6);
  for (int i = 0; i < 10; ++i) {
    const auto code = CodeSample::make({random_density(QuditShape(2, 2), rng), random_density(QuditShape(2, 2), rng)},
                                       {"a", "b"});
    if (corrects(code, ErrorModel::Deletions, 1).verdict == Verdict::True) {
      EXPECT_NE(corrects_insertions(code, 1).verdict, Verdict::False);
    }
  }
}

TEST(MetricCheck, Examples) {
  SplitMix64 rng(7);
  const auto r = random_density(QuditShape(2, 2), rng);
  EXPECT_TRUE(metric_check({{r, r, r}}).ok());
  const auto rho1 = state(0.5 * proj("00") + 0.5 * proj("11"), 2);
  const auto rho2 = state(0.5 * proj("10") + 0.5 * proj("01"), 2);
  const auto r00 = state(proj("00"), 2);
  const auto rep = metric_check({{rho1, rho2, r00}});
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.distances, 9u);
  EXPECT_EQ(brute_distance(rho1, rho2), 2);
  EXPECT_EQ(indel_distance(rho1, r00).value, brute_distance(rho1, r00));
  EXPECT_EQ(indel_distance(rho2, r00).value, brute_distance(rho2, r00));
}

TEST(MetricCheck, RandomTwoQubitTriples) {
  SplitMix64 rng(8);
  std::vector<std::array<DensityMatrix, 3>> triples;
  for (int i = 0; i < 50; ++i) {
    triples.push_back({random_density(QuditShape(2, 2), rng), random_density(QuditShape(2, 2), rng),
                       random_density(QuditShape(2, 2), rng)});
  }
  const auto rep = metric_check(triples);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.triples, 50u);
}

}  // namespace
}  // namespace qindel
