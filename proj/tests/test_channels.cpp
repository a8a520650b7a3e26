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

#include "oracles.hpp"
#include "qindel/channels.hpp"
#include "qindel/codes.hpp"
#include "qindel/hermitian.hpp"
#include "qindel/random.hpp"
#include "test_util.hpp"

namespace qindel {
namespace {

using testing::MatrixNear;
using testing::proj;

DensityMatrix state(const CMatrix& m, int n, int l = 2) { return validate(m, QuditShape(l, n)); }

TEST(IndexSet, Validation) {
  const IndexSet s({3, 1}, 4);
  EXPECT_EQ(s.positions(), (std::vector<int>{1, 3}));
  EXPECT_EQ(s.to_string(), "{1,3}");
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  EXPECT_QINDEL_ERROR(IndexSet({0}, 2), ErrorCode::PositionOutOfRange);
  EXPECT_QINDEL_ERROR(IndexSet({3}, 2), ErrorCode::PositionOutOfRange);
  EXPECT_QINDEL_ERROR(IndexSet({1, 1}, 2), ErrorCode::InvalidIndexSet);
}

TEST(IndexSet, AllSubsetsLexicographic) {
  const auto s = all_subsets(4, 2);
  ASSERT_EQ(s.size(), 6u);
  EXPECT_EQ(s.front().to_string(), "{1,2}");
  EXPECT_EQ(s[2].to_string(), "{1,4}");
  EXPECT_EQ(s.back().to_string(), "{3,4}");
  EXPECT_EQ(all_subsets(3, 0).size(), 1u);
  EXPECT_TRUE(all_subsets(2, 3).empty());
}

TEST(PartialTrace, Examples) {
  EXPECT_EQ(partial_trace(state(proj("00"), 2), 2).matrix(), proj("0"));
  const auto r = codes::rho(0.3, 0.7);
  EXPECT_TRUE(MatrixNear(partial_trace(r, 1).matrix(), 0.3 * proj("0") + 0.7 * proj("1"), 1e-15));
  const double h = 1.0 / std::numbers::sqrt2;
  const auto bell = density_from_ket(PureKet{QuditShape(2, 2), {h, 0, 0, h}});
  EXPECT_TRUE(MatrixNear(partial_trace(bell, 1).matrix(), 0.5 * CMatrix::identity(2), 1e-15));
  EXPECT_TRUE(MatrixNear(partial_trace(bell, 1).matrix(), oracle::partial_trace(bell.matrix(), 2, 2, 1), 1e-15));
  EXPECT_QINDEL_ERROR(partial_trace(bell, 3), ErrorCode::PositionOutOfRange);
  EXPECT_QINDEL_ERROR(partial_trace(bell, 0), ErrorCode::PositionOutOfRange);
}

TEST(PartialTrace, MatchesDigitOracle) {
  SplitMix64 rng(1);
  for (int l : {2, 3})
    for (int n = 1; n <= (l == 2 ? 4 : 3); ++n)
      for (int p = 1; p <= n; ++p) {
        const auto r = random_density(QuditShape(l, n), rng);
        EXPECT_TRUE(MatrixNear(partial_trace(r, p).matrix(), oracle::partial_trace(r.matrix(), l, n, p), 1e-13))
            << "l=" << l << " n=" << n << " p=" << p;
      }
}

TEST(Delete, Examples) {
  SplitMix64 rng(2);
  const auto r4 = random_density(QuditShape(2, 4), rng);
  const auto full = delete_qudits(r4, IndexSet({1, 2, 3, 4}, 4));
  EXPECT_EQ(full.dim(), 1u);
  EXPECT_NEAR(std::abs(full.matrix()(0, 0) - 1.0), 0.0, 1e-13);

  const auto rho1 = state(0.5 * proj("00") + 0.5 * proj("11"), 2);
  EXPECT_TRUE(MatrixNear(delete_qudits(rho1, IndexSet({1}, 2)).matrix(), 0.5 * CMatrix::identity(2), 1e-15));

  const codes::CodewordParam p{1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2};
  const auto cw = codes::hagiwara_codeword(p);
  for (int pos = 1; pos <= 4; ++pos) {
    EXPECT_TRUE(MatrixNear(delete_qudits(cw, IndexSet({pos}, 4)).matrix(), codes::hagiwara_single_deletion(p), 1e-12));
  }
}

TEST(Delete, MatchesOracleForAllSubsets) {
  SplitMix64 rng(3);
  const auto r = random_density(QuditShape(2, 4), rng);
  for (int s = 0; s <= 4; ++s)
    for (const auto& p : all_subsets(4, s)) {
      EXPECT_TRUE(MatrixNear(delete_qudits(r, p).matrix(), oracle::delete_positions(r.matrix(), 2, 4, p.positions()), 1e-13));
    }
}

TEST(DeletionSphere, Examples) {
  SplitMix64 rng(4);
  const auto r = random_density(QuditShape(2, 3), rng);
  const auto d0 = deletion_sphere(r, 0);
  ASSERT_EQ(d0.size(), 1u);
  EXPECT_EQ(d0.members[0].state.matrix(), r.matrix());

  const auto x1 = codes::x1_codeword(codes::CodewordParam::polar(0.4, 1.1));
  const auto d1 = deletion_sphere(x1, 1);
  ASSERT_EQ(d1.size(), 1u);
  EXPECT_EQ(d1.raw_count, 2u);
  EXPECT_EQ(d1.members[0].multiplicity, 2u);
  const double a2 = std::pow(std::cos(0.4), 2);
  EXPECT_TRUE(MatrixNear(d1.members[0].state.matrix(), a2 * proj("0") + (1 - a2) * proj("1"), 1e-14));

  const auto d01 = deletion_sphere(state(proj("01"), 2), 1);
  ASSERT_EQ(d01.size(), 2u);
  // Oracle: Tr_1 |01><01| = |1><1| and Tr_2 |01><01| = |0><0|.
  EXPECT_TRUE(d01.find(oracle::partial_trace(proj("01"), 2, 2, 1), 1e-12) >= 0);
  EXPECT_TRUE(d01.find(oracle::partial_trace(proj("01"), 2, 2, 2), 1e-12) >= 0);
  EXPECT_QINDEL_ERROR(deletion_sphere(r, 4), ErrorCode::CountOutOfRange);
  EXPECT_QINDEL_ERROR(deletion_sphere(r, -1), ErrorCode::CountOutOfRange);
}

TEST(IndexPermutation, Examples) {
  SplitMix64 rng(5);
  const auto r = random_density(QuditShape(2, 3), rng);
  const std::vector<int> id{1, 2, 3};
  EXPECT_EQ(index_permutation(r, id).matrix(), r.matrix());
  const std::vector<int> swap{2, 1};
  EXPECT_EQ(index_permutation(state(proj("01"), 2), swap).matrix(), proj("10"));
  EXPECT_QINDEL_ERROR(index_permutation(r, std::vector<int>{1, 1, 2}), ErrorCode::NotAPermutation);
  EXPECT_QINDEL_ERROR(index_permutation(r, std::vector<int>{1, 2}), ErrorCode::NotAPermutation);
}

TEST(IndexPermutation, PreservesTraceAndSpectrum) {
  SplitMix64 rng(6);
  const auto r = random_density(QuditShape(2, 3), rng);
  const std::vector<int> perm{3, 1, 2};
  const auto s = index_permutation(r, perm);
  const auto ev_r = hermitian_eigenvalues(r.matrix(), Tolerance::for_dim(8));
  const auto ev_s = hermitian_eigenvalues(s.matrix(), Tolerance::for_dim(8));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(ev_r[i], ev_s[i], 1e-12);
  EXPECT_NEAR(std::abs(trace(s.matrix()) - 1.0), 0.0, 1e-14);
}

TEST(IndexPermutation, ProductStatesMoveFactors) {
  SplitMix64 rng(7);
  const auto a = random_density(QuditShape(2, 1), rng).matrix();
  const auto b = random_density(QuditShape(2, 1), rng).matrix();
  const auto c = random_density(QuditShape(2, 1), rng).matrix();
  // Qudit i goes to position perm[i-1]: (a, b, c) with perm (2,3,1) becomes (c, a, b).
  const auto s = index_permutation(state(kron(kron(a, b), c), 3), std::vector<int>{2, 3, 1});
  EXPECT_TRUE(MatrixNear(s.matrix(), kron(kron(c, a), b), 1e-14));
}

TEST(TauQ, Examples) {
  EXPECT_EQ(tau_q(IndexSet({3, 4}, 4), 2), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(tau_q(IndexSet({1}, 3), 2), (std::vector<int>{2, 3, 1}));
  EXPECT_EQ(tau_q(IndexSet({2}, 3), 2), (std::vector<int>{1, 3, 2}));
  EXPECT_QINDEL_ERROR(tau_q(IndexSet({1}, 4), 2), ErrorCode::InvalidIndexSet);
}

TEST(TauQ, FrontInsertionRoundTrips) {
  SplitMix64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto r = random_density(QuditShape(2, 2), rng);
    const auto pi = random_density(QuditShape(2, 1), rng);
    const auto perm = tau_q(IndexSet({1}, 3), 2);
    const auto s = index_permutation(state(kron(r.matrix(), pi.matrix()), 3), perm);
    EXPECT_TRUE(MatrixNear(delete_qudits(s, IndexSet({1}, 3)).matrix(), r.matrix(), 1e-13));
    EXPECT_TRUE(MatrixNear(s.matrix(), kron(pi.matrix(), r.matrix()), 1e-13));
  }
}

struct InsertionFixture : ::testing::Test {
  SplitMix64 rng{9};
  const double p0 = 0.5, p1 = 0.5;
  CMatrix pi00, pi11, a;
  void SetUp() override {
    pi00 = random_density(QuditShape(2, 1), rng).matrix();
    pi11 = random_density(QuditShape(2, 1), rng).matrix();
    a = CMatrix::zeros(2, 2);
  }
  InsertionBlocks blocks(const CMatrix& coherence) const {
    // Indexed by the explicit spectral pairs (|00>, |11>) used below.
    InsertionBlocks b = InsertionBlocks::separable(1, {pi00, pi11});
    b.a[1][0] = coherence;
    b.a[0][1] = adjoint(coherence);
    return b;
  }
};

TEST_F(InsertionFixture, SeparableMatchesClosedForms) {
  const auto r = codes::rho(p0, p1);
  SpectralForm form{r.shape(), {{p0, basis_ket("00", 2)}, {p1, basis_ket("11", 2)}}};
  const auto b = InsertionBlocks::separable(1, {pi00, pi11});
  const auto s1 = insert_construct(form, IndexSet({1}, 3), b);
  const auto s2 = insert_construct(form, IndexSet({2}, 3), b);
  const auto s3 = insert_construct(form, IndexSet({3}, 3), b);
  EXPECT_TRUE(MatrixNear(s1.matrix(), codes::sigma1(p0, p1, pi00, pi11, a), 1e-14));
  EXPECT_TRUE(MatrixNear(s2.matrix(), codes::sigma2(p0, p1, pi00, pi11, a), 1e-14));
  EXPECT_TRUE(MatrixNear(s3.matrix(), codes::sigma3(p0, p1, pi00, pi11, a), 1e-14));
  // The relabeled form of the separable insertion at the front.
  const auto via_perm = index_permutation(
      validate(p0 * kron(proj("00"), pi00) + p1 * kron(proj("11"), pi11), QuditShape(2, 3)),
      tau_q(IndexSet({1}, 3), 2));
  EXPECT_TRUE(MatrixNear(s1.matrix(), via_perm.matrix(), 1e-14));
}

TEST_F(InsertionFixture, CoherentSigma3MatchesClosedForm) {
  // |A| small enough that the assembly stays PSD.
  const CMatrix coh{{0.05, cplx(0.02, 0.01)}, {0.0, -0.05}};
  pi00 = 0.5 * CMatrix::identity(2);
  pi11 = 0.5 * CMatrix::identity(2);
  SpectralForm form{QuditShape(2, 2), {{p0, basis_ket("00", 2)}, {p1, basis_ket("11", 2)}}};
  const auto s3 = insert_construct(form, IndexSet({3}, 3), blocks(coh));
  EXPECT_TRUE(MatrixNear(s3.matrix(), codes::sigma3(p0, p1, pi00, pi11, coh), 1e-14));
  EXPECT_TRUE(insertion_member(s3, codes::rho(p0, p1), IndexSet({3}, 3)));
  const auto s1 = insert_construct(form, IndexSet({1}, 3), blocks(coh));
  EXPECT_TRUE(MatrixNear(s1.matrix(), codes::sigma1(p0, p1, pi00, pi11, coh), 1e-14));
  const auto s2 = insert_construct(form, IndexSet({2}, 3), blocks(coh));
  EXPECT_TRUE(MatrixNear(s2.matrix(), codes::sigma2(p0, p1, pi00, pi11, coh), 1e-14));
}

TEST_F(InsertionFixture, Rejections) {
  SpectralForm form{QuditShape(2, 2), {{p0, basis_ket("00", 2)}, {p1, basis_ket("11", 2)}}};
  // tr A != 0
  EXPECT_QINDEL_ERROR(insert_construct(form, IndexSet({3}, 3), blocks(CMatrix{{0.1, 0}, {0, 0}})),
                      ErrorCode::BlockConstraintViolated);
  // A_{x,y}^dagger != A_{y,x}
  auto b = blocks(CMatrix{{0, 0.1}, {0, 0}});
  b.a[0][1] = CMatrix{{0, 0.3}, {0, 0}};
  EXPECT_QINDEL_ERROR(insert_construct(form, IndexSet({3}, 3), b), ErrorCode::BlockConstraintViolated);
  // Diagonal block that is not a state.
  auto bad = InsertionBlocks::separable(1, {CMatrix::identity(2), pi11});
  EXPECT_QINDEL_ERROR(insert_construct(form, IndexSet({3}, 3), bad), ErrorCode::BlockConstraintViolated);
  // Valid blocks, non-PSD assembly: a large coherence with pure diagonal blocks.
  pi00 = proj("0");
  pi11 = proj("0");
  EXPECT_QINDEL_ERROR(insert_construct(form, IndexSet({3}, 3), blocks(CMatrix{{0, 1}, {0, 0}})),
                      ErrorCode::NotPSD);
}

TEST(InsertionMember, Examples) {
  const auto r = codes::rho();
  EXPECT_FALSE(insertion_member(validate(proj("00"), QuditShape(2, 2)), validate(proj("1"), QuditShape(2, 1)),
                                IndexSet({2}, 2)));
  const auto psi = codes::psi();
  const auto half = validate(0.5 * CMatrix::identity(2), QuditShape(2, 1));
  EXPECT_TRUE(insertion_member(psi, half, IndexSet({1}, 2)));
  EXPECT_TRUE(MatrixNear(oracle::partial_trace(psi.matrix(), 2, 2, 1), half.matrix(), 1e-15));
  EXPECT_QINDEL_ERROR(insertion_member(psi, r, IndexSet({1}, 2)), ErrorCode::ShapeMismatch);
}

TEST(PureInsertion, IsTensorWithInsertedState) {
  SplitMix64 rng(10);
  const auto ket = random_unit_vector(4, rng);
  const auto r = density_from_ket(PureKet{QuditShape(2, 2), ket});
  const auto pi = random_density(QuditShape(2, 1), rng);
  const auto form = spectral_decompose(r);
  ASSERT_EQ(form.rank(), 1u);
  const auto s = insert_construct(form, IndexSet({2}, 3), InsertionBlocks::separable(1, {pi.matrix()}));
  const auto expected = index_permutation(validate(kron(r.matrix(), pi.matrix()), QuditShape(2, 3)),
                                          tau_q(IndexSet({2}, 3), 2));
  EXPECT_TRUE(MatrixNear(s.matrix(), expected.matrix(), 1e-13));
}

TEST(SampleInsertions, PureStateSamplesAreProducts) {
  SplitMix64 rng(11);
  const auto r = density_from_ket(PureKet{QuditShape(2, 2), random_unit_vector(4, rng)});
  const auto samples = sample_insertions(r, IndexSet({3}, 3), 6, 77);
  ASSERT_EQ(samples.size(), 6u);
  for (const auto& s : samples) {
    // tau^Q(rho (x) pi) with Q = {3} is rho (x) pi, and pi = D_{1,2}(s).
    const auto pi = delete_qudits(s, IndexSet({1, 2}, 3));
    EXPECT_TRUE(MatrixNear(s.matrix(), kron(r.matrix(), pi.matrix()), 1e-12));
  }
}

TEST(SampleInsertions, EntangledFamilyCarriesCoherence) {
  const auto r = codes::rho();
  const auto samples = sample_insertions_tagged(r, IndexSet({1}, 3), 2, 5);
  ASSERT_EQ(samples.size(), 2u);
  EXPECT_EQ(samples[0].family, InsertionFamily::Separable);
  EXPECT_EQ(samples[1].family, InsertionFamily::Entangled);
  const auto& s = samples[1].state;
  EXPECT_TRUE(insertion_member(s, r, IndexSet({1}, 3)));
  EXPECT_NEAR(purity(s), 1.0, 1e-10);
  EXPECT_TRUE(is_psd(s.matrix(), Tolerance::for_dim(8)));
}

TEST(SampleInsertions, RankAboveInsertedDimensionStaysSeparable) {
  SplitMix64 rng(12);
  const auto r = random_density(QuditShape(2, 2), 4, rng);
  const auto samples = sample_insertions_tagged(r, IndexSet({2}, 3), 4, 3);
  for (const auto& s : samples) EXPECT_EQ(s.family, InsertionFamily::Separable);
}

TEST(SampleInsertions, CountAndDeterminism) {
  const auto r = codes::rho();
  EXPECT_EQ(sample_insertions(r, IndexSet({2}, 3), 1, 1).size(), 1u);
  EXPECT_QINDEL_ERROR(sample_insertions(r, IndexSet({2}, 3), 0, 1), ErrorCode::CountOutOfRange);
  const auto a = sample_insertions(r, IndexSet({2}, 3), 3, 42);
  const auto b = sample_insertions(r, IndexSet({2}, 3), 3, 42);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a[i].matrix(), b[i].matrix());
}

TEST(ChannelProperties, DeletionPreservesTraceAndPositivity) {
  SplitMix64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const int n = rng.uniform_int(1, 4);
    const auto r = random_density(QuditShape(2, n), rng);
    const int s = rng.uniform_int(0, n);
    const auto subsets = all_subsets(n, s);
    const auto& p = subsets[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(subsets.size()) - 1))];
    const auto d = delete_qudits(r, p);
    EXPECT_NEAR(std::abs(trace(d.matrix()) - 1.0), 0.0, Tolerance::for_dim(d.dim()).eq_tol);
    EXPECT_NO_THROW(validate(d.matrix(), d.shape()));
  }
}

TEST(ChannelProperties, DeletionRoundTrip) {
  SplitMix64 rng(14);
  for (int i = 0; i < 100; ++i) {
    const int n = rng.uniform_int(1, 4);
    const auto r = random_density(QuditShape(2, n), rng);
    for (int s = 0; s <= n; ++s)
      for (const auto& p : all_subsets(n, s)) EXPECT_TRUE(insertion_member(r, delete_qudits(r, p), p));
  }
}

TEST(ChannelProperties, DeletionOrderIdentity) {
  SplitMix64 rng(15);
  for (int i = 0; i < 100; ++i) {
    const int n = rng.uniform_int(2, 4);
    const auto r = random_density(QuditShape(2, n), rng);
    const int q = rng.uniform_int(2, n);
    const int p = rng.uniform_int(1, q - 1);
    const auto lhs = partial_trace(partial_trace(r, q), p);
    const auto rhs = partial_trace(partial_trace(r, p), q - 1);
    EXPECT_TRUE(MatrixNear(lhs.matrix(), rhs.matrix(), Tolerance::for_dim(lhs.dim()).eq_tol));
  }
}

TEST(ChannelProperties, SphereSizeBoundedByBinomial) {
  SplitMix64 rng(16);
  for (int i = 0; i < 50; ++i) {
    const int n = rng.uniform_int(1, 4);
    const auto r = random_density(QuditShape(2, n), rng);
    for (int s = 0; s <= n; ++s) {
      const auto sphere = deletion_sphere(r, s);
      EXPECT_LE(sphere.size(), all_subsets(n, s).size());
      EXPECT_EQ(sphere.raw_count, all_subsets(n, s).size());
    }
  }
}

TEST(ChannelProperties, InsertionBlocksTraceToWeights) {
  SplitMix64 rng(17);
  for (int i = 0; i < 50; ++i) {
    const auto r = random_density(QuditShape(2, 2), rng);
    const int q = rng.uniform_int(1, 3);
    const auto samples = sample_insertions(r, IndexSet({q}, 3), 2, rng());
    const auto form = spectral_decompose(r);
    for (const auto& s : samples) {
      // Undo tau^Q, then B_{x,y} = (<x_L| (x) I) sigma' (|y_L> (x) I) and
      // tr B_{x,y} = <x_L| D_Q(sigma) |y_L>.
      const auto d = delete_qudits(s, IndexSet({q}, 3)).matrix();
      for (std::size_t x = 0; x < form.rank(); ++x)
        for (std::size_t y = 0; y < form.rank(); ++y) {
          CMatrix kx = CMatrix::column(form.pairs[x].ket), ky = CMatrix::column(form.pairs[y].ket);
          const cplx tr = (adjoint(kx) * d * ky)(0, 0);
          EXPECT_NEAR(std::abs(tr - (x == y ? form.pairs[x].weight : 0.0)), 0.0, 1e-10);
        }
    }
  }
}

}  // namespace
}  // namespace qindel
