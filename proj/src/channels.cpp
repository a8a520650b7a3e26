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

#include "qindel/channels.hpp"

#include <algorithm>
#include <cmath>

#include "qindel/error.hpp"
#include "qindel/hermitian.hpp"
#include "qindel/random.hpp"

namespace qindel {

IndexSet::IndexSet(std::vector<int> positions, int ambient)
    : positions_(std::move(positions)), ambient_(ambient) {
  std::sort(positions_.begin(), positions_.end());
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (positions_[i] < 1 || positions_[i] > ambient_) {
      throw Error(ErrorCode::PositionOutOfRange, "position " + std::to_string(positions_[i]) +
                                                     " outside [1, " + std::to_string(ambient_) +
                                                     "]");
    }
    if (i > 0 && positions_[i] == positions_[i - 1]) {
      throw Error(ErrorCode::InvalidIndexSet,
                  "duplicate position " + std::to_string(positions_[i]));
    }
  }
}

bool IndexSet::contains(int p) const {
  return std::binary_search(positions_.begin(), positions_.end(), p);
}

std::string IndexSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(positions_[i]);
  }
  return s + "}";
}

std::vector<IndexSet> all_subsets(int n, int k) {
  std::vector<IndexSet> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.emplace_back(cur, n);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

CMatrix partial_trace_matrix(const CMatrix& m, const QuditShape& shape, int position) {
  const int n = shape.length();
  if (position < 1 || position > n) {
    throw Error(ErrorCode::PositionOutOfRange,
                "position " + std::to_string(position) + " outside [1, " + std::to_string(n) + "]");
  }
  if (m.rows() != shape.dim() || m.cols() != shape.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix order does not match l^n");
  }
  const auto l = static_cast<std::size_t>(shape.level());
  const std::size_t stride = ipow(l, n - position);  // weight of the traced digit
  const std::size_t reduced = shape.dim() / l;
  auto full = [&](std::size_t r, std::size_t k) {
    return (r / stride) * stride * l + k * stride + (r % stride);
  };
  CMatrix out(reduced, reduced);
  for (std::size_t i = 0; i < reduced; ++i)
    for (std::size_t j = 0; j < reduced; ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < l; ++k) acc += m(full(i, k), full(j, k));
      out(i, j) = acc;
    }
  return out;
}

CMatrix delete_matrix(const CMatrix& m, const QuditShape& shape, const IndexSet& positions) {
  if (positions.ambient() != shape.length()) {
    throw Error(ErrorCode::ShapeMismatch, "index set over [" + std::to_string(positions.ambient()) +
                                              "] applied to " + std::to_string(shape.length()) +
                                              " qudits");
  }
  CMatrix cur = m;
  int len = shape.length();
  const auto& ps = positions.positions();
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
    cur = partial_trace_matrix(cur, QuditShape(shape.level(), len), *it);
    --len;
  }
  return cur;
}

namespace {

void check_permutation(std::span<const int> perm, int n) {
  if (perm.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::NotAPermutation, "permutation of length " + std::to_string(perm.size()) +
                                                " for " + std::to_string(n) + " qudits");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : perm) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::NotAPermutation, "not a bijection on [1, " + std::to_string(n) + "]");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

}  // namespace

CMatrix index_permutation_matrix(const CMatrix& m, const QuditShape& shape,
                                 std::span<const int> perm) {
  check_permutation(perm, shape.length());
  if (m.rows() != shape.dim() || m.cols() != shape.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix order does not match l^n");
  }
  const std::size_t dim = shape.dim();
  std::vector<std::size_t> target(dim);
  std::vector<int> moved(static_cast<std::size_t>(shape.length()));
  for (std::size_t x = 0; x < dim; ++x) {
    const auto digits = basis_digits(x, shape);
    for (std::size_t i = 0; i < digits.size(); ++i)
      moved[static_cast<std::size_t>(perm[i] - 1)] = digits[i];
    target[x] = basis_index(moved, shape);
  }
  CMatrix out(dim, dim);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) out(target[x], target[y]) = m(x, y);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int position) {
  const CMatrix m = partial_trace_matrix(rho.matrix(), rho.shape(), position);
  return DensityMatrix::assume_valid(rho.shape().with_length(rho.length() - 1), m);
}

DensityMatrix delete_qudits(const DensityMatrix& rho, const IndexSet& positions) {
  const CMatrix m = delete_matrix(rho.matrix(), rho.shape(), positions);
  const int remaining = rho.length() - static_cast<int>(positions.size());
  return DensityMatrix::assume_valid(rho.shape().with_length(remaining), m);
}

std::ptrdiff_t SphereSet::find(const CMatrix& m, double eq_tol) const {
  for (std::size_t i = 0; i < members.size(); ++i) {
    const CMatrix& other = members[i].state.matrix();
    if (other.rows() == m.rows() && frobenius_distance(other, m) <= eq_tol) {
      return static_cast<std::ptrdiff_t>(i);
    }
  }
  return -1;
}

SphereSet deletion_sphere(const DensityMatrix& rho, int s, const ToleranceSettings& tol) {
  const int n = rho.length();
  if (s < 0 || s > n) {
    throw Error(ErrorCode::CountOutOfRange,
                "deletion count " + std::to_string(s) + " outside [0, " + std::to_string(n) + "]");
  }
  const double eq_tol = tol.at(ipow(static_cast<std::size_t>(rho.level()), n - s)).eq_tol;
  SphereSet sphere;
  for (const IndexSet& p : all_subsets(n, s)) {
    DensityMatrix reduced = delete_qudits(rho, p);
    ++sphere.raw_count;
    const auto hit = sphere.find(reduced.matrix(), eq_tol);
    if (hit >= 0) {
      ++sphere.members[static_cast<std::size_t>(hit)].multiplicity;
    } else {
      sphere.members.push_back({std::move(reduced), p, 1});
    }
  }
  return sphere;
}

std::optional<SphereMatch> closest_members(const SphereSet& a, const SphereSet& b) {
  std::optional<SphereMatch> best;
  for (std::size_t i = 0; i < a.members.size(); ++i)
    for (std::size_t j = 0; j < b.members.size(); ++j) {
      const double d = frobenius_distance(a.members[i].state.matrix(), b.members[j].state.matrix());
      if (!best || d < best->distance) best = SphereMatch{i, j, d};
    }
  return best;
}

std::optional<SphereMatch> sphere_intersection(const SphereSet& a, const SphereSet& b,
                                               double eq_tol) {
  for (std::size_t i = 0; i < a.members.size(); ++i)
    for (std::size_t j = 0; j < b.members.size(); ++j) {
      const double d = frobenius_distance(a.members[i].state.matrix(), b.members[j].state.matrix());
      if (d <= eq_tol) return SphereMatch{i, j, d};
    }
  return std::nullopt;
}

DensityMatrix index_permutation(const DensityMatrix& rho, std::span<const int> perm) {
  return DensityMatrix::assume_valid(rho.shape(),
                                     index_permutation_matrix(rho.matrix(), rho.shape(), perm));
}

std::vector<int> tau_q(const IndexSet& q, int n) {
  const int t = static_cast<int>(q.size());
  if (n < 0 || q.ambient() != n + t) {
    throw Error(ErrorCode::InvalidIndexSet, "insertion set " + q.to_string() + " over [" +
                                                std::to_string(q.ambient()) + "] for n = " +
                                                std::to_string(n));
  }
  std::vector<int> perm(static_cast<std::size_t>(n + t));
  int next_original = 0;
  for (int pos = 1; pos <= n + t; ++pos) {
    if (q.contains(pos)) continue;
    perm[static_cast<std::size_t>(next_original++)] = pos;
  }
  for (int i = 0; i < t; ++i) perm[static_cast<std::size_t>(n + i)] = q.positions()[static_cast<std::size_t>(i)];
  return perm;
}

InsertionBlocks InsertionBlocks::separable(int t, const std::vector<CMatrix>& pis) {
  InsertionBlocks b;
  b.t = t;
  const std::size_t r = pis.size();
  b.a.assign(r, std::vector<CMatrix>(r));
  for (std::size_t x = 0; x < r; ++x)
    for (std::size_t y = 0; y < r; ++y)
      b.a[x][y] = x == y ? pis[x] : CMatrix(pis[x].rows(), pis[x].cols());
  return b;
}

namespace {

void check_blocks(const SpectralForm& form, const InsertionBlocks& blocks,
                  const QuditShape& inserted, const Tolerance& tol) {
  const std::size_t r = form.rank();
  if (blocks.a.size() != r) {
    throw Error(ErrorCode::BlockConstraintViolated,
                std::to_string(blocks.a.size()) + " block rows for rank " + std::to_string(r));
  }
  for (std::size_t x = 0; x < r; ++x) {
    if (blocks.a[x].size() != r) {
      throw Error(ErrorCode::BlockConstraintViolated, "block grid is not square");
    }
    for (std::size_t y = 0; y < r; ++y) {
      const CMatrix& axy = blocks.a[x][y];
      if (axy.rows() != inserted.dim() || axy.cols() != inserted.dim()) {
        throw Error(ErrorCode::BlockConstraintViolated, "block order differs from l^t");
      }
    }
  }
  for (std::size_t x = 0; x < r; ++x) {
    try {
      validate(blocks.a[x][x], inserted, tol);
    } catch (const Error& e) {
      throw Error(ErrorCode::BlockConstraintViolated,
                  "A_{" + std::to_string(x) + "," + std::to_string(x) + "} is not a state (" +
                      e.what() + ")",
                  e.residual());
    }
    for (std::size_t y = x + 1; y < r; ++y) {
      const double adj = frobenius_distance(adjoint(blocks.a[x][y]), blocks.a[y][x]);
      if (adj > tol.eq_tol) {
        throw Error(ErrorCode::BlockConstraintViolated, "A_{x,y}^dagger != A_{y,x}", adj);
      }
      const double tr = std::abs(trace(blocks.a[x][y]));
      if (tr > tol.eq_tol) {
        throw Error(ErrorCode::BlockConstraintViolated, "tr A_{x,y} != 0 for x != y", tr);
      }
    }
  }
}

}  // namespace

DensityMatrix insert_construct(const SpectralForm& form, const IndexSet& q,
                               const InsertionBlocks& blocks, const ToleranceSettings& tol) {
  const int n = form.shape.length();
  const int t = static_cast<int>(q.size());
  if (blocks.t != t) {
    throw Error(ErrorCode::BlockConstraintViolated, "blocks built for t = " +
                                                        std::to_string(blocks.t) +
                                                        ", insertion set has " + std::to_string(t));
  }
  const auto perm = tau_q(q, n);
  const QuditShape inserted(form.shape.level(), t);
  const QuditShape out_shape(form.shape.level(), n + t);
  const Tolerance block_tol = tol.at(inserted.dim());
  const Tolerance out_tol = tol.at(out_shape.dim());
  check_blocks(form, blocks, inserted, block_tol);

  CMatrix assembled(out_shape.dim(), out_shape.dim());
  const std::size_t r = form.rank();
  for (std::size_t x = 0; x < r; ++x)
    for (std::size_t y = 0; y < r; ++y) {
      const double scale = std::sqrt(form.pairs[x].weight * form.pairs[y].weight);
      const CMatrix coherence = CMatrix::outer(form.pairs[x].ket, form.pairs[y].ket) * scale;
      assembled += kron(coherence, blocks.a[x][y]);
    }
  const CMatrix sigma = index_permutation_matrix(assembled, out_shape, perm);

  const auto values = hermitian_eigenvalues(sigma, out_tol);
  if (!values.empty() && values.front() < -out_tol.psd_tol) {
    throw Error(ErrorCode::NotPSD, "assembled insertion is not positive semidefinite",
                values.front());
  }
  DensityMatrix result = DensityMatrix::assume_valid(out_shape, sigma);

  const CMatrix back = delete_matrix(result.matrix(), out_shape, q);
  const double miss = frobenius_distance(back, reconstruct(form));
  if (miss > tol.at(form.shape.dim()).eq_tol) {
    throw Error(ErrorCode::RoundTripFailed, "D_Q(sigma) differs from rho", miss);
  }
  return result;
}

DensityMatrix insert_construct(const DensityMatrix& rho, const IndexSet& q,
                               const InsertionBlocks& blocks, const ToleranceSettings& tol) {
  return insert_construct(spectral_decompose(rho, tol.at(rho.dim())), q, blocks, tol);
}

bool insertion_member(const DensityMatrix& sigma, const DensityMatrix& rho, const IndexSet& q,
                      const ToleranceSettings& tol) {
  if (sigma.level() != rho.level() || sigma.length() != rho.length() + static_cast<int>(q.size()) ||
      q.ambient() != sigma.length()) {
    throw Error(ErrorCode::ShapeMismatch, "insertion_member: lengths " +
                                              std::to_string(sigma.length()) + " and " +
                                              std::to_string(rho.length()) + " with Q = " +
                                              q.to_string());
  }
  const DensityMatrix back = delete_qudits(sigma, q);
  return frobenius_distance(back.matrix(), rho.matrix()) <= tol.at(rho.dim()).eq_tol;
}

std::vector<InsertionSample> sample_insertions_tagged(const DensityMatrix& rho, const IndexSet& q,
                                                      int count, std::uint64_t seed,
                                                      const ToleranceSettings& tol) {
  if (count < 1) throw Error(ErrorCode::CountOutOfRange, "sample count must be >= 1");
  const int t = static_cast<int>(q.size());
  const QuditShape inserted(rho.level(), t);
  const SpectralForm form = spectral_decompose(rho, tol.at(rho.dim()));
  const std::size_t r = form.rank();

  SplitMix64 root(seed);
  std::vector<InsertionSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    SplitMix64 rng = root.split();
    const bool entangled = (k % 2 == 1) && inserted.dim() >= r;
    InsertionBlocks blocks;
    if (entangled) {
      const auto u = random_orthonormal(inserted.dim(), r, rng);
      blocks.t = t;
      blocks.a.assign(r, std::vector<CMatrix>(r));
      for (std::size_t x = 0; x < r; ++x)
        for (std::size_t y = 0; y < r; ++y) blocks.a[x][y] = CMatrix::outer(u[x], u[y]);
    } else {
      std::vector<CMatrix> pis;
      pis.reserve(r);
      for (std::size_t x = 0; x < r; ++x) pis.push_back(random_density(inserted, rng).matrix());
      blocks = InsertionBlocks::separable(t, pis);
    }
    out.push_back({insert_construct(form, q, blocks, tol),
                   entangled ? InsertionFamily::Entangled : InsertionFamily::Separable});
  }
  return out;
}

std::vector<DensityMatrix> sample_insertions(const DensityMatrix& rho, const IndexSet& q,
                                             int count, std::uint64_t seed,
                                             const ToleranceSettings& tol) {
  std::vector<DensityMatrix> out;
  for (auto& s : sample_insertions_tagged(rho, q, count, seed, tol)) out.push_back(std::move(s.state));
  return out;
}

}  // namespace qindel
