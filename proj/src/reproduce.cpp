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

#include "qindel/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qindel/channels.hpp"
#include "qindel/codes.hpp"
#include "qindel/distance.hpp"
#include "qindel/error.hpp"
#include "qindel/hermitian.hpp"
#include "qindel/io.hpp"
#include "qindel/random.hpp"

namespace qindel::reproduce {
namespace {

using json = nlohmann::json;

constexpr double kExactTol = 1e-10;

FeasibilityOptions feas_options(const Options& o) {
  FeasibilityOptions f = o.feas;
  f.tol = o.tol;
  return f;
}

// Stream derived from the run seed and an item tag, so items stay
// independent of each other's consumption.
SplitMix64 stream(const Options& o, std::uint64_t tag) {
  SplitMix64 base(o.seed ^ (tag * 0x9e3779b97f4a7c15ULL));
  return base.split();
}

DensityMatrix two_qubit(const std::string& a, const std::string& b) {
  const CVector u = basis_ket(a, 2), v = basis_ket(b, 2);
  return validate(0.5 * CMatrix::outer(u, u) + 0.5 * CMatrix::outer(v, v), QuditShape(2, 2));
}

CodeSample grid_code(const codes::CodeGrid& g, bool x2, const ToleranceSettings& tol) {
  std::vector<DensityMatrix> states;
  states.reserve(g.params.size());
  for (const auto& p : g.params) states.push_back(x2 ? codes::hagiwara_codeword(p) : codes::x1_codeword(p));
  return CodeSample::deduplicated(states, g.labels, tol);
}

// Pairwise distances that came out odd; all are between equal-length states.
int odd_distances(const MinDistance& md) {
  return static_cast<int>(std::count_if(md.pairs.begin(), md.pairs.end(),
                                        [](const PairDistance& p) { return p.result.value % 2 != 0; }));
}

// Gaussian elimination with partial pivoting.
cplx determinant(CMatrix a) {
  const std::size_t n = a.rows();
  cplx det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == cplx(0.0)) return 0.0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(piv, k), a(c, k));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

// Sylvester-type criterion: every principal minor, not only the leading
// ones, must be nonnegative.
bool principal_minors_nonnegative(const CMatrix& h, double tol) {
  const std::size_t n = h.rows();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (std::size_t{1} << k)) idx.push_back(k);
    CMatrix sub(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = h(idx[r], idx[c]);
    if (determinant(sub).real() < -tol) return false;
  }
  return true;
}

}  // namespace

Item mixed_pair_distance(const Options& o) {
  Item it{"mixed-pair-distance"};
  const auto rho1 = two_qubit("00", "11");
  const auto rho2 = two_qubit("10", "01");
  const CMatrix half_identity = 0.5 * CMatrix::identity(2);
  const auto d = indel_distance(rho1, rho2, o.tol);
  const double e1 = frobenius_distance(delete_qudits(rho1, IndexSet({1}, 2)).matrix(), half_identity);
  const double e2 = frobenius_distance(delete_qudits(rho2, IndexSet({2}, 2)).matrix(), half_identity);
  const double ec = frobenius_distance(d.witness.common.matrix(), half_identity);
  it.residual = std::max({e1, e2, ec});
  it.passed = d.value == 2 && it.residual <= kExactTol;
  it.details = {{"distance", d.value},
                {"witness_P", io::to_json(d.witness.p)},
                {"witness_Q", io::to_json(d.witness.q)},
                {"D1_rho1_error", e1},
                {"D2_rho2_error", e2},
                {"common_error", ec}};
  return it;
}

Item x1_min_distance(const Options& o) {
  Item it{"x1-min-distance"};
  const auto grid = codes::x1_grid();
  const auto code = grid_code(grid, false, o.tol);
  const auto md = min_distance(code, o.tol);
  const auto v = corrects(code, ErrorModel::Deletions, 1, o.tol);
  bool phase_pair = false;
  double collision = std::numeric_limits<double>::infinity();
  json evidence;
  if (v.evidence) {
    const auto& a = code.states()[v.evidence->i];
    const auto& b = code.states()[v.evidence->j];
    // Same populations, different coherence.
    const double pop = std::abs(a.matrix()(0, 0) - b.matrix()(0, 0)) + std::abs(a.matrix()(3, 3) - b.matrix()(3, 3));
    const double coh = std::abs(a.matrix()(0, 3) - b.matrix()(0, 3));
    phase_pair = pop <= kExactTol && coh > 1e-6;
    collision = frobenius_distance(deletion_sphere(a, 1, o.tol).members[0].state.matrix(),
                                   deletion_sphere(b, 1, o.tol).members[0].state.matrix());
    evidence = {{"first", code.labels()[v.evidence->i]},
                {"second", code.labels()[v.evidence->j]},
                {"population_difference", pop},
                {"coherence_difference", coh}};
  }
  const int odd = odd_distances(md);
  it.residual = collision;
  it.passed = md.value == 2 && v.verdict == Verdict::False && phase_pair && odd == 0;
  it.details = {{"grid_points", grid.grid_points},
                {"distinct_codewords", code.size()},
                {"min_distance", md.value},
                {"corrects_1_deletion", to_string(v.verdict)},
                {"evidence", evidence},
                {"odd_distances", odd}};
  return it;
}

Item x2_min_distance(const Options& o) {
  Item it{"x2-min-distance"};
  const auto grid = codes::x2_grid();
  const auto code = grid_code(grid, true, o.tol);
  const auto gap = min_cross_sphere_distance(code, 1, o.tol);

  const auto [ea, eb] = codes::collision_pair_x2(codes::engineered_param());
  const double collision = frobenius_distance(deletion_sphere(ea, 2, o.tol).members[0].state.matrix(),
                                              deletion_sphere(eb, 2, o.tol).members[0].state.matrix());
  const auto md = min_distance(code, o.tol);
  const int odd = odd_distances(md);

  double closed_form = 0.0;
  for (const auto& p : grid.params) {
    const auto cw = codes::hagiwara_codeword(p);
    const CMatrix single = codes::hagiwara_single_deletion(p);
    const CMatrix dbl = codes::hagiwara_double_deletion(p);
    for (int k = 1; k <= 4; ++k)
      closed_form = std::max(closed_form, frobenius_distance(delete_qudits(cw, IndexSet({k}, 4)).matrix(), single));
    for (const auto& pp : all_subsets(4, 2))
      closed_form = std::max(closed_form, frobenius_distance(delete_qudits(cw, pp).matrix(), dbl));
  }

  it.residual = closed_form;
  it.passed = grid.grid_points >= 40 && gap.distance > 1e-6 && collision <= 1e-9 && md.value == 4 &&
              closed_form <= kExactTol && odd == 0;
  it.details = {{"grid_points", grid.grid_points},
                {"distinct_codewords", code.size()},
                {"min_cross_sphere_distance_t1", gap.distance},
                {"closest_t1_pair", {code.labels()[gap.i], code.labels()[gap.j]}},
                {"engineered_collision_t2", collision},
                {"min_distance", md.value},
                {"closed_form_error", closed_form},
                {"odd_distances", odd}};
  return it;
}

Item containment(const Options& o) {
  Item it{"containment-trajectories"};
  constexpr int kTrials = 200;
  json per = json::object();
  int failures = 0;
  for (auto [s, t] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}}) {
    SplitMix64 rng = stream(o, 4 + 16 * static_cast<std::uint64_t>(s) + static_cast<std::uint64_t>(t));
    int bad = 0;
    json first_failure;
    for (int k = 0; k < kTrials; ++k) {
      const int n = rng.uniform_int(std::max(1, s), 3);
      const auto rho = random_density(QuditShape(2, n), static_cast<std::size_t>(rng.uniform_int(1, 1 << n)), rng);
      const auto trial = check_containment_trial(rho, rng(), s, t, o.tol);
      if (!trial.contained) {
        if (bad == 0) first_failure = {{"trial", k}, {"n", n}, {"trajectory", trial.trajectory}};
        ++bad;
      }
    }
    failures += bad;
    json entry{{"trials", kTrials}, {"failures", bad}};
    if (bad) entry["first_failure"] = first_failure;
    per["s=" + std::to_string(s) + ",t=" + std::to_string(t)] = entry;
  }
  it.residual = failures;
  it.passed = failures == 0;
  it.details = per;
  return it;
}

Item strict_inclusion(const Options& o) {
  Item it{"strict-inclusion"};
  const auto rho = codes::rho();
  const auto psi = codes::psi();
  const bool ins_del = member_ins_del(psi, rho, 1, 1, o.tol);
  const auto rep = member_del_ins(psi, rho, 1, 1, feas_options(o));
  double min_gap = std::numeric_limits<double>::infinity();
  bool all_infeasible = rep.pairs.size() == 9;
  for (const auto& p : rep.pairs) {
    min_gap = std::min(min_gap, p.gap);
    all_infeasible = all_infeasible && p.status == FeasibilityStatus::Infeasible && p.gap >= o.feas.gap_tol;
  }
  const double eq = o.tol.at(4).eq_tol;
  const bool oracle_in_ins_del = codes::in_ins_del_rho(psi.matrix(), 0.5, 0.5, eq);
  const bool oracle_in_del_ins = codes::in_del_ins_rho(psi.matrix(), 0.5, 0.5, eq);
  it.residual = min_gap;
  it.passed = ins_del && rep.status == FeasibilityStatus::Infeasible && all_infeasible && oracle_in_ins_del &&
              !oracle_in_del_ins;
  it.details = {{"member_ins_del", ins_del},
                {"member_del_ins", to_string(rep.status)},
                {"pairs", rep.pairs.size()},
                {"min_gap", min_gap},
                {"gap_threshold", o.feas.gap_tol},
                {"structural_in_ins_del", oracle_in_ins_del},
                {"structural_in_del_ins", oracle_in_del_ins}};
  return it;
}

Item insertion_only_code(const Options& o) {
  Item it{"insertion-only-code"};
  const auto code = CodeSample::make({codes::rho(), codes::psi()}, {"rho", "psi"}, o.tol);
  const auto ins = corrects_insertions(code, 1, feas_options(o));
  const auto del = corrects(code, ErrorModel::Deletions, 1, o.tol);
  double min_gap = std::numeric_limits<double>::infinity();
  bool all_infeasible = true;
  if (ins.evidence && ins.evidence->feasibility) {
    for (const auto& p : ins.evidence->feasibility->pairs) {
      min_gap = std::min(min_gap, p.gap);
      all_infeasible = all_infeasible && p.status == FeasibilityStatus::Infeasible;
    }
  }
  it.residual = min_gap;
  it.passed = ins.verdict == Verdict::True && all_infeasible && del.verdict == Verdict::False;
  it.details = {{"corrects_1_insertion", to_string(ins.verdict)},
                {"corrects_1_deletion", to_string(del.verdict)},
                {"min_distance", del.min_distance ? json(*del.min_distance) : json()},
                {"min_gap", min_gap}};
  return it;
}

Item insertion_round_trip(const Options& o) {
  Item it{"insertion-round-trip"};
  constexpr int kSamples = 100;
  SplitMix64 rng = stream(o, 7);
  double worst = 0.0;
  int separable = 0, entangled = 0, not_psd = 0;
  for (int k = 0; k < kSamples; ++k) {
    const int n = rng.uniform_int(0, 2);
    const int t = rng.uniform_int(1, std::min(2, 3 - n));
    const auto rho = random_density(QuditShape(2, n), static_cast<std::size_t>(rng.uniform_int(1, 1 << n)), rng);
    std::vector<int> all(static_cast<std::size_t>(n + t));
    for (int i = 0; i < n + t; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(all.begin(), all.end(), rng);
    const IndexSet q(std::vector<int>(all.begin(), all.begin() + t), n + t);
    // Alternate families by requesting one or two samples and keeping the last.
    const auto samples = sample_insertions_tagged(rho, q, 1 + k % 2, rng(), o.tol);
    const auto& s = samples.back();
    (s.family == InsertionFamily::Separable ? separable : entangled) += 1;
    worst = std::max(worst, frobenius_distance(delete_qudits(s.state, q).matrix(), rho.matrix()));
    try {
      validate(s.state.matrix(), s.state.shape(), o.tol.at(s.state.dim()));
    } catch (const Error&) {
      ++not_psd;
    }
  }
  it.residual = worst;
  it.passed = worst <= kExactTol && not_psd == 0 && separable > 0 && entangled > 0;
  it.details = {{"samples", kSamples},
                {"separable", separable},
                {"entangled", entangled},
                {"max_round_trip_error", worst},
                {"validation_failures", not_psd}};
  return it;
}

Item metric_axioms(const Options& o) {
  Item it{"metric-axioms"};
  SplitMix64 rng = stream(o, 8);
  std::vector<std::array<DensityMatrix, 3>> triples;
  for (int k = 0; k < 50; ++k) {
    const QuditShape sh(2, 2);
    triples.push_back({random_density(sh, static_cast<std::size_t>(rng.uniform_int(1, 4)), rng),
                       random_density(sh, static_cast<std::size_t>(rng.uniform_int(1, 4)), rng),
                       random_density(sh, static_cast<std::size_t>(rng.uniform_int(1, 4)), rng)});
  }
  // A triple with nontrivial distances: the two mixed states of the distance item and |00>.
  triples.push_back({two_qubit("00", "11"), two_qubit("10", "01"), two_qubit("00", "00")});
  const auto rep = metric_check(triples, o.tol);
  it.residual = static_cast<double>(rep.violations.size());
  it.passed = rep.ok();
  json violations = json::array();
  for (const auto& v : rep.violations) violations.push_back({{"triple", v.triple}, {"axiom", v.axiom}, {"detail", v.detail}});
  it.details = {{"triples", rep.triples}, {"distances", rep.distances}, {"violations", violations}};
  return it;
}

Item linear_algebra(const Options& o) {
  Item it{"linear-algebra-oracles"};
  SplitMix64 rng = stream(o, 9);

  double worst_trace = 0.0;
  int trace_failures = 0;
  for (int k = 0; k < 500; ++k) {
    const std::size_t dim = 1 + static_cast<std::size_t>(rng.uniform_int(0, 15));
    const CMatrix h = random_hermitian(dim, rng);
    double sum = 0.0;
    for (double x : hermitian_eigenvalues(h, o.tol.at(dim))) sum += x;
    const double err = std::abs(sum - trace(h).real());
    worst_trace = std::max(worst_trace, err / static_cast<double>(dim));
    trace_failures += err > 1e-10 * static_cast<double>(dim);
  }

  int minor_disagreements = 0, psd_seen = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t dim = 1 + static_cast<std::size_t>(rng.uniform_int(0, 3));
    // Spectra are either exactly zero or at least 0.05 away from it.
    const auto u = random_orthonormal(dim, dim, rng);
    CMatrix h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const int kind = rng.uniform_int(0, 3);
      const double l = kind == 0 ? 0.0 : (kind == 1 ? -1.0 : 1.0) * (0.05 + rng.uniform());
      h += l * CMatrix::outer(u[i], u[i]);
    }
    h = hermitian_part(h);
    const bool minors = principal_minors_nonnegative(h, 1e-9);
    psd_seen += minors;
    minor_disagreements += is_psd(h, o.tol.at(dim)) != minors;
  }

  int congruence_failures = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t dim = 1 + static_cast<std::size_t>(rng.uniform_int(0, 5));
    const CMatrix b = ginibre(dim, dim, rng);
    const CMatrix a = ginibre(static_cast<std::size_t>(rng.uniform_int(1, 6)), dim, rng);
    const CMatrix ama = a * (b * adjoint(b)) * adjoint(a);
    congruence_failures += !is_psd(ama, o.tol.at(ama.rows()));
  }

  // A PSD matrix with a zero diagonal entry has that whole row and column
  // zero; checked on projections of Hermitian matrices with row i removed,
  // and as |m_ij|^2 <= m_ii m_jj on random PSD matrices.
  int zero_row_failures = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t dim = 2 + static_cast<std::size_t>(rng.uniform_int(0, 3));
    const std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(dim) - 1));
    CMatrix h = random_hermitian(dim, rng);
    for (std::size_t c = 0; c < dim; ++c) h(i, c) = h(c, i) = 0.0;
    const CMatrix p = project_psd(h, o.tol.at(dim));
    bool ok = true;
    for (std::size_t c = 0; c < dim; ++c) ok = ok && std::abs(p(i, c)) <= 1e-12 && std::abs(p(c, i)) <= 1e-12;
    const CMatrix g = ginibre(dim, static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(dim))), rng);
    const CMatrix m = g * adjoint(g);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        ok = ok && std::norm(m(r, c)) <= m(r, r).real() * m(c, c).real() * (1 + 1e-12) + 1e-12;
    zero_row_failures += !ok;
  }

  it.residual = worst_trace;
  it.passed = trace_failures == 0 && minor_disagreements == 0 && congruence_failures == 0 && zero_row_failures == 0;
  it.details = {{"trace_checks", 500},
                {"trace_failures", trace_failures},
                {"max_trace_error_per_dim", worst_trace},
                {"psd_checks", 1000},
                {"psd_by_minors", psd_seen},
                {"minor_disagreements", minor_disagreements},
                {"congruence_checks", 200},
                {"congruence_failures", congruence_failures},
                {"zero_row_checks", 200},
                {"zero_row_failures", zero_row_failures}};
  return it;
}

std::vector<Item> run_all(const Options& o) {
  return {mixed_pair_distance(o),        x1_min_distance(o),           x2_min_distance(o),
          containment(o),              strict_inclusion(o), insertion_only_code(o),
          insertion_round_trip(o),     metric_axioms(o),         linear_algebra(o)};
}

json report(const std::vector<Item>& items, const Options& o, double elapsed_ms) {
  json arr = json::array();
  for (const auto& it : items)
    arr.push_back({{"name", it.name}, {"status", it.passed ? "pass" : "fail"}, {"residual", it.residual}, {"details", it.details}});
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json tol{{"eq_tol", opt(o.tol.eq_tol)},
           {"psd_tol", opt(o.tol.psd_tol)},
           {"eig_tol", opt(o.tol.eig_tol)},
           {"feas_tol", o.feas.feas_tol},
           {"gap_tol", o.feas.gap_tol},
           {"defaults", "eq_tol = 1e-9 sqrt(dim), psd_tol = 1e-9 dim, eig_tol = 1e-12 dim when null"}};
  return {{"items", arr}, {"seed", o.seed}, {"tolerances", tol}, {"elapsed_ms", elapsed_ms}};
}

}  // namespace qindel::reproduce
