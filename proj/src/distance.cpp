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

#include "qindel/distance.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "qindel/error.hpp"

namespace qindel {

namespace {

class SphereCache {
 public:
  SphereCache(const DensityMatrix& rho, const ToleranceSettings& tol)
      : rho_(&rho), tol_(&tol), spheres_(static_cast<std::size_t>(rho.length()) + 1) {}

  const DensityMatrix& state() const { return *rho_; }

  const SphereSet& sphere(int s) {
    auto& slot = spheres_[static_cast<std::size_t>(s)];
    if (!slot) slot = deletion_sphere(*rho_, s, *tol_);
    return *slot;
  }

 private:
  const DensityMatrix* rho_;
  const ToleranceSettings* tol_;
  std::vector<std::optional<SphereSet>> spheres_;
};

DistanceResult distance_cached(SphereCache& a, SphereCache& b, const ToleranceSettings& tol) {
  const DensityMatrix& ra = a.state();
  const DensityMatrix& rb = b.state();
  if (ra.level() != rb.level()) {
    throw Error(ErrorCode::LevelMismatch, "levels " + std::to_string(ra.level()) + " and " +
                                              std::to_string(rb.level()));
  }
  const int n = ra.length();
  const int m = rb.length();
  for (int total = std::abs(n - m); total <= n + m; total += 2) {
    const int s = (total + n - m) / 2;
    const int t = total - s;
    const SphereSet& sa = a.sphere(s);
    const SphereSet& sb = b.sphere(t);
    const double eq_tol = tol.at(ipow(static_cast<std::size_t>(ra.level()), n - s)).eq_tol;
    if (auto hit = sphere_intersection(sa, sb, eq_tol)) {
      const SphereEntry& ea = sa.members[hit->first];
      const SphereEntry& eb = sb.members[hit->second];
      return {total, {s, t, ea.origin, eb.origin, ea.state}};
    }
  }
  // Both spheres at full deletion are {(1)}, so the loop always returns.
  throw Error(ErrorCode::NoConvergence, "indel distance search exhausted");
}

std::vector<SphereCache> make_caches(const CodeSample& code, const ToleranceSettings& tol) {
  std::vector<SphereCache> caches;
  caches.reserve(code.size());
  for (const auto& s : code.states()) caches.emplace_back(s, tol);
  return caches;
}

void require_pairs(const CodeSample& code) {
  if (code.size() < 2) {
    throw Error(ErrorCode::TooFewStates,
                "need at least two codewords, got " + std::to_string(code.size()));
  }
}

}  // namespace

DistanceResult indel_distance(const DensityMatrix& a, const DensityMatrix& b,
                              const ToleranceSettings& tol) {
  SphereCache ca(a, tol);
  SphereCache cb(b, tol);
  return distance_cached(ca, cb, tol);
}

CodeSample CodeSample::make(std::vector<DensityMatrix> states, std::vector<std::string> labels,
                            const ToleranceSettings& tol) {
  if (states.empty()) throw Error(ErrorCode::TooFewStates, "empty code sample");
  if (labels.size() != states.size()) {
    throw Error(ErrorCode::ShapeMismatch, "label count differs from state count");
  }
  const double eq_tol = tol.at(states.front().dim()).eq_tol;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].shape() != states.front().shape()) {
      throw Error(ErrorCode::ShapeMismatch, "codeword " + labels[i] + " has a different shape");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const double d = frobenius_distance(states[i].matrix(), states[j].matrix());
      if (d <= eq_tol) {
        throw Error(ErrorCode::InvalidArgument,
                    "codewords " + labels[j] + " and " + labels[i] + " coincide", d);
      }
    }
  }
  CodeSample code;
  code.states_ = std::move(states);
  code.labels_ = std::move(labels);
  return code;
}

CodeSample CodeSample::deduplicated(const std::vector<DensityMatrix>& states,
                                    const std::vector<std::string>& labels,
                                    const ToleranceSettings& tol) {
  if (labels.size() != states.size()) {
    throw Error(ErrorCode::ShapeMismatch, "label count differs from state count");
  }
  std::vector<DensityMatrix> kept;
  std::vector<std::string> kept_labels;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double eq_tol = tol.at(states[i].dim()).eq_tol;
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const DensityMatrix& k) {
      return k.shape() == states[i].shape() &&
             frobenius_distance(k.matrix(), states[i].matrix()) <= eq_tol;
    });
    if (!dup) {
      kept.push_back(states[i]);
      kept_labels.push_back(labels[i]);
    }
  }
  return make(std::move(kept), std::move(kept_labels), tol);
}

MinDistance min_distance(const CodeSample& code, const ToleranceSettings& tol) {
  require_pairs(code);
  auto caches = make_caches(code, tol);
  MinDistance out{std::numeric_limits<int>::max(), 0, 0, {}};
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j) {
      DistanceResult r = distance_cached(caches[i], caches[j], tol);
      if (r.value < out.value) {
        out.value = r.value;
        out.i = i;
        out.j = j;
      }
      out.pairs.push_back({i, j, std::move(r)});
    }
  return out;
}

CrossSphereGap min_cross_sphere_distance(const CodeSample& code, int t,
                                         const ToleranceSettings& tol) {
  require_pairs(code);
  auto caches = make_caches(code, tol);
  CrossSphereGap best{std::numeric_limits<double>::infinity(), 0, 0};
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j) {
      const auto m = closest_members(caches[i].sphere(t), caches[j].sphere(t));
      if (m && m->distance < best.distance) best = {m->distance, i, j};
    }
  return best;
}

bool deletion_spheres_disjoint(const CodeSample& code, int t, const ToleranceSettings& tol) {
  const auto gap = min_cross_sphere_distance(code, t, tol);
  const int n = code.shape().length();
  return gap.distance > tol.at(ipow(static_cast<std::size_t>(code.shape().level()), n - t)).eq_tol;
}

std::string_view to_string(ErrorModel m) {
  switch (m) {
    case ErrorModel::Deletions: return "deletions";
    case ErrorModel::Indel: return "indel";
    case ErrorModel::Insertions: return "insertions";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

ErrorModel parse_error_model(std::string_view s) {
  if (s == "deletions") return ErrorModel::Deletions;
  if (s == "indel") return ErrorModel::Indel;
  if (s == "insertions") return ErrorModel::Insertions;
  throw Error(ErrorCode::InvalidArgument, "unknown error model '" + std::string(s) + "'");
}

CapabilityVerdict corrects(const CodeSample& code, ErrorModel model, int t,
                           const ToleranceSettings& tol) {
  if (t < 1) throw Error(ErrorCode::CountOutOfRange, "t must be at least 1");
  if (model == ErrorModel::Insertions) {
    throw Error(ErrorCode::InvalidArgument, "use corrects_insertions for insertion errors");
  }
  require_pairs(code);
  if (t > code.shape().length()) {
    throw Error(ErrorCode::CountOutOfRange, "t exceeds the codeword length");
  }
  MinDistance md = min_distance(code, tol);
  CapabilityVerdict v;
  v.model = model;
  v.t = t;
  v.min_distance = md.value;
  v.verdict = md.value >= 2 * t + 1 ? Verdict::True : Verdict::False;
  v.criterion = model == ErrorModel::Deletions
                    ? "d_min >= 2t+1 (pairwise t-deletion spheres disjoint)"
                    : "d_min >= 2t+1 (t-deletion correction implies total-t indel correction)";
  for (auto& pd : md.pairs) {
    if (pd.i == md.i && pd.j == md.j) {
      v.evidence = PairEvidence{pd.i, pd.j, std::move(pd.result), std::nullopt};
      break;
    }
  }
  return v;
}

CapabilityVerdict corrects_insertions(const CodeSample& code, int t,
                                      const FeasibilityOptions& opts) {
  if (t < 1) throw Error(ErrorCode::CountOutOfRange, "t must be at least 1");
  require_pairs(code);
  CapabilityVerdict v;
  v.model = ErrorModel::Insertions;
  v.t = t;
  v.verdict = Verdict::True;
  v.criterion = "pairwise t-insertion spheres disjoint (D^t o I^t feasibility per pair)";
  std::optional<PairEvidence> unknown;
  std::optional<PairEvidence> closest;
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j) {
      FeasibilityReport r = member_del_ins(code.states()[i], code.states()[j], t, t, opts);
      if (r.status == FeasibilityStatus::Feasible) {
        v.verdict = Verdict::False;
        v.evidence = PairEvidence{i, j, std::nullopt, std::move(r)};
        return v;
      }
      if (r.status == FeasibilityStatus::Inconclusive) {
        if (!unknown) unknown = PairEvidence{i, j, std::nullopt, r};
      } else if (!closest || r.gap < closest->feasibility->gap) {
        closest = PairEvidence{i, j, std::nullopt, std::move(r)};
      }
    }
  if (unknown) {
    v.verdict = Verdict::Unknown;
    v.evidence = std::move(unknown);
  } else {
    v.evidence = std::move(closest);
  }
  return v;
}

MetricReport metric_check(const std::vector<std::array<DensityMatrix, 3>>& triples,
                          const ToleranceSettings& tol) {
  MetricReport report;
  for (std::size_t k = 0; k < triples.size(); ++k) {
    const auto& tr = triples[k];
    int d[3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        d[a][b] = indel_distance(tr[static_cast<std::size_t>(a)], tr[static_cast<std::size_t>(b)],
                                 tol)
                      .value;
        ++report.distances;
      }
    auto fail = [&](std::string axiom, std::string detail) {
      report.violations.push_back({k, std::move(axiom), std::move(detail)});
    };
    for (int a = 0; a < 3; ++a) {
      const auto& ra = tr[static_cast<std::size_t>(a)];
      for (int b = 0; b < 3; ++b) {
        const auto& rb = tr[static_cast<std::size_t>(b)];
        const std::string pair = "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
        const bool same =
            ra.shape() == rb.shape() &&
            frobenius_distance(ra.matrix(), rb.matrix()) <= tol.at(ra.dim()).eq_tol;
        if ((d[a][b] == 0) != same) fail("identity", pair + " d = " + std::to_string(d[a][b]));
        if (d[a][b] != d[b][a]) fail("symmetry", pair);
        if (ra.length() == rb.length() && d[a][b] % 2 != 0) {
          fail("evenness", pair + " d = " + std::to_string(d[a][b]));
        }
        for (int c = 0; c < 3; ++c) {
          if (d[a][c] > d[a][b] + d[b][c]) {
            fail("triangle", "d" + std::to_string(a + 1) + std::to_string(c + 1) + " exceeds path via " +
                                 std::to_string(b + 1));
          }
        }
      }
    }
    ++report.triples;
  }
  return report;
}

}  // namespace qindel
