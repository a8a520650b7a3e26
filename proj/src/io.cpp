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

#include "qindel/io.hpp"

#include <cmath>
#include <fstream>

#include "qindel/error.hpp"

namespace qindel::io {
namespace {

[[noreturn]] void fail(const std::string& what, std::optional<double> residual = std::nullopt) {
  throw Error(ErrorCode::ParseError, what, residual);
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) fail(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

cplx parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(where + ": expected [re, im]");
  const cplx z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(where + ": non-finite entry");
  return z;
}

CVector parse_ket(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array");
  if (j.size() != dim)
    fail(where + ": expected " + std::to_string(dim) + " amplitudes, got " + std::to_string(j.size()));
  CVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = parse_complex(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

CMatrix parse_matrix(const json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim)
    fail("matrix: expected " + std::to_string(dim) + " rows");
  CMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const CVector row = parse_ket(j[r], dim, "matrix[" + std::to_string(r) + "]");
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = row[c];
  }
  return m;
}

// Re-raises a validation failure as ParseError, keeping code name and residual.
template <class F>
auto rethrow_as_parse(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(where + ": " + std::string(to_string(e.code())) + ": " + e.detail(), e.residual());
  }
}

CMatrix parse_spectral(const json& j, const QuditShape& shape, const Tolerance& t) {
  const json& pairs = field(j, "pairs");
  if (!pairs.is_array() || pairs.empty()) fail("pairs: expected a non-empty array");
  std::vector<double> weights;
  std::vector<CVector> kets;
  double total = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::string where = "pairs[" + std::to_string(k) + "]";
    if (!pairs[k].is_object()) fail(where + ": expected an object");
    const json& p = field(pairs[k], "p");
    if (!p.is_number()) fail(where + ".p must be a number");
    const double w = p.get<double>();
    if (!std::isfinite(w) || w < -t.psd_tol) fail(where + ".p is negative", w);
    CVector ket = parse_ket(field(pairs[k], "ket"), shape.dim(), where + ".ket");
    const double nrm = norm(ket);
    if (std::abs(nrm - 1.0) > t.eq_tol) fail(where + ".ket: NotNormalized", nrm - 1.0);
    for (std::size_t i = 0; i < kets.size(); ++i) {
      const double overlap = std::abs(inner(kets[i], ket));
      if (overlap > t.eq_tol)
        fail(where + ".ket is not orthogonal to pairs[" + std::to_string(i) + "].ket", overlap);
    }
    total += w;
    weights.push_back(w);
    kets.push_back(std::move(ket));
  }
  if (std::abs(total - 1.0) > t.eq_tol) fail("pairs: TraceNotOne: weights sum to " + std::to_string(total), total - 1.0);
  CMatrix m(shape.dim(), shape.dim());
  for (std::size_t k = 0; k < kets.size(); ++k) m += weights[k] * CMatrix::outer(kets[k], kets[k]);
  return m;
}

}  // namespace

DensityMatrix parse_state(const json& j, const ToleranceSettings& tol) {
  if (!j.is_object()) fail("state: expected a JSON object");
  const int level = int_field(j, "level");
  const int length = int_field(j, "length");
  const QuditShape shape = rethrow_as_parse("shape", [&] { return QuditShape(level, length); });
  const Tolerance t = tol.at(shape.dim());
  const json& kind = field(j, "kind");
  if (!kind.is_string()) fail("\"kind\" must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "pure") {
    PureKet ket{shape, parse_ket(field(j, "ket"), shape.dim(), "ket")};
    return rethrow_as_parse("ket", [&] { return density_from_ket(ket, t); });
  }
  if (k == "mixed") {
    const CMatrix m = parse_matrix(field(j, "matrix"), shape.dim());
    return rethrow_as_parse("matrix", [&] { return validate(m, shape, t); });
  }
  if (k == "spectral") {
    const CMatrix m = parse_spectral(j, shape, t);
    return rethrow_as_parse("pairs", [&] { return validate(m, shape, t); });
  }
  fail("unknown kind \"" + k + "\"");
}

DensityMatrix load_state(const std::filesystem::path& path, const ToleranceSettings& tol) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path.string() + ": " + e.what());
  }
  try {
    return parse_state(j, tol);
  } catch (const Error& e) {
    fail(path.string() + ": " + e.detail(), e.residual());
  }
}

json to_json(const CVector& v) {
  json out = json::array();
  for (const cplx& z : v) out.push_back({z.real() + 0.0, z.imag() + 0.0});
  return out;
}

json to_json(const CMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (const cplx& z : m.row(r)) row.push_back({z.real() + 0.0, z.imag() + 0.0});
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const DensityMatrix& rho) {
  return {{"level", rho.level()}, {"length", rho.length()}, {"kind", "mixed"}, {"matrix", to_json(rho.matrix())}};
}

json to_json(const IndexSet& s) { return s.positions(); }

json to_json(const Tolerance& t) {
  return {{"eq_tol", t.eq_tol}, {"psd_tol", t.psd_tol}, {"eig_tol", t.eig_tol}};
}

json to_json(const SphereSet& sphere) {
  json out = json::array();
  for (const auto& m : sphere.members) {
    json s = to_json(m.state);
    s["origin"] = to_json(m.origin);
    s["multiplicity"] = m.multiplicity;
    out.push_back(std::move(s));
  }
  return out;
}

json to_json(const FeasibilityReport& r) {
  json out{{"status", to_string(r.status)},
           {"gap", r.gap},
           {"residual", r.residual},
           {"iterations", r.iterations},
           {"polished", r.polished}};
  if (r.p) out["P"] = to_json(*r.p);
  if (r.q) out["Q"] = to_json(*r.q);
  if (r.witness) out["witness"] = to_json(*r.witness);
  if (!r.pairs.empty()) {
    json pairs = json::array();
    for (const auto& pr : r.pairs) {
      pairs.push_back({{"P", to_json(pr.p)},
                       {"Q", to_json(pr.q)},
                       {"status", to_string(pr.status)},
                       {"gap", pr.gap},
                       {"residual", pr.residual},
                       {"iterations", pr.iterations},
                       {"inconsistent", pr.inconsistent}});
    }
    out["pairs"] = std::move(pairs);
  }
  return out;
}

json to_json(const DistanceResult& d) {
  return {{"value", d.value},
          {"witness",
           {{"s", d.witness.s},
            {"t", d.witness.t},
            {"P", to_json(d.witness.p)},
            {"Q", to_json(d.witness.q)},
            {"common", to_json(d.witness.common)}}}};
}

json to_json(const CapabilityVerdict& v, const CodeSample& code) {
  json out{{"verdict", to_string(v.verdict)},
           {"errors", to_string(v.model)},
           {"t", v.t},
           {"criterion", v.criterion},
           {"codewords", code.size()}};
  if (v.min_distance) out["min_distance"] = *v.min_distance;
  if (v.evidence) {
    const auto& e = *v.evidence;
    json ev{{"first", code.labels()[e.i]}, {"second", code.labels()[e.j]}};
    if (e.distance) ev["distance"] = to_json(*e.distance);
    if (e.feasibility) ev["feasibility"] = to_json(*e.feasibility);
    out["evidence"] = std::move(ev);
  }
  return out;
}

}  // namespace qindel::io
