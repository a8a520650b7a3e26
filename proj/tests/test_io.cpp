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
#include "qindel/io.hpp"
#include "qindel/random.hpp"
#include "test_util.hpp"

namespace qindel {
namespace {

using io::json;
using testing::MatrixNear;
using testing::proj;

const std::string kFixtures = QINDEL_FIXTURE_DIR;

json pure(std::vector<std::array<double, 2>> ket, int length) {
  json k = json::array();
  for (auto [re, im] : ket) k.push_back({re, im});
  return {{"level", 2}, {"length", length}, {"kind", "pure"}, {"ket", k}};
}

// The residual attached to a ParseError, or NaN when none was thrown.
double parse_residual(const json& j) {
  try {
    io::parse_state(j);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError) << e.what();
    return e.residual().value_or(std::numeric_limits<double>::infinity());
  }
  return std::nan("");
}

TEST(StateIo, ParsesEveryKind) {
  const auto k = io::load_state(kFixtures + "/ket01.json");
  EXPECT_TRUE(MatrixNear(k.matrix(), proj("01"), 0));
  const auto m = io::load_state(kFixtures + "/mixed_00_11.json");
  EXPECT_TRUE(MatrixNear(m.matrix(), 0.5 * proj("00") + 0.5 * proj("11"), 0));
  const auto s = io::load_state(kFixtures + "/bell_spectral.json");
  EXPECT_NEAR(trace(s.matrix()).real(), 1.0, 1e-15);
  EXPECT_NEAR(s.matrix()(0, 3).real(), 0.375, 1e-15);
  EXPECT_NEAR(s.matrix()(1, 2).imag(), 0.125, 1e-15);
  const auto q = io::load_state(kFixtures + "/qutrit.json");
  EXPECT_EQ(q.level(), 3);
}

TEST(StateIo, RoundTrip) {
  SplitMix64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto rho = random_density(QuditShape(2, rng.uniform_int(0, 3)), rng);
    const auto back = io::parse_state(json::parse(io::to_json(rho).dump()));
    EXPECT_EQ(back.shape(), rho.shape());
    EXPECT_EQ(back.matrix(), rho.matrix());  // doubles serialize exactly
  }
}

TEST(StateIo, EmptyState) {
  const auto e = io::parse_state({{"level", 2}, {"length", 0}, {"kind", "pure"}, {"ket", {{1, 0}}}});
  EXPECT_EQ(e.dim(), 1u);
}

TEST(StateIo, NumericViolationsCarryResiduals) {
  EXPECT_NEAR(parse_residual(pure({{1, 0}, {1, 0}}, 1)), std::sqrt(2.0) - 1, 1e-12);

  json mixed{{"level", 2}, {"length", 1}, {"kind", "mixed"},
             {"matrix", {{{0.6, 0}, {0, 0}}, {{0, 0}, {0.6, 0}}}}};
  EXPECT_NEAR(parse_residual(mixed), 0.2, 1e-12);
  mixed["matrix"] = {{{1.5, 0}, {0, 0}}, {{0, 0}, {-0.5, 0}}};
  EXPECT_NEAR(parse_residual(mixed), -0.5, 1e-12);
  mixed["matrix"] = {{{0.5, 0}, {0.5, 0}}, {{0, 0}, {0.5, 0}}};
  EXPECT_GT(parse_residual(mixed), 0.1);  // not Hermitian

  const double h = 1 / std::numbers::sqrt2;
  json spectral{{"level", 2}, {"length", 1}, {"kind", "spectral"},
                {"pairs", {{{"p", 0.5}, {"ket", {{1, 0}, {0, 0}}}}, {{"p", 0.5}, {"ket", {{h, 0}, {h, 0}}}}}}};
  EXPECT_NEAR(parse_residual(spectral), h, 1e-12);  // overlap of non-orthogonal kets
  spectral["pairs"][1]["ket"] = {{0, 0}, {1, 0}};
  spectral["pairs"][1]["p"] = 0.7;
  EXPECT_NEAR(parse_residual(spectral), 0.2, 1e-12);
  spectral["pairs"][1]["p"] = -0.5;
  EXPECT_NEAR(parse_residual(spectral), -0.5, 1e-12);
}

TEST(StateIo, StructuralErrors) {
  auto expect_parse_error = [](const json& j) { EXPECT_QINDEL_ERROR(io::parse_state(j), ErrorCode::ParseError); };
  expect_parse_error(json::array());
  expect_parse_error({{"level", 2}, {"kind", "pure"}, {"ket", {{1, 0}}}});
  expect_parse_error({{"level", 1}, {"length", 1}, {"kind", "pure"}, {"ket", {{1, 0}}}});
  expect_parse_error({{"level", 2.5}, {"length", 1}, {"kind", "pure"}, {"ket", {{1, 0}, {0, 0}}}});
  expect_parse_error({{"level", 2}, {"length", 1}, {"kind", "other"}});
  expect_parse_error(pure({{1, 0}}, 1));
  expect_parse_error({{"level", 2}, {"length", 1}, {"kind", "pure"}, {"ket", {{1, 0, 0}, {0, 0}}}});
  expect_parse_error({{"level", 2}, {"length", 1}, {"kind", "pure"}, {"ket", {"a", "b"}}});
  expect_parse_error({{"level", 2}, {"length", 1}, {"kind", "spectral"}, {"pairs", json::array()}});
  expect_parse_error({{"level", 2}, {"length", 20}, {"kind", "pure"}, {"ket", json::array()}});
  EXPECT_QINDEL_ERROR(io::load_state(kFixtures + "/missing.json"), ErrorCode::ParseError);
}

TEST(Serialization, SphereIsListOfStates) {
  const auto j = io::to_json(deletion_sphere(io::load_state(kFixtures + "/ket01.json"), 1));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["origin"], json({1}));
  EXPECT_TRUE(MatrixNear(io::parse_state(j[0]).matrix(), proj("1"), 0));
  EXPECT_TRUE(MatrixNear(io::parse_state(j[1]).matrix(), proj("0"), 0));
}

TEST(Serialization, DistanceAndReports) {
  const auto a = io::load_state(kFixtures + "/mixed_00_11.json");
  const auto b = io::load_state(kFixtures + "/mixed_01_10.json");
  const auto d = io::to_json(indel_distance(a, b));
  EXPECT_EQ(d["value"], 2);
  EXPECT_EQ(d["witness"]["s"], 1);
  EXPECT_TRUE(MatrixNear(io::parse_state(d["witness"]["common"]).matrix(), 0.5 * CMatrix::identity(2), 1e-12));

  const auto f = io::to_json(member_del_ins(codes::psi(), codes::rho(), 1, 1));
  EXPECT_EQ(f["status"], "Infeasible");
  EXPECT_EQ(f["pairs"].size(), 9u);
  EXPECT_FALSE(f.contains("witness"));

  const auto code = CodeSample::make({codes::rho(), codes::psi()}, {"rho", "psi"});
  const auto v = io::to_json(corrects(code, ErrorModel::Deletions, 1), code);
  EXPECT_EQ(v["verdict"], "false");
  EXPECT_EQ(v["min_distance"], 2);
  EXPECT_EQ(v["evidence"]["first"], "rho");
  EXPECT_EQ(v["evidence"]["distance"]["value"], 2);
}

}  // namespace
}  // namespace qindel
