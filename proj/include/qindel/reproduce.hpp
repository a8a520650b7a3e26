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
#include <string>
#include <vector>

#include "json.hpp"
#include "qindel/feasibility.hpp"
#include "qindel/tolerance.hpp"

// The worked examples and structural properties, each reduced to one
// pass/fail item with a numeric residual.

namespace qindel::reproduce {

struct Options {
  std::uint64_t seed = 20260101;
  ToleranceSettings tol;
  FeasibilityOptions feas;  ///< its `tol` is overwritten by `tol`
};

struct Item {
  std::string name;
  bool passed = false;
  /// The quantity compared against the item's threshold: a distance, an
  /// error, a gap or a failure count depending on the item.
  double residual = 0.0;
  nlohmann::json details = nlohmann::json::object();
};

Item mixed_pair_distance(const Options& o);
Item x1_min_distance(const Options& o);
Item x2_min_distance(const Options& o);
Item containment(const Options& o);
Item strict_inclusion(const Options& o);
Item insertion_only_code(const Options& o);
Item insertion_round_trip(const Options& o);
Item metric_axioms(const Options& o);
Item linear_algebra(const Options& o);

/// All items in order. Items 2, 3 and 8 additionally assert that every
/// equal-length distance they compute is even.
std::vector<Item> run_all(const Options& o);

/// {"items": [...], "seed", "tolerances", "elapsed_ms"}.
nlohmann::json report(const std::vector<Item>& items, const Options& o, double elapsed_ms);

}  // namespace qindel::reproduce
