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

#include <filesystem>
#include <string>

#include "json.hpp"
#include "qindel/channels.hpp"
#include "qindel/distance.hpp"
#include "qindel/feasibility.hpp"
#include "qindel/state.hpp"
#include "qindel/tolerance.hpp"

// JSON state files and result serialization.
//
// State object:
//   {"level": l, "length": n, "kind": "pure" | "mixed" | "spectral",
//    "ket": [[re, im], ...]                         kind = pure
//    "matrix": [[[re, im], ...], ...]               kind = mixed
//    "pairs": [{"p": w, "ket": [[re, im], ...]}]    kind = spectral}
// Unknown keys are ignored.

namespace qindel::io {

using json = nlohmann::json;

/// Parses and validates a state object. Every failure, structural or
/// numeric, is thrown as ParseError; numeric ones carry the residual of the
/// first violated invariant.
DensityMatrix parse_state(const json& j, const ToleranceSettings& tol = {});
DensityMatrix load_state(const std::filesystem::path& path, const ToleranceSettings& tol = {});

/// kind = "mixed".
json to_json(const DensityMatrix& rho);
json to_json(const CVector& v);
json to_json(const CMatrix& m);
json to_json(const IndexSet& s);
json to_json(const Tolerance& t);

/// List of state objects, each with "origin" and "multiplicity" added.
json to_json(const SphereSet& sphere);
json to_json(const FeasibilityReport& r);
json to_json(const DistanceResult& d);
json to_json(const CapabilityVerdict& v, const CodeSample& code);

}  // namespace qindel::io
