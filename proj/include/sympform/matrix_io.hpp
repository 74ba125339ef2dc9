// Copyright 2026 The sympform Authors
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

#include <string>
#include <string_view>

#include <json.hpp>

#include "sympform/canonical_form.hpp"
#include "sympform/gaussian_apps.hpp"
#include "sympform/invariants.hpp"

namespace sympform {

using Json = nlohmann::ordered_json;

// Matrix document: {"rows": r, "cols": c, "data": [row-major values]}.
Json to_json(const Mat& m);
Mat matrix_from_json(const Json& doc);

Json to_json(const BipartiteCovariance& g);
BipartiteCovariance bipartite_from_json(const Json& doc);

Json to_json(const GaussianChannel& ch);
GaussianChannel channel_from_json(const Json& doc, const Tolerances& tol = {});

Json to_json(const Invariant& v);
Json to_json(const InvariantSpectrum& s);
Json to_json(const CanonicalBlocks& b);
Json to_json(const Decomposition& d);
Json to_json(const WilliamsonResult& w);
Json to_json(const WitnessReport& w);

/// Serializes with every floating-point value printed to 17 significant digits.
std::string dump_json(const Json& doc);

Json parse_json(std::string_view text);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace sympform
