// Copyright 2026 The hbdcover Authors
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
#include <vector>

#include <json.hpp>

#include "hbd/covering_builder.hpp"
#include "hbd/covering_verifier.hpp"
#include "hbd/geometry.hpp"
#include "hbd/hbd_verifier.hpp"
#include "hbd/shift_dynamics.hpp"

namespace hbd::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::string command;
  std::uint64_t seed = 1;
  Json parameters = Json::object();
  std::string input;
  std::string output;
  double wall_time = 0.0;
};

Json manifest_json(const RunManifest& m);
// Fresh record {"schema", "schema_version", "kind"}.
Json record_header(const std::string& kind);
// Throws InvalidInputError unless the record has the expected kind and schema.
void expect_kind(const Json& record, const std::string& kind);
std::string record_kind(const Json& record);

struct CoveringFile {
  std::string name;
  int arity = 2;
  double gamma = 1.0;
  double rho = 1.0;
  std::vector<std::vector<CoveringPart>> levels;
};

Json covering_json(const CoveringFile& file);
CoveringFile parse_covering(const Json& record);

Json tagged_covering_json(const TaggedCovering& cov);
TaggedCovering parse_tagged_covering(const Json& record);

Json hbd_report_json(const HbdReport& report);
Json separation_json(const SeparationReport& report);
Json jump_json(const JumpLemmaReport& report);
Json dynamics_json(const DynamicsReport& report);

Json vec_json(Vec2 p);

}  // namespace hbd::cli
