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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hbd/geometry.hpp"

namespace hbd {

// The three defining conditions: (i) diameters, (ii) nesting, (iii)
// adjacency of consecutive parts.
enum class Condition { diameters, nesting, adjacency };

// "i", "ii" or "iii".
std::string condition_label(Condition c);

struct Counterexample {
  std::vector<MultiIndex> indices;
  std::vector<double> values;
  std::string detail;
};

struct CheckResult {
  Condition condition = Condition::diameters;
  int resolution = 0;
  bool pass = true;
  std::optional<Counterexample> counterexample;
};

// Every side <= rho * c^m + tolerance. All parts must share one resolution.
CheckResult check_diameters(std::span<const CoveringPart> covering, double rho, double c);

// Child covering (resolution m+1) refines the parent covering (resolution m):
// child k has the parent k / r as prefix and its box lies in the parent box.
CheckResult check_nesting(std::span<const CoveringPart> parent, std::span<const CoveringPart> child,
                          int arity);

// For every prefix i of length m-2 and j in {2..r}, the boxes of (i, j-1, r)
// and (i, j, 1) intersect. Requires resolution m >= 2 and lexicographic order.
CheckResult check_adjacency(std::span<const CoveringPart> covering, int arity);

struct HbdReport {
  std::string name;
  double gamma = 0.0;
  double rho = 0.0;
  int max_resolution = 0;
  std::vector<CheckResult> checks;

  bool passes(Condition c) const;
  bool pass() const;
  // First failing check, if any.
  const CheckResult* first_failure() const;
};

// Runs (i) on m = 1..m*, (ii) on m -> m+1 for m = 1..m*-1 and (iii) on
// m = 2..m*.
HbdReport hbd_report(const CoveringFamily& family, double gamma, double rho, int max_resolution,
                     std::size_t budget = kDefaultPartBudget);

// Same checks on explicitly supplied levels (levels[k] has resolution
// first_resolution + k).
HbdReport hbd_report(const std::string& name, int arity,
                     const std::vector<std::vector<CoveringPart>>& levels, double gamma,
                     double rho);

}  // namespace hbd
