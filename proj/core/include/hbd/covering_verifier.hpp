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

#include <cstdint>
#include <optional>
#include <span>

#include "hbd/covering_builder.hpp"
#include "hbd/geometry.hpp"

namespace hbd {

struct FormResult {
  bool pass = true;
  std::optional<std::uint64_t> first_bad_k;
  double expected = 0.0;
  double actual = 0.0;
};

// side(Gamma_k) == tau / (kN)^{1/gamma} to 1e-12 relative, for every k.
FormResult verify_form(const TaggedCovering& cov);

// sup of the max-norm distance between points of two closed boxes; attained
// at a pair of corners.
double box_pair_sup_distance(const Box& a, const Box& b);

struct SeparationOptions {
  // Above this q the scan switches to random pairs.
  std::uint64_t exhaustive_limit = 10'000;
  std::uint64_t sampled_pairs = 10'000'000;
  std::uint64_t seed = 0x5eed;
};

struct SeparationReport {
  std::uint64_t q = 0;
  std::uint64_t pairs_checked = 0;
  // max over pairs j < l of sup ||lambda - mu|| / (D ((l-j)/l)^{1/gamma})
  double worst_ratio = 0.0;
  std::uint64_t worst_j = 0;
  std::uint64_t worst_l = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> first_violation;
  bool sampled = false;

  bool pass() const { return worst_ratio <= 1.0 + 1e-9; }
};

SeparationReport verify_separation(const TaggedCovering& cov, double big_d, double gamma,
                                   const SeparationOptions& options = {});

struct CoverageReport {
  std::uint64_t points = 0;
  std::uint64_t uncovered = 0;
  std::optional<Vec2> first_uncovered;

  bool pass() const { return uncovered == 0; }
};

// Every point lies in some Gamma_k.
CoverageReport verify_coverage(const TaggedCovering& cov, std::span<const Vec2> points);

// Every square contains the box of the part it covers.
bool verify_containment(const TaggedCovering& cov, const CoveringFamily& family);

// Number of indices counted from j to l in lexicographic order.
std::uint64_t enumeration_count(const MultiIndex& j, const MultiIndex& l);

struct JumpCounterexample {
  MultiIndex j;
  MultiIndex l;
  int n = 0;
  double distance = 0.0;
  std::uint64_t count = 0;
  double required = 0.0;
};

struct JumpLemmaReport {
  int resolution = 0;
  std::uint64_t pairs_checked = 0;
  std::optional<JumpCounterexample> counterexample;

  bool pass() const { return !counterexample.has_value(); }
};

// For all j < l in I_r^m and n in [0, m): if ||lambda_l - lambda_j|| >=
// c^{m-n} rho then j->l >= (r^{n-1} + r - 2) / (r - 1). Exhaustive.
JumpLemmaReport verify_jump_lemma(const CoveringFamily& family, int m,
                                  std::size_t budget = kDefaultPartBudget);

}  // namespace hbd
