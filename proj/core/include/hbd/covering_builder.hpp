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
#include <vector>

#include "hbd/geometry.hpp"

namespace hbd {

// Inputs of the tagged-covering construction. `tau` is the normalised value
// satisfying tau / N^alpha = c^s rho.
struct BuilderParams {
  double tau = 0.0;
  std::int64_t big_n = 1;
  double big_d = 0.0;
  int s = 1;

  // tau chosen so that the first square exactly fits a rank-s part.
  static BuilderParams stage_fit(const CoveringFamily& family, int s, std::int64_t big_n,
                                 double big_d);
};

struct Normalization {
  int s = 0;
  double tau = 0.0;
};

// Smallest s with c^s rho <= tau / N^alpha and 3 (r-1)^alpha c^s <= 1, and
// the decreased tau = c^s rho N^alpha.
Normalization normalize_tau(double tau, std::int64_t big_n, double rho, double c, int r,
                            double alpha);

// Bookkeeping part H_{rank}^{fineness}(ordinal): the consecutive squares
// k_from..k_to (inclusive).
struct FinenessGroup {
  int rank = 0;
  std::uint64_t fineness = 1;
  std::uint64_t ordinal = 1;
  std::uint64_t k_from = 1;
  std::uint64_t k_to = 1;
};

struct FinenessSchedule {
  int t = 0;
  std::uint64_t q = 0;
  // stage_end[j-1] = r^j, the last square index of stage j.
  std::vector<std::uint64_t> stage_end;
  // Rank-(s+1) parts still uncovered after stage j (index 0 = before stage 1).
  std::vector<std::uint64_t> pending_after_stage;
  std::vector<FinenessGroup> groups;
};

// t = r (r^s - 1) / (r - 1), q = r^t, and every group of every stage.
// Throws BudgetExceededError when q exceeds `budget`.
FinenessSchedule fineness_schedule(int r, int s, std::size_t budget = kDefaultPartBudget);

// t alone, without materialising any group.
int stage_count(int r, int s);

struct TaggedSquare {
  std::uint64_t k = 1;
  Vec2 tag;
  double side = 0.0;
  MultiIndex covered_index;
  int rank = 0;
  int stage = 0;

  Box square() const { return Box::square(tag, side); }
};

struct TaggedCovering {
  std::string name;
  int arity = 2;
  double gamma = 1.0;
  double rho = 1.0;
  double tau = 0.0;
  std::int64_t big_n = 1;
  double big_d = 0.0;
  int s = 1;
  int t = 0;
  std::uint64_t q = 0;
  std::vector<TaggedSquare> squares;
  std::vector<FinenessGroup> groups;
  std::vector<std::uint64_t> pending_after_stage;

  double alpha() const { return 1.0 / gamma; }
  double ratio() const;
  // tau / (k N)^alpha
  double side_for(std::uint64_t k) const;
};

// Builds (lambda_k, Gamma_k), k = 1..q. Rejects s < 1, D < rho/c^3, tau not
// normalised, families failing the HBD conditions up to resolution s+t, and
// q above the budget.
TaggedCovering build_tagged_covering(const CoveringFamily& family, const BuilderParams& params,
                                     std::size_t budget = kDefaultPartBudget);

// The same covering with every coordinate mapped by p -> offset + scale (p - anchor).
// tau, D and rho scale with it.
TaggedCovering scaled_covering(const TaggedCovering& cov, double scale, Vec2 anchor, Vec2 offset);

}  // namespace hbd
