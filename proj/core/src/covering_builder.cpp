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

#include "hbd/covering_builder.hpp"

#include <cassert>
#include <algorithm>
#include <cmath>
#include <string>

#include "hbd/error.hpp"
#include "hbd/hbd_verifier.hpp"

namespace hbd {

namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t v = 1;
  for (int e = 0; e < exp; ++e) v *= base;
  return v;
}

}  // namespace

BuilderParams BuilderParams::stage_fit(const CoveringFamily& family, int s, std::int64_t big_n,
                                       double big_d) {
  const double alpha = 1.0 / family.gamma;
  BuilderParams p;
  p.s = s;
  p.big_n = big_n;
  p.big_d = big_d;
  p.tau = std::pow(family.ratio(), s) * family.rho * std::pow(static_cast<double>(big_n), alpha);
  return p;
}

Normalization normalize_tau(double tau, std::int64_t big_n, double rho, double c, int r,
                            double alpha) {
  if (!(tau > 0.0) || !(rho > 0.0)) throw InvalidInputError("tau and rho must be positive");
  if (big_n < 1) throw InvalidInputError("N must be at least 1");
  if (!(c > 0.0 && c < 1.0)) throw InvalidInputError("contraction ratio must lie in (0,1)");
  const double target = tau / std::pow(static_cast<double>(big_n), alpha);
  const double spread = 3.0 * std::pow(static_cast<double>(r - 1), alpha);
  int s = 0;
  while (std::pow(c, s) * rho > target || spread * std::pow(c, s) > 1.0) ++s;
  return {s, std::pow(c, s) * rho * std::pow(static_cast<double>(big_n), alpha)};
}

int stage_count(int r, int s) {
  if (r < 2) throw InvalidInputError("arity must be at least 2");
  if (s < 1) throw InvalidInputError("s must be at least 1");
  const std::uint64_t rs = ipow(static_cast<std::uint64_t>(r), s);
  assert((rs - 1) % static_cast<std::uint64_t>(r - 1) == 0);
  return static_cast<int>(static_cast<std::uint64_t>(r) * (rs - 1) /
                          static_cast<std::uint64_t>(r - 1));
}

FinenessSchedule fineness_schedule(int r, int s, std::size_t budget) {
  FinenessSchedule sched;
  sched.t = stage_count(r, s);
  sched.q = checked_count(r, static_cast<std::size_t>(sched.t), budget);
  const auto ur = static_cast<std::uint64_t>(r);

  std::uint64_t pending = ur * (ipow(ur, s) - 1);
  sched.pending_after_stage.push_back(pending);
  // H_s^1(1) = Gamma_1.
  sched.groups.push_back(FinenessGroup{s, 1, 1, 1, 1});
  std::uint64_t stage_start = 2;
  for (int j = 1; j <= sched.t; ++j) {
    const std::uint64_t stage_end = ipow(ur, j);
    // Each of the (r-1) rank-(s+1) parts of this stage splits into sub-groups
    // at every rank s+1..s+j, down to fineness 1 at rank s+j.
    for (int jr = 1; jr <= j; ++jr) {
      const std::uint64_t fineness = ipow(ur, j - jr);
      std::uint64_t ordinal = 1;
      for (std::uint64_t k = stage_start; k <= stage_end; k += fineness, ++ordinal) {
        sched.groups.push_back(FinenessGroup{s + jr, fineness, ordinal, k, k + fineness - 1});
      }
    }
    pending -= ur - 1;
    sched.pending_after_stage.push_back(pending);
    sched.stage_end.push_back(stage_end);
    stage_start = stage_end + 1;
  }
  assert(pending == 0);
  return sched;
}

double TaggedCovering::ratio() const {
  return std::pow(static_cast<double>(arity), -1.0 / gamma);
}

double TaggedCovering::side_for(std::uint64_t k) const {
  return tau / std::pow(static_cast<double>(k) * static_cast<double>(big_n), alpha());
}

TaggedCovering build_tagged_covering(const CoveringFamily& family, const BuilderParams& params,
                                     std::size_t budget) {
  const int r = family.arity;
  const double alpha = 1.0 / family.gamma;
  const double c = family.ratio();
  const double rho = family.rho;
  const int s = params.s;
  if (s < 1) throw InvalidInputError("s must be at least 1");
  if (params.big_n < 1) throw InvalidInputError("N must be at least 1");
  if (params.big_d < rho / std::pow(c, 3) * (1.0 - 1e-12)) {
    throw PreconditionError("D = " + std::to_string(params.big_d) + " is below rho/c^3 = " +
                            std::to_string(rho / std::pow(c, 3)));
  }
  const double fit = std::pow(c, s) * rho;
  const double first = params.tau / std::pow(static_cast<double>(params.big_n), alpha);
  if (std::abs(first - fit) > 1e-12 * fit) {
    throw InvalidInputError("tau is not normalised: tau/N^alpha must equal c^s rho");
  }

  FinenessSchedule sched = fineness_schedule(r, s, budget);
  // The construction reads parts down to resolution s+t; the HBD check goes
  // as deep as the budget allows.
  int checked = 1;
  while (checked < s + sched.t &&
         ipow(static_cast<std::uint64_t>(r), checked + 1) <= static_cast<std::uint64_t>(budget)) {
    ++checked;
  }
  const HbdReport hbd = hbd_report(family, family.gamma, rho, checked, budget);
  if (!hbd.pass()) {
    throw PreconditionError("family '" + family.name + "' fails the HBD conditions at gamma " +
                            std::to_string(family.gamma));
  }

  TaggedCovering cov;
  cov.name = family.name;
  cov.arity = r;
  cov.gamma = family.gamma;
  cov.rho = rho;
  cov.tau = params.tau;
  cov.big_n = params.big_n;
  cov.big_d = params.big_d;
  cov.s = s;
  cov.t = sched.t;
  cov.q = sched.q;
  cov.groups = std::move(sched.groups);
  cov.pending_after_stage = std::move(sched.pending_after_stage);
  cov.squares.reserve(cov.q);

  const MultiIndex ones(r, std::vector<int>(static_cast<std::size_t>(s), 1));
  const CoveringPart first_part = family.part(ones);
  cov.squares.push_back(TaggedSquare{1, first_part.corner(), cov.side_for(1), ones, s, 0});

  // Pending rank-(s+1) parts are the lex ranks r .. r^{s+1}-1 (everything
  // after the r children of (1,...,1)), consumed r-1 at a time.
  const auto ur = static_cast<std::uint64_t>(r);
  std::uint64_t next_pending = ur;
  std::uint64_t k = 1;
  for (int j = 1; j <= sched.t; ++j) {
    const std::uint64_t descendants = ipow(ur, j - 1);
    for (std::uint64_t p = 0; p + 1 < ur; ++p, ++next_pending) {
      const MultiIndex parent = lex_unrank(next_pending, r, static_cast<std::size_t>(s + 1));
      for (std::uint64_t d = 0; d < descendants; ++d) {
        ++k;
        const MultiIndex idx =
            parent.concat(lex_unrank(d, r, static_cast<std::size_t>(j - 1)));
        const CoveringPart part = family.part(idx);
        const double side = cov.side_for(k);
        if (side + kGeometryTolerance < part.side()) {
          throw PreconditionError("square " + std::to_string(k) + " cannot cover part " +
                                  idx.to_string());
        }
        cov.squares.push_back(TaggedSquare{k, part.corner(), side, idx, s + j, j});
      }
    }
  }
  assert(k == cov.q);
  return cov;
}

TaggedCovering scaled_covering(const TaggedCovering& cov, double scale, Vec2 anchor, Vec2 offset) {
  if (!(scale > 0.0)) throw InvalidInputError("scale must be positive");
  TaggedCovering out = cov;
  out.tau *= scale;
  out.big_d *= scale;
  out.rho *= scale;
  for (TaggedSquare& sq : out.squares) {
    sq.tag = offset + scale * (sq.tag - anchor);
    sq.side = out.side_for(sq.k);
  }
  return out;
}

}  // namespace hbd
