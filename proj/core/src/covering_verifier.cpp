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

#include "hbd/covering_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hbd/error.hpp"

namespace hbd {

FormResult verify_form(const TaggedCovering& cov) {
  FormResult res;
  for (const TaggedSquare& sq : cov.squares) {
    const double expected = cov.side_for(sq.k);
    if (std::abs(sq.side - expected) > 1e-12 * expected) {
      res.pass = false;
      res.first_bad_k = sq.k;
      res.expected = expected;
      res.actual = sq.side;
      break;
    }
  }
  return res;
}

double box_pair_sup_distance(const Box& a, const Box& b) {
  const double xs[2] = {a.lo.x, a.hi.x};
  const double ys[2] = {a.lo.y, a.hi.y};
  const double us[2] = {b.lo.x, b.hi.x};
  const double vs[2] = {b.lo.y, b.hi.y};
  double best = 0.0;
  for (double x : xs) {
    for (double y : ys) {
      for (double u : us) {
        for (double v : vs) best = std::max(best, std::max(std::abs(x - u), std::abs(y - v)));
      }
    }
  }
  return best;
}

namespace {

void record_pair(SeparationReport& rep, const TaggedCovering& cov, std::uint64_t a,
                 std::uint64_t b, double big_d, double alpha) {
  const TaggedSquare& sj = cov.squares[a];
  const TaggedSquare& sl = cov.squares[b];
  const double j = static_cast<double>(sj.k);
  const double l = static_cast<double>(sl.k);
  const double allowed = big_d * std::pow((l - j) / l, alpha);
  const double ratio = box_pair_sup_distance(sj.square(), sl.square()) / allowed;
  ++rep.pairs_checked;
  if (ratio > rep.worst_ratio) {
    rep.worst_ratio = ratio;
    rep.worst_j = sj.k;
    rep.worst_l = sl.k;
  }
  if (ratio > 1.0 + 1e-9 && !rep.first_violation) rep.first_violation = {{sj.k, sl.k}};
}

}  // namespace

SeparationReport verify_separation(const TaggedCovering& cov, double big_d, double gamma,
                                   const SeparationOptions& options) {
  if (!(big_d > 0.0) || !(gamma > 0.0)) throw InvalidInputError("D and gamma must be positive");
  SeparationReport rep;
  rep.q = cov.squares.size();
  const double alpha = 1.0 / gamma;
  const std::uint64_t q = rep.q;
  if (q <= options.exhaustive_limit) {
    for (std::uint64_t a = 0; a < q; ++a) {
      for (std::uint64_t b = a + 1; b < q; ++b) record_pair(rep, cov, a, b, big_d, alpha);
    }
    return rep;
  }
  rep.sampled = true;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
  for (std::uint64_t n = 0; n < options.sampled_pairs; ++n) {
    std::uint64_t a = pick(rng);
    std::uint64_t b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    record_pair(rep, cov, a, b, big_d, alpha);
  }
  return rep;
}

CoverageReport verify_coverage(const TaggedCovering& cov, std::span<const Vec2> points) {
  CoverageReport rep;
  rep.points = points.size();
  for (Vec2 p : points) {
    const bool hit = std::any_of(cov.squares.begin(), cov.squares.end(),
                                 [&](const TaggedSquare& sq) { return sq.square().contains(p); });
    if (!hit) {
      if (!rep.first_uncovered) rep.first_uncovered = p;
      ++rep.uncovered;
    }
  }
  return rep;
}

bool verify_containment(const TaggedCovering& cov, const CoveringFamily& family) {
  return std::all_of(cov.squares.begin(), cov.squares.end(), [&](const TaggedSquare& sq) {
    return sq.square().contains(family.part(sq.covered_index).box);
  });
}

std::uint64_t enumeration_count(const MultiIndex& j, const MultiIndex& l) {
  if (j.size() != l.size()) throw InvalidInputError("enumeration count needs equal lengths");
  if (j.arity() != l.arity()) throw InvalidInputError("enumeration count needs equal arity");
  if (l < j) throw InvalidInputError("enumeration count needs j <= l");
  return lex_rank(l) - lex_rank(j);
}

JumpLemmaReport verify_jump_lemma(const CoveringFamily& family, int m, std::size_t budget) {
  if (m < 1) throw InvalidInputError("jump lemma needs m >= 1");
  const std::vector<CoveringPart> parts = family.level(m, budget);
  const double r = family.arity;
  const double c = family.ratio();
  const double rho = family.rho;
  JumpLemmaReport rep;
  rep.resolution = m;
  // Premise thresholds c^{m-n} rho, n = 0..m-1, and required counts.
  std::vector<double> threshold(static_cast<std::size_t>(m));
  std::vector<double> required(static_cast<std::size_t>(m));
  for (int n = 0; n < m; ++n) {
    threshold[n] = std::pow(c, m - n) * rho;
    required[n] = (std::pow(r, n - 1) + r - 2) / (r - 1);
  }
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      ++rep.pairs_checked;
      const double dist = max_norm(parts[b].corner() - parts[a].corner());
      const auto count = static_cast<std::uint64_t>(b - a);
      for (int n = m - 1; n >= 0; --n) {
        if (dist < threshold[n] * (1.0 - 1e-12)) continue;
        // Largest applicable n carries the strongest requirement.
        if (static_cast<double>(count) < required[n]) {
          rep.counterexample =
              JumpCounterexample{parts[a].index, parts[b].index, n, dist, count, required[n]};
          return rep;
        }
        break;
      }
    }
  }
  return rep;
}

}  // namespace hbd
