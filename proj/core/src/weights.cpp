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

#include "hbd/weights.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hbd/error.hpp"

namespace hbd {

namespace {

void check_interval(Interval interval) {
  if (!(interval.lo > 0.0) || !(interval.hi > interval.lo)) {
    throw InvalidInputError("parameter interval must satisfy 0 < a < b");
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) throw InvalidInputError("alpha must lie in (0, 1]");
}

}  // namespace

double WeightFamily::weight(double x, std::int64_t k) const { return std::exp(log_weight(x, k)); }

WeightFamily rolewicz_family(Interval interval, double scale) {
  check_interval(interval);
  if (!(scale > 0.0)) throw InvalidInputError("scale must be positive");
  WeightFamily fam;
  fam.name = "rolewicz";
  fam.alpha = 1.0;
  fam.c0 = scale;
  fam.c1 = 1.0;
  fam.c2 = scale * interval.lo;
  fam.log_weight = [scale](double x, std::int64_t) { return scale * x; };
  fam.cumulative = [scale](double x, std::int64_t n) { return scale * x * static_cast<double>(n); };
  return fam;
}

WeightFamily power_family(double alpha, Interval interval, double scale) {
  check_interval(interval);
  check_alpha(alpha);
  if (!(scale > 0.0)) throw InvalidInputError("scale must be positive");
  WeightFamily fam;
  fam.name = "power";
  fam.alpha = alpha;
  fam.c0 = scale;
  fam.c1 = 1.0;
  fam.c2 = scale * interval.lo;
  fam.cumulative = [alpha, scale](double x, std::int64_t n) {
    return scale * x * std::pow(static_cast<double>(n), alpha);
  };
  fam.log_weight = [alpha, scale](double x, std::int64_t k) {
    const double kd = static_cast<double>(k);
    return scale * x * (std::pow(kd, alpha) - std::pow(kd - 1.0, alpha));
  };
  return fam;
}

WeightFamily inverse_power_family(double alpha, Interval interval) {
  check_interval(interval);
  check_alpha(alpha);
  WeightFamily fam;
  fam.name = "inverse-power";
  fam.alpha = alpha;
  // sum_k 1/k^{1-alpha} <= n^alpha / alpha
  fam.c0 = 1.0 / alpha;
  // log(1+y) >= y log(1+b)/b on [0,b], b = hi, and sum_k k^{alpha-1} >= n^alpha
  const double b = interval.hi;
  fam.c2 = interval.lo * std::log1p(b) / b;
  fam.c1 = 1.0;
  fam.log_weight = [alpha](double x, std::int64_t k) {
    return std::log1p(x * std::pow(static_cast<double>(k), alpha - 1.0));
  };
  return fam;
}

WeightFamily weight_family(const std::string& name, double alpha, Interval interval) {
  if (name == "rolewicz") return rolewicz_family(interval);
  if (name == "power") return power_family(alpha, interval);
  if (name == "inverse-power") return inverse_power_family(alpha, interval);
  throw InvalidInputError("unknown weight family: " + name);
}

std::vector<std::string> weight_family_names() { return {"rolewicz", "power", "inverse-power"}; }

double log_weight_product(const WeightFamily& fam, double x, std::int64_t n) {
  if (n < 0) throw InvalidInputError("n must be non-negative");
  if (n == 0) return 0.0;
  if (fam.cumulative) return fam.cumulative(x, n);
  double acc = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) acc += fam.log_weight(x, k);
  return acc;
}

std::vector<double> cumulative_table(const WeightFamily& fam, double x, std::int64_t n_max) {
  if (n_max < 0) throw InvalidInputError("n_max must be non-negative");
  std::vector<double> table(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (fam.cumulative) {
    for (std::int64_t n = 1; n <= n_max; ++n) table[n] = fam.cumulative(x, n);
  } else {
    for (std::int64_t n = 1; n <= n_max; ++n) table[n] = table[n - 1] + fam.log_weight(x, n);
  }
  return table;
}

LipschitzReport check_cs2_lipschitz(const WeightFamily& fam, Interval interval,
                                    std::int64_t n_max, std::size_t samples,
                                    std::uint64_t seed) {
  check_interval(interval);
  if (n_max < 1) throw InvalidInputError("n_max must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pick(interval.lo, interval.hi);
  const double min_gap = std::min(1e-3, interval.width() / 4.0);
  LipschitzReport rep;
  rep.bound = fam.c0;
  for (std::size_t s = 0; s < samples; ++s) {
    double x = pick(rng);
    double y = pick(rng);
    while (std::abs(x - y) < min_gap) y = pick(rng);
    const auto fx = cumulative_table(fam, x, n_max);
    const auto fy = cumulative_table(fam, y, n_max);
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const double ratio = std::abs(fx[n] - fy[n]) /
                           (std::pow(static_cast<double>(n), fam.alpha) * std::abs(x - y));
      if (ratio > rep.measured) {
        rep.measured = ratio;
        rep.worst_x = x;
        rep.worst_y = y;
        rep.worst_n = n;
      }
    }
    ++rep.samples;
  }
  rep.pass = rep.measured <= fam.c0 * (1.0 + 1e-9);
  return rep;
}

GrowthReport check_growth(const WeightFamily& fam, Interval interval, std::int64_t n_max,
                          std::size_t grid) {
  check_interval(interval);
  GrowthReport rep;
  rep.worst_margin = INFINITY;
  const double log_c1 = std::log(fam.c1);
  for (std::size_t g = 0; g < std::max<std::size_t>(grid, 2); ++g) {
    const double x = interval.lo + interval.width() * static_cast<double>(g) /
                                       static_cast<double>(std::max<std::size_t>(grid, 2) - 1);
    const auto f = cumulative_table(fam, x, n_max);
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const double margin = f[n] - log_c1 - fam.c2 * std::pow(static_cast<double>(n), fam.alpha);
      if (margin < rep.worst_margin) {
        rep.worst_margin = margin;
        rep.worst_x = x;
        rep.worst_n = n;
      }
    }
  }
  rep.pass = rep.worst_margin >= -1e-9;
  return rep;
}

}  // namespace hbd
