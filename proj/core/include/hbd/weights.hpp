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
#include <functional>
#include <string>
#include <vector>

namespace hbd {

struct Interval {
  double lo = 1.0;
  double hi = 2.0;
  double width() const { return hi - lo; }
  bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
};

// Weighted shift family parameterized by x > 0.
// f(x, n) = log(w_1(x) ... w_n(x)), f(x, 0) = 0.
struct WeightFamily {
  std::string name;
  double alpha = 1.0;
  double c0 = 1.0;  // |f(x,n) - f(y,n)| <= c0 n^alpha |x - y|
  double c1 = 1.0;  // f(x,n) >= log c1 + c2 n^alpha
  double c2 = 1.0;
  std::function<double(double, std::int64_t)> log_weight;  // log w_k(x), k >= 1
  std::function<double(double, std::int64_t)> cumulative;  // closed form of f, may be empty

  double weight(double x, std::int64_t k) const;
};

// f(x,n) = a x n on I; weights all equal e^{ax}.
WeightFamily rolewicz_family(Interval interval, double scale = 1.0);
// f(x,n) = a x n^alpha.
WeightFamily power_family(double alpha, Interval interval, double scale = 1.0);
// w_n(x) = 1 + x / n^{1-alpha}.
WeightFamily inverse_power_family(double alpha, Interval interval);

WeightFamily weight_family(const std::string& name, double alpha, Interval interval);
std::vector<std::string> weight_family_names();

double log_weight_product(const WeightFamily& fam, double x, std::int64_t n);
// f(x, 0..n_max).
std::vector<double> cumulative_table(const WeightFamily& fam, double x, std::int64_t n_max);

struct LipschitzReport {
  double measured = 0.0;
  double bound = 0.0;
  double worst_x = 0.0;
  double worst_y = 0.0;
  std::int64_t worst_n = 0;
  std::size_t samples = 0;
  bool pass = false;
};

LipschitzReport check_cs2_lipschitz(const WeightFamily& fam, Interval interval,
                                    std::int64_t n_max, std::size_t samples,
                                    std::uint64_t seed = 1);

struct GrowthReport {
  double worst_margin = 0.0;  // min of f(x,n) - log c1 - c2 n^alpha
  double worst_x = 0.0;
  std::int64_t worst_n = 0;
  bool pass = false;
};

GrowthReport check_growth(const WeightFamily& fam, Interval interval, std::int64_t n_max,
                          std::size_t grid = 33);

}  // namespace hbd
