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
#include <string>
#include <vector>

#include "hbd/covering_builder.hpp"
#include "hbd/geometry.hpp"
#include "hbd/sequence.hpp"
#include "hbd/weights.hpp"

namespace hbd {

enum class Direction { backward, forward };

// Coordinate l of the result is exp(f(x,l+n) - f(x,l)) u_{l+n}.
SequenceFactor backward_power(const WeightFamily& fam, double x, std::int64_t n,
                              const SequenceFactor& u);
// Same, with f(x, 0..L) precomputed.
SequenceFactor backward_power(std::span<const double> f_table, std::int64_t n,
                              const SequenceFactor& u);

// Coordinate l+n of the result is exp(-(f(x,l+n) - f(x,l))) u_l. Throws
// TruncationOverflowError when support(u) + n > L.
SequenceFactor forward_power(const WeightFamily& fam, double x, std::int64_t n,
                             const SequenceFactor& u);
SequenceFactor forward_power(std::span<const double> f_table, std::int64_t n,
                             const SequenceFactor& u);

// Per-factor power with parameter lambda[j].
FiniteVector product_apply(const WeightFamily& fam, std::span<const double> lambda,
                           std::int64_t n, const FiniteVector& u, Direction direction);

// log || B_x^{n_back} F_y^{n_fwd} u ||, evaluated coordinate by coordinate.
double log_norm_back_forward(const WeightFamily& fam, double x, std::int64_t n_back, double y,
                             std::int64_t n_fwd, const SequenceFactor& u, const NormSpec& norm);

// c_k(u) = (L+1)(|u|_inf + 1) sup_x max_{l<=L} exp(C0 D ((k+l)^alpha + l^alpha)) / (w_{l+1}(x)...w_{l+k}(x))
// with L = support(u), sup over `grid` points of the interval.
double cs1_constant(const WeightFamily& fam, double big_d, Interval interval,
                    const FiniteVector& u, std::int64_t k, std::size_t grid = 33);

// max over `basis` of c_k, k = 0..k_max.
std::vector<double> cs1_sequence(const WeightFamily& fam, double big_d, Interval interval,
                                 std::span<const FiniteVector> basis, std::int64_t k_max,
                                 std::size_t grid = 33);

struct Cs1Row {
  std::int64_t k = 0;
  double measured = 0.0;  // sup over n, pairs and basis of both cross norms
  double bound = 0.0;     // c_k
  std::int64_t worst_n = 0;
  double worst_lambda = 0.0;
  double worst_mu = 0.0;
};

struct Cs1Report {
  std::vector<Cs1Row> rows;
  bool precondition_ok = false;  // D <= C2 / (2 C0)
  bool bounds_pass = false;
  double worst_ratio = 0.0;      // max measured / bound
  // -log c_k ~ decay_a + decay_b k^alpha over the upper half of the k range
  double decay_a = 0.0;
  double decay_b = 0.0;
  double ratio_margin = 0.0;     // 1 - c_{k_max} / c_{k_max - 1}
  bool summable = false;
  bool pass() const { return bounds_pass && summable; }
};

Cs1Report check_cs1_bounds(const WeightFamily& fam, double gamma, double big_d,
                           Interval interval, std::span<const FiniteVector> basis,
                           std::int64_t kappa, std::int64_t k_max, std::int64_t n_max,
                           std::size_t grid = 11);

// Smallest multiple of kappa with sum_{k>=N} c_k < eta, and that tail.
struct TailChoice {
  std::int64_t big_n = 0;
  double tail = 0.0;
  std::int64_t terms = 0;  // length of the summed c_k sequence
};

TailChoice choose_big_n(const WeightFamily& fam, double big_d, Interval interval,
                        std::span<const FiniteVector> basis, std::int64_t kappa, double eta,
                        std::size_t grid = 33);

struct DynamicsConfig {
  int d = 2;
  Interval interval;
  std::size_t truncation = 200;
  double eta = 0.1;
  std::int64_t kappa = 1;
  std::int64_t big_n = 1;
  double cs1_d = 0.25;
  NormSpec norm;
  std::size_t grid = 33;
};

struct CommonVector {
  FiniteVector u;
  double distance = 0.0;     // |u - u0|
  double certificate = 0.0;  // sum_i c_{iN}
};

// u = u0 + sum_i S_{iN, lambda_i} vt over the squares of `cov`.
CommonVector build_common_vector(const TaggedCovering& cov, const WeightFamily& fam,
                                 const DynamicsConfig& cfg, const FiniteVector& u0,
                                 const FiniteVector& vt);

struct UniversalityReport {
  double bound = 0.0;  // 3 eta
  double worst_error = 0.0;
  std::uint64_t worst_i = 0;
  Vec2 worst_lambda;
  double worst_at_tag = 0.0;
  std::size_t samples = 0;
  std::size_t min_samples_per_square = 0;
  bool pass = false;
};

// max over i and sampled lambda in Gamma_i of |T_{iN,lambda} u - vt|. Samples are
// the tag, corners, edge midpoints and centre of each square plus every point
// of `extra_samples` inside it.
UniversalityReport verify_universality(const FiniteVector& u, const TaggedCovering& cov,
                                       const WeightFamily& fam, const DynamicsConfig& cfg,
                                       const FiniteVector& vt,
                                       std::span<const Vec2> extra_samples = {});

FiniteVector default_initial_vector(NormSpec norm = {});
FiniteVector default_target_vector(NormSpec norm = {});

struct DynamicsOptions {
  Interval interval;
  double eta = 0.1;
  int s = 1;
  std::size_t min_truncation = 200;
  double cs1_d = 0.0;      // 0 selects C2 / (4 C0)
  double cs2_share = 0.5;  // fraction of eta given to the CS2 term
  int sample_depth = 0;    // 0 selects s + t + 2, capped by the budget
  std::size_t budget = kDefaultPartBudget;
  std::optional<FiniteVector> u0;
  std::optional<FiniteVector> vt;
  NormSpec norm;
  std::uint64_t seed = 1;
  std::int64_t cs_check_n = 50;
  std::int64_t cs_check_k = 50;
};

struct DynamicsReport {
  std::string fractal;
  std::string family;
  double alpha = 0.0;
  double gamma = 0.0;
  bool alpha_within = false;  // alpha <= 1/gamma
  int d = 2;
  Interval interval;
  double eta = 0.0;
  int s = 0;
  int t = 0;
  std::uint64_t q = 0;
  std::int64_t kappa = 0;
  std::int64_t big_n = 0;
  std::size_t truncation = 0;
  double cs1_d = 0.0;
  double tail = 0.0;
  double tau = 0.0;    // in parameter coordinates
  double sigma = 0.0;  // geometric-to-parameter scale
  Vec2 anchor;
  Vec2 offset;
  double mapped_d = 0.0;
  double cs2_bound = 0.0;
  double separation_worst = 0.0;
  bool separation_pass = false;
  double distance = 0.0;
  double certificate = 0.0;
  UniversalityReport universality;
  LipschitzReport cs2;
  Cs1Report cs1;
  TaggedCovering covering;

  bool pass() const { return distance < eta && universality.pass; }
};

DynamicsReport run_dynamics(const CoveringFamily& fractal, const WeightFamily& fam,
                            const DynamicsOptions& options);

}  // namespace hbd
