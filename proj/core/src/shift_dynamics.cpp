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

#include "hbd/shift_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hbd/covering_verifier.hpp"
#include "hbd/error.hpp"

namespace hbd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_table(std::span<const double> f_table, std::size_t needed) {
  if (f_table.size() < needed) throw InvalidInputError("cumulative table too short");
}

double combine_log_norm(std::span<const double> logs, const NormSpec& norm) {
  double best = kNegInf;
  if (norm.kind == NormKind::sup) {
    for (double v : logs) best = std::max(best, v);
    return best;
  }
  SignedLog acc;
  for (double v : logs) acc = acc + SignedLog{1, norm.p * v};
  return acc.is_zero() ? kNegInf : acc.log_abs / norm.p;
}

}  // namespace

SequenceFactor backward_power(std::span<const double> f_table, std::int64_t n,
                              const SequenceFactor& u) {
  if (n < 0) throw InvalidInputError("shift power must be non-negative");
  const std::size_t len = u.truncation();
  require_table(f_table, len + 1);
  SequenceFactor out(len);
  const auto shift = static_cast<std::size_t>(n);
  for (std::size_t l = 0; l + shift <= len; ++l) {
    out[l] = u[l + shift].scaled(f_table[l + shift] - f_table[l]);
  }
  return out;
}

SequenceFactor backward_power(const WeightFamily& fam, double x, std::int64_t n,
                              const SequenceFactor& u) {
  if (!fam.cumulative) {
    const auto table = cumulative_table(fam, x, static_cast<std::int64_t>(u.truncation()));
    return backward_power(table, n, u);
  }
  if (n < 0) throw InvalidInputError("shift power must be non-negative");
  // Closed form: evaluate f only on the support.
  SequenceFactor out(u.truncation());
  const auto shift = static_cast<std::size_t>(n);
  for (std::size_t i = shift; i <= u.truncation(); ++i) {
    if (u[i].is_zero()) continue;
    const auto hi = static_cast<std::int64_t>(i);
    out[i - shift] = u[i].scaled(fam.cumulative(x, hi) - fam.cumulative(x, hi - n));
  }
  return out;
}

SequenceFactor forward_power(std::span<const double> f_table, std::int64_t n,
                             const SequenceFactor& u) {
  if (n < 0) throw InvalidInputError("shift power must be non-negative");
  const std::size_t len = u.truncation();
  const std::int64_t top = u.support_end();
  SequenceFactor out(len);
  if (top < 0) return out;
  if (top + n > static_cast<std::int64_t>(len)) {
    throw TruncationOverflowError("forward shift by " + std::to_string(n) +
                                  " overflows truncation " + std::to_string(len));
  }
  const auto shift = static_cast<std::size_t>(n);
  const auto last = static_cast<std::size_t>(top);
  require_table(f_table, last + shift + 1);
  for (std::size_t l = 0; l <= last; ++l) {
    out[l + shift] = u[l].scaled(-(f_table[l + shift] - f_table[l]));
  }
  return out;
}

SequenceFactor forward_power(const WeightFamily& fam, double x, std::int64_t n,
                             const SequenceFactor& u) {
  if (!fam.cumulative) {
    const auto table = cumulative_table(fam, x, static_cast<std::int64_t>(u.truncation()));
    return forward_power(table, n, u);
  }
  if (n < 0) throw InvalidInputError("shift power must be non-negative");
  const std::int64_t top = u.support_end();
  SequenceFactor out(u.truncation());
  if (top < 0) return out;
  if (top + n > static_cast<std::int64_t>(u.truncation())) {
    throw TruncationOverflowError("forward shift by " + std::to_string(n) +
                                  " overflows truncation " + std::to_string(u.truncation()));
  }
  for (std::int64_t l = 0; l <= top; ++l) {
    if (u[l].is_zero()) continue;
    out[l + n] = u[l].scaled(-(fam.cumulative(x, l + n) - fam.cumulative(x, l)));
  }
  return out;
}

FiniteVector product_apply(const WeightFamily& fam, std::span<const double> lambda,
                           std::int64_t n, const FiniteVector& u, Direction direction) {
  if (lambda.size() != u.dimension()) {
    throw InvalidInputError("parameter dimension does not match the vector");
  }
  std::vector<SequenceFactor> out;
  out.reserve(u.dimension());
  for (std::size_t j = 0; j < u.dimension(); ++j) {
    out.push_back(direction == Direction::backward
                      ? backward_power(fam, lambda[j], n, u.factor(j))
                      : forward_power(fam, lambda[j], n, u.factor(j)));
  }
  return FiniteVector(std::move(out), u.norm_spec());
}

double log_norm_back_forward(const WeightFamily& fam, double x, std::int64_t n_back, double y,
                             std::int64_t n_fwd, const SequenceFactor& u, const NormSpec& norm) {
  std::vector<double> logs;
  for (std::size_t l = 0; l <= u.truncation(); ++l) {
    if (u[l].is_zero()) continue;
    const std::int64_t li = static_cast<std::int64_t>(l);
    const std::int64_t i = li + n_fwd;
    if (i < n_back) continue;
    const double fwd = -(log_weight_product(fam, y, i) - log_weight_product(fam, y, li));
    const double back = log_weight_product(fam, x, i) - log_weight_product(fam, x, i - n_back);
    logs.push_back(u[l].log_abs + fwd + back);
  }
  return combine_log_norm(logs, norm);
}

namespace {

std::vector<double> grid_points(Interval interval, std::size_t grid) {
  const std::size_t g = std::max<std::size_t>(grid, 2);
  std::vector<double> xs(g);
  for (std::size_t i = 0; i < g; ++i) {
    xs[i] = interval.lo + interval.width() * static_cast<double>(i) / static_cast<double>(g - 1);
  }
  return xs;
}

struct BasisShape {
  std::int64_t top = 0;
  double log_prefactor = 0.0;
};

BasisShape basis_shape(const FiniteVector& u) {
  BasisShape b;
  b.top = std::max<std::int64_t>(u.support_end(), 0);
  b.log_prefactor = std::log(static_cast<double>(b.top + 1) * (u.max_abs() + 1.0));
  return b;
}

}  // namespace

std::vector<double> cs1_sequence(const WeightFamily& fam, double big_d, Interval interval,
                                 std::span<const FiniteVector> basis, std::int64_t k_max,
                                 std::size_t grid) {
  if (k_max < 0) throw InvalidInputError("k_max must be non-negative");
  std::vector<BasisShape> shapes;
  std::int64_t top = 0;
  for (const auto& u : basis) {
    shapes.push_back(basis_shape(u));
    top = std::max(top, shapes.back().top);
  }
  std::vector<double> log_c(static_cast<std::size_t>(k_max) + 1, kNegInf);
  const double a = fam.alpha;
  for (double x : grid_points(interval, grid)) {
    const auto f = cumulative_table(fam, x, k_max + top);
    for (const BasisShape& b : shapes) {
      for (std::int64_t k = 0; k <= k_max; ++k) {
        double e = kNegInf;
        for (std::int64_t l = 0; l <= b.top; ++l) {
          const double growth = fam.c0 * big_d *
                                (std::pow(static_cast<double>(k + l), a) +
                                 std::pow(static_cast<double>(l), a));
          e = std::max(e, growth - (f[k + l] - f[l]));
        }
        log_c[k] = std::max(log_c[k], b.log_prefactor + e);
      }
    }
  }
  std::vector<double> c(log_c.size());
  std::transform(log_c.begin(), log_c.end(), c.begin(), [](double v) { return std::exp(v); });
  return c;
}

double cs1_constant(const WeightFamily& fam, double big_d, Interval interval,
                    const FiniteVector& u, std::int64_t k, std::size_t grid) {
  const FiniteVector one[] = {u};
  return cs1_sequence(fam, big_d, interval, one, k, grid)[k];
}

Cs1Report check_cs1_bounds(const WeightFamily& fam, double gamma, double big_d,
                           Interval interval, std::span<const FiniteVector> basis,
                           std::int64_t kappa, std::int64_t k_max, std::int64_t n_max,
                           std::size_t grid) {
  if (kappa < 1 || k_max < kappa || n_max < 0) {
    throw InvalidInputError("need 1 <= kappa <= k_max and n_max >= 0");
  }
  Cs1Report rep;
  rep.precondition_ok = big_d <= fam.c2 / (2.0 * fam.c0) * (1.0 + 1e-12);
  const auto bound = cs1_sequence(fam, big_d, interval, basis, k_max);
  const auto anchors = grid_points(interval, grid);
  const std::size_t g = anchors.size();
  const auto clip = [&](double v) { return std::clamp(v, interval.lo, interval.hi); };

  rep.bounds_pass = true;
  for (std::int64_t k = kappa; k <= k_max; ++k) {
    Cs1Row row;
    row.k = k;
    row.bound = bound[k];
    double best = kNegInf;
    for (std::int64_t n = 0; n <= n_max; ++n) {
      const double delta = big_d * std::pow(static_cast<double>(k) / static_cast<double>(n + k),
                                            1.0 / gamma);
      for (double p : anchors) {
        for (std::size_t h = 0; h < g; ++h) {
          const double o = delta * (2.0 * static_cast<double>(h) / static_cast<double>(g - 1) - 1.0);
          const double shifted = clip(p + o);
          const std::pair<double, double> pairs[] = {{p, shifted}, {shifted, p}};
          for (const auto& [lam, mu] : pairs) {
            for (const auto& u : basis) {
              for (const auto& factor : u.factors()) {
                const double v1 = log_norm_back_forward(fam, lam, n, mu, n + k, factor, u.norm_spec());
                const double v2 = log_norm_back_forward(fam, lam, n + k, mu, n, factor, u.norm_spec());
                const double v = std::max(v1, v2);
                if (v > best) {
                  best = v;
                  row.worst_n = n;
                  row.worst_lambda = lam;
                  row.worst_mu = mu;
                }
              }
            }
          }
        }
      }
    }
    row.measured = std::exp(best);
    if (row.bound > 0.0) rep.worst_ratio = std::max(rep.worst_ratio, row.measured / row.bound);
    if (row.measured > row.bound * (1.0 + 1e-9)) rep.bounds_pass = false;
    rep.rows.push_back(row);
  }

  // Least-squares fit of -log c_k against k^alpha on the upper half.
  const std::int64_t from = std::max(kappa, k_max / 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  bool finite = true;
  for (std::int64_t k = from; k <= k_max; ++k) {
    if (!(bound[k] > 0.0) || !std::isfinite(bound[k])) {
      finite = finite && bound[k] == 0.0;
      continue;
    }
    const double xk = std::pow(static_cast<double>(k), fam.alpha);
    const double yk = -std::log(bound[k]);
    sx += xk;
    sy += yk;
    sxx += xk * xk;
    sxy += xk * yk;
    ++cnt;
  }
  if (cnt >= 2) {
    const double den = cnt * sxx - sx * sx;
    rep.decay_b = den != 0.0 ? (cnt * sxy - sx * sy) / den : 0.0;
    rep.decay_a = (sy - rep.decay_b * sx) / cnt;
  }
  if (k_max >= 1 && bound[k_max - 1] > 0.0) rep.ratio_margin = 1.0 - bound[k_max] / bound[k_max - 1];
  rep.summable = finite && (cnt < 2 ? true : rep.decay_b > 0.0);
  return rep;
}

TailChoice choose_big_n(const WeightFamily& fam, double big_d, Interval interval,
                        std::span<const FiniteVector> basis, std::int64_t kappa, double eta,
                        std::size_t grid) {
  if (kappa < 1) throw InvalidInputError("kappa must be positive");
  if (!(eta > 0.0)) throw InvalidInputError("eta must be positive");
  constexpr std::int64_t kMaxTerms = std::int64_t{1} << 20;
  for (std::int64_t len = 256; len <= kMaxTerms; len *= 2) {
    const auto c = cs1_sequence(fam, big_d, interval, basis, len, grid);
    const double last = c[len];
    if (!(last < 1e-18 * eta) || !(last <= c[len / 2])) continue;
    std::vector<double> suffix(c.size() + 1, 0.0);
    for (std::size_t k = c.size(); k-- > 0;) suffix[k] = suffix[k + 1] + c[k];
    for (std::int64_t m = 1; m * kappa <= len; ++m) {
      if (suffix[m * kappa] < eta) return {m * kappa, suffix[m * kappa], len};
    }
  }
  throw PreconditionError("the sequence c_k does not become summable below eta");
}

namespace {

void check_dimension(const DynamicsConfig& cfg, const FiniteVector& u0, const FiniteVector& vt) {
  if (cfg.d < 1 || cfg.d > 2) throw InvalidInputError("dimension d must be 1 or 2");
  if (u0.dimension() != static_cast<std::size_t>(cfg.d) ||
      vt.dimension() != static_cast<std::size_t>(cfg.d)) {
    throw InvalidInputError("vector dimension does not match d");
  }
}

std::vector<double> parameter(const Vec2& p, int d) {
  if (d == 1) return {p.x};
  return {p.x, p.y};
}

}  // namespace

CommonVector build_common_vector(const TaggedCovering& cov, const WeightFamily& fam,
                                 const DynamicsConfig& cfg, const FiniteVector& u0,
                                 const FiniteVector& vt) {
  check_dimension(cfg, u0, vt);
  const std::int64_t q = static_cast<std::int64_t>(cov.squares.size());
  const std::int64_t need = q * cfg.big_n + std::max<std::int64_t>(vt.support_end(), 0);
  if (need > static_cast<std::int64_t>(cfg.truncation)) {
    throw TruncationOverflowError("truncation " + std::to_string(cfg.truncation) +
                                  " is below qN + support(vt) = " + std::to_string(need));
  }
  for (const TaggedSquare& sq : cov.squares) {
    const auto lam = parameter(sq.tag, cfg.d);
    for (double v : lam) {
      if (!cfg.interval.contains(v, 1e-12)) {
        throw InvalidInputError("tag of square " + std::to_string(sq.k) +
                                " lies outside the parameter interval");
      }
    }
  }
  const FiniteVector base = u0.resized(cfg.truncation);
  const FiniteVector target = vt.resized(cfg.truncation);
  CommonVector out{base, 0.0, 0.0};
  for (const TaggedSquare& sq : cov.squares) {
    const auto lam = parameter(sq.tag, cfg.d);
    const auto n = static_cast<std::int64_t>(sq.k) * cfg.big_n;
    out.u = out.u + product_apply(fam, lam, n, target, Direction::forward);
  }
  out.distance = (out.u - base).norm();
  if (q > 0) {
    const FiniteVector one[] = {vt};
    const auto c = cs1_sequence(fam, cfg.cs1_d, cfg.interval, one, q * cfg.big_n, cfg.grid);
    for (std::int64_t i = 1; i <= q; ++i) out.certificate += c[i * cfg.big_n];
  }
  return out;
}

namespace {

using SparseEntries = std::vector<std::pair<std::size_t, SignedLog>>;

SparseEntries nonzeros(const SequenceFactor& f) {
  SparseEntries out;
  for (std::size_t l = 0; l <= f.truncation(); ++l) {
    if (!f[l].is_zero()) out.emplace_back(l, f[l]);
  }
  return out;
}

// log | B_x^n u - v | from the non-zero coordinates of u and v.
double log_residual(const WeightFamily& fam, double x, std::int64_t n, const SparseEntries& u,
                    std::size_t truncation, const SparseEntries& v, const NormSpec& norm) {
  std::vector<double> table;
  if (!fam.cumulative) table = cumulative_table(fam, x, static_cast<std::int64_t>(truncation));
  const auto f = [&](std::int64_t m) {
    return fam.cumulative ? (m == 0 ? 0.0 : fam.cumulative(x, m)) : table[m];
  };
  const auto shift = static_cast<std::size_t>(n);
  SparseEntries moved;
  for (const auto& [i, c] : u) {
    if (i < shift) continue;
    const auto hi = static_cast<std::int64_t>(i);
    moved.emplace_back(i - shift, c.scaled(f(hi) - f(hi - n)));
  }
  std::vector<double> logs;
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < moved.size() || b < v.size()) {
    SignedLog d;
    if (b == v.size() || (a < moved.size() && moved[a].first < v[b].first)) {
      d = moved[a++].second;
    } else if (a == moved.size() || v[b].first < moved[a].first) {
      d = -v[b++].second;
    } else {
      d = moved[a++].second - v[b++].second;
    }
    if (!d.is_zero()) logs.push_back(d.log_abs);
  }
  return combine_log_norm(logs, norm);
}

}  // namespace

UniversalityReport verify_universality(const FiniteVector& u, const TaggedCovering& cov,
                                       const WeightFamily& fam, const DynamicsConfig& cfg,
                                       const FiniteVector& vt,
                                       std::span<const Vec2> extra_samples) {
  check_dimension(cfg, u, vt);
  UniversalityReport rep;
  rep.bound = 3.0 * cfg.eta;
  rep.min_samples_per_square = cov.squares.empty() ? 0 : std::numeric_limits<std::size_t>::max();
  std::vector<SparseEntries> u_nz;
  std::vector<SparseEntries> v_nz;
  for (std::size_t j = 0; j < u.dimension(); ++j) {
    u_nz.push_back(nonzeros(u.factor(j)));
    v_nz.push_back(nonzeros(vt.factor(j)));
  }
  double worst = -1.0;
  for (const TaggedSquare& sq : cov.squares) {
    const Box b = sq.square();
    const Vec2 mid = b.center();
    std::vector<Vec2> pts = {sq.tag,
                             {b.hi.x, b.lo.y},
                             {b.lo.x, b.hi.y},
                             b.hi,
                             mid,
                             {mid.x, b.lo.y},
                             {mid.x, b.hi.y},
                             {b.lo.x, mid.y},
                             {b.hi.x, mid.y}};
    for (const Vec2& p : extra_samples) {
      if (b.contains(p, 1e-12)) pts.push_back(p);
    }
    const auto n = static_cast<std::int64_t>(sq.k) * cfg.big_n;
    for (std::size_t idx = 0; idx < pts.size(); ++idx) {
      const auto lam = parameter(pts[idx], cfg.d);
      double log_err = kNegInf;
      for (std::size_t j = 0; j < lam.size(); ++j) {
        log_err = std::max(log_err, log_residual(fam, lam[j], n, u_nz[j], u.truncation(), v_nz[j],
                                                 u.norm_spec()));
      }
      const double err = std::exp(log_err);
      if (idx == 0) rep.worst_at_tag = std::max(rep.worst_at_tag, err);
      if (err > worst) {
        worst = err;
        rep.worst_i = sq.k;
        rep.worst_lambda = pts[idx];
      }
    }
    rep.samples += pts.size();
    rep.min_samples_per_square = std::min(rep.min_samples_per_square, pts.size());
  }
  rep.worst_error = std::max(worst, 0.0);
  rep.pass = rep.worst_error < rep.bound;
  return rep;
}

FiniteVector default_initial_vector(NormSpec norm) {
  const double a[] = {0.3, -0.2};
  const double b[] = {0.1, 0.4};
  return FiniteVector({SequenceFactor::from_values(a, 1), SequenceFactor::from_values(b, 1)}, norm);
}

FiniteVector default_target_vector(NormSpec norm) {
  const double a[] = {1.0, 0.5};
  const double b[] = {-0.5, 1.0};
  return FiniteVector({SequenceFactor::from_values(a, 1), SequenceFactor::from_values(b, 1)}, norm);
}

namespace {

// Bound on |T_{n,lambda} S_{n,mu} vt - vt| over n = iN, i <= q, when
// |lambda - mu| <= tau / n^{1/gamma}.
double cs2_bound(const WeightFamily& fam, const FiniteVector& vt, double gamma, double tau,
                 std::int64_t big_n, std::uint64_t q) {
  double worst = 0.0;
  for (std::uint64_t i = 1; i <= q; ++i) {
    const double n = static_cast<double>(i) * static_cast<double>(big_n);
    const double dist = tau / std::pow(n, 1.0 / gamma);
    for (const auto& factor : vt.factors()) {
      std::vector<double> logs;
      for (std::size_t l = 0; l <= factor.truncation(); ++l) {
        if (factor[l].is_zero()) continue;
        const double ld = static_cast<double>(l);
        const double z = fam.c0 * (std::pow(ld + n, fam.alpha) + std::pow(ld, fam.alpha)) * dist;
        logs.push_back(factor[l].log_abs + std::log(std::expm1(z)));
      }
      worst = std::max(worst, std::exp(combine_log_norm(logs, vt.norm_spec())));
    }
  }
  return worst;
}

}  // namespace

DynamicsReport run_dynamics(const CoveringFamily& fractal, const WeightFamily& fam,
                            const DynamicsOptions& options) {
  if (!(options.eta > 0.0)) throw InvalidInputError("eta must be positive");
  if (!(options.interval.lo > 0.0) || !(options.interval.hi > options.interval.lo)) {
    throw InvalidInputError("parameter interval must satisfy 0 < a < b");
  }
  if (options.s < 1) throw InvalidInputError("s must be at least 1");
  if (!(options.cs2_share > 0.0) || options.cs2_share >= 1.0) {
    throw InvalidInputError("cs2 share must lie in (0, 1)");
  }
  const FiniteVector u0 = options.u0.value_or(default_initial_vector(options.norm));
  const FiniteVector vt = options.vt.value_or(default_target_vector(options.norm));
  if (u0.dimension() != vt.dimension() || u0.dimension() < 1 || u0.dimension() > 2) {
    throw InvalidInputError("u0 and vt must share a dimension of 1 or 2");
  }

  DynamicsReport rep;
  rep.fractal = fractal.name;
  rep.family = fam.name;
  rep.alpha = fam.alpha;
  rep.gamma = fractal.gamma;
  rep.alpha_within = fam.alpha <= 1.0 / fractal.gamma + 1e-12;
  rep.d = static_cast<int>(u0.dimension());
  rep.interval = options.interval;
  rep.eta = options.eta;
  rep.s = options.s;
  rep.kappa = std::max(u0.support_end(), vt.support_end()) + 1;
  if (rep.kappa < 1) rep.kappa = 1;
  rep.cs1_d = options.cs1_d > 0.0 ? options.cs1_d : fam.c2 / (4.0 * fam.c0);

  const FiniteVector basis[] = {u0, vt};
  const TailChoice tail = choose_big_n(fam, rep.cs1_d, options.interval, basis, rep.kappa,
                                       options.eta);
  rep.big_n = tail.big_n;
  rep.tail = tail.tail;

  const double c = fractal.ratio();
  const double geo_d = fractal.rho / std::pow(c, 3);
  const BuilderParams params = BuilderParams::stage_fit(fractal, options.s, rep.big_n, geo_d);
  const TaggedCovering geo = build_tagged_covering(fractal, params, options.budget);
  rep.t = geo.t;
  rep.q = geo.q;

  // Largest tau whose CS2 bound stays within the share of eta.
  const double target = options.cs2_share * options.eta;
  double lo = 0.0;
  double hi = 1.0;
  while (cs2_bound(fam, vt, fractal.gamma, hi, rep.big_n, geo.q) < target && hi < 1e6) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cs2_bound(fam, vt, fractal.gamma, mid, rep.big_n, geo.q) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double sigma = lo / geo.tau;

  Box extent = geo.squares.front().square();
  for (const TaggedSquare& sq : geo.squares) {
    const Box b = sq.square();
    extent.lo = {std::min(extent.lo.x, b.lo.x), std::min(extent.lo.y, b.lo.y)};
    extent.hi = {std::max(extent.hi.x, b.hi.x), std::max(extent.hi.y, b.hi.y)};
  }
  const double span = std::max(extent.width(), extent.height());
  if (sigma * span > options.interval.width()) sigma = options.interval.width() / span * (1.0 - 1e-12);
  if (sigma * geo.big_d > rep.cs1_d) sigma = rep.cs1_d / geo.big_d;

  rep.sigma = sigma;
  rep.anchor = extent.lo;
  rep.offset = {options.interval.lo, options.interval.lo};
  rep.covering = scaled_covering(geo, sigma, rep.anchor, rep.offset);
  rep.tau = rep.covering.tau;
  rep.mapped_d = rep.covering.big_d;
  rep.cs2_bound = cs2_bound(fam, vt, fractal.gamma, rep.tau, rep.big_n, geo.q);

  const SeparationReport sep = verify_separation(rep.covering, rep.mapped_d, fractal.gamma);
  rep.separation_worst = sep.worst_ratio;
  rep.separation_pass = sep.pass();

  const std::int64_t need = static_cast<std::int64_t>(geo.q) * rep.big_n +
                            std::max<std::int64_t>(vt.support_end(), 0) + 1;
  rep.truncation = std::max<std::size_t>(options.min_truncation, static_cast<std::size_t>(need));

  DynamicsConfig cfg;
  cfg.d = static_cast<int>(u0.dimension());
  cfg.interval = options.interval;
  cfg.truncation = rep.truncation;
  cfg.eta = options.eta;
  cfg.kappa = rep.kappa;
  cfg.big_n = rep.big_n;
  cfg.cs1_d = rep.cs1_d;
  cfg.norm = options.norm;

  const CommonVector common = build_common_vector(rep.covering, fam, cfg, u0, vt);
  rep.distance = common.distance;
  rep.certificate = common.certificate;

  std::vector<Vec2> samples;
  if (fractal.samples) {
    int depth = options.sample_depth > 0 ? options.sample_depth : geo.s + geo.t + 2;
    while (depth > 1 && std::pow(static_cast<double>(fractal.arity), depth) >
                            static_cast<double>(std::min<std::size_t>(options.budget, 1u << 18))) {
      --depth;
    }
    for (const Vec2& p : fractal.samples(depth, options.budget)) {
      samples.push_back(rep.offset + sigma * (p - rep.anchor));
    }
  }
  rep.universality = verify_universality(common.u, rep.covering, fam, cfg, vt, samples);

  const std::int64_t lip_n = std::min<std::int64_t>(static_cast<std::int64_t>(geo.q) * rep.big_n, 1000);
  rep.cs2 = check_cs2_lipschitz(fam, options.interval, std::max<std::int64_t>(lip_n, 1), 200,
                                options.seed);
  const bool cheap = static_cast<bool>(fam.cumulative);
  const std::int64_t k_max = std::max(rep.kappa, cheap ? options.cs_check_k : std::min<std::int64_t>(options.cs_check_k, 20));
  const std::int64_t n_max = cheap ? options.cs_check_n : std::min<std::int64_t>(options.cs_check_n, 20);
  rep.cs1 = check_cs1_bounds(fam, fractal.gamma, rep.cs1_d, options.interval, basis, rep.kappa,
                             k_max, n_max, cheap ? 7 : 5);
  return rep;
}

}  // namespace hbd
