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

#include <doctest.h>

#include <cmath>
#include <random>

#include "hbd/covering_builder.hpp"
#include "hbd/error.hpp"
#include "hbd/shift_dynamics.hpp"
#include "hbd/zoo.hpp"

using namespace hbd;

namespace {

// prod_{k=a+1}^{b} w_k(x), by a loop over plain doubles.
double span_product(const WeightFamily& fam, double x, std::int64_t a, std::int64_t b) {
  double p = 1.0;
  for (std::int64_t k = a + 1; k <= b; ++k) p *= fam.weight(x, k);
  return p;
}

WeightFamily without_closed_form(WeightFamily fam) {
  fam.cumulative = nullptr;
  return fam;
}

SequenceFactor random_factor(std::mt19937_64& rng, std::size_t len, std::size_t top) {
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::vector<double> v(top + 1);
  for (double& x : v) x = val(rng);
  return SequenceFactor::from_values(v, len);
}

FiniteVector one_dim(const SequenceFactor& f) { return FiniteVector({f}); }

TaggedCovering single_square(Vec2 tag) {
  TaggedCovering cov;
  cov.q = 1;
  cov.tau = 0.01;
  cov.squares.push_back(TaggedSquare{1, tag, 0.01, MultiIndex(2, {1}), 1, 0});
  return cov;
}

}  // namespace

TEST_CASE("zero power is the identity") {
  std::mt19937_64 rng(1);
  const auto u = random_factor(rng, 20, 8);
  const auto fam = power_family(0.5, {1, 2});
  const auto b = backward_power(fam, 1.3, 0, u);
  const auto f = forward_power(fam, 1.3, 0, u);
  for (std::size_t l = 0; l <= 20; ++l) {
    CHECK(b.value(l) == doctest::Approx(u.value(l)));
    CHECK(f.value(l) == doctest::Approx(u.value(l)));
  }
  CHECK_THROWS_AS(backward_power(fam, 1.3, -1, u), InvalidInputError);
}

TEST_CASE("Rolewicz shifts of basis vectors") {
  const auto fam = rolewicz_family({1, 2});
  for (double x : {1.0, 1.5, 2.0}) {
    for (std::int64_t n : {1, 7, 40}) {
      const auto b = backward_power(fam, x, n, SequenceFactor::basis(n, 60));
      CHECK(b.support_end() == 0);
      CHECK(b[0].log_abs == doctest::Approx(x * n).epsilon(1e-14));
      const auto f = forward_power(fam, x, n, SequenceFactor::basis(0, 60));
      CHECK(f.support_end() == n);
      CHECK(f[n].log_abs == doctest::Approx(-x * n).epsilon(1e-14));
    }
  }
}

TEST_CASE("backward shift drops the head and keeps the truncation") {
  std::mt19937_64 rng(2);
  const auto u = random_factor(rng, 30, 30);
  const auto fam = inverse_power_family(0.5, {1, 2});
  const auto b = backward_power(fam, 1.2, 12, u);
  CHECK(b.truncation() == 30);
  for (std::size_t l = 19; l <= 30; ++l) CHECK(b[l].is_zero());
  CHECK_FALSE(b[18].is_zero());
  CHECK(backward_power(fam, 1.2, 31, u).support_end() == -1);
  CHECK_THROWS_AS(forward_power(fam, 1.2, 1, u), TruncationOverflowError);
  CHECK(forward_power(fam, 1.2, 5, SequenceFactor(10)).support_end() == -1);
}

TEST_CASE("backward and forward powers against direct products") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> xs(1.0, 2.0);
  for (const auto& fam : {power_family(0.5, {1, 2}), inverse_power_family(0.5, {1, 2}), rolewicz_family({1, 2})}) {
    for (int t = 0; t < 10; ++t) {
      const double x = xs(rng);
      const std::int64_t n = 1 + t;
      const auto u = random_factor(rng, 40, 25);
      const auto b = backward_power(fam, x, n, u);
      for (std::int64_t l = 0; l + n <= 25; ++l) {
        const double want = u.value(l + n) * span_product(fam, x, l, l + n);
        CHECK(std::abs(b.value(l) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
      }
      const auto f = forward_power(fam, x, n, u);
      for (std::int64_t l = 0; l <= 25; ++l) {
        const double want = u.value(l) / span_product(fam, x, l, l + n);
        CHECK(std::abs(f.value(l + n) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("forward power is a right inverse of the backward power") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> xs(1.0, 2.0);
  std::uniform_int_distribution<int> ns(0, 60);
  std::uniform_int_distribution<int> tops(0, 20);
  const WeightFamily fams[] = {power_family(0.5, {1, 2}), inverse_power_family(0.7, {1, 2}),
                               rolewicz_family({1, 2}, 0.3)};
  for (int t = 0; t < 100; ++t) {
    const auto& fam = fams[t % 3];
    const double x = xs(rng);
    const int n = ns(rng);
    const auto top = static_cast<std::size_t>(tops(rng));
    const auto u = random_factor(rng, 100, top);
    const auto back = backward_power(fam, x, n, forward_power(fam, x, n, u));
    for (std::size_t l = 0; l <= top; ++l) {
      CHECK(std::abs(back.value(l) - u.value(l)) <= 1e-10 * std::max(1.0, std::abs(u.value(l))));
    }
    CHECK(back.support_end() <= static_cast<std::int64_t>(top));
  }
}

TEST_CASE("closed-form and table paths agree") {
  std::mt19937_64 rng(6);
  for (const auto& fam : {power_family(0.4, {1, 2}), rolewicz_family({1, 2})}) {
    const auto plain = without_closed_form(fam);
    const auto u = random_factor(rng, 80, 30);
    for (std::int64_t n : {0, 3, 17, 50}) {
      const auto a = backward_power(fam, 1.7, n, u);
      const auto b = backward_power(plain, 1.7, n, u);
      const auto c = forward_power(fam, 1.7, n, u);
      const auto d = forward_power(plain, 1.7, n, u);
      for (std::size_t l = 0; l <= 80; ++l) {
        CHECK(a.value(l) == doctest::Approx(b.value(l)).epsilon(1e-10));
        CHECK(c.value(l) == doctest::Approx(d.value(l)).epsilon(1e-10));
      }
    }
    const auto table = cumulative_table(fam, 1.7, 80);
    const auto e = backward_power(table, 9, u);
    const auto g = backward_power(fam, 1.7, 9, u);
    for (std::size_t l = 0; l <= 80; ++l) CHECK(e.value(l) == doctest::Approx(g.value(l)).epsilon(1e-10));
    CHECK_THROWS_AS(backward_power(std::span<const double>(table).first(10), 1, u), InvalidInputError);
  }
}

TEST_CASE("product_apply acts coordinatewise") {
  const auto fam = rolewicz_family({1, 2});
  const FiniteVector e({SequenceFactor::basis(5, 10), SequenceFactor::basis(5, 10, 2.0)});
  const double lam[] = {1.25, 1.75};
  const auto b = product_apply(fam, lam, 5, e, Direction::backward);
  CHECK(b.factor(0).value(0) == doctest::Approx(std::exp(1.25 * 5)));
  CHECK(b.factor(1).value(0) == doctest::Approx(2.0 * std::exp(1.75 * 5)));
  const auto f = product_apply(fam, lam, 5, b, Direction::forward);
  CHECK(f.factor(1).value(5) == doctest::Approx(2.0));
  const double one[] = {1.0};
  CHECK_THROWS_AS(product_apply(fam, one, 1, e, Direction::backward), InvalidInputError);
}

TEST_CASE("back-forward norms") {
  const auto fam = rolewicz_family({1, 2});
  const auto e0 = SequenceFactor::basis(0, 200);
  const NormSpec sup{};
  // T_x^n S_y^{n+k} e0 = e^{xn - y(n+k)} e_k.
  for (auto [n, k] : std::vector<std::pair<int, int>>{{0, 1}, {5, 3}, {30, 20}}) {
    CHECK(log_norm_back_forward(fam, 1.5, n, 1.2, n + k, e0, sup) ==
          doctest::Approx(1.5 * n - 1.2 * (n + k)).epsilon(1e-12));
    CHECK(std::isinf(log_norm_back_forward(fam, 1.5, n + k, 1.2, n, e0, sup)));
  }
  std::mt19937_64 rng(8);
  const auto u = random_factor(rng, 200, 6);
  const auto p = power_family(0.5, {1, 2});
  for (const NormSpec norm : {NormSpec{}, NormSpec{NormKind::p_sum, 2.0}}) {
    const double direct =
        backward_power(p, 1.1, 9, forward_power(p, 1.8, 12, u)).log_norm(norm);
    CHECK(log_norm_back_forward(p, 1.1, 9, 1.8, 12, u, norm) == doctest::Approx(direct).epsilon(1e-10));
    const double other =
        backward_power(p, 1.1, 14, forward_power(p, 1.8, 12, u)).log_norm(norm);
    CHECK(log_norm_back_forward(p, 1.1, 14, 1.8, 12, u, norm) == doctest::Approx(other).epsilon(1e-10));
  }
}

TEST_CASE("CS1 sequence for Rolewicz weights") {
  // Basis e0: c_k = 2 sup_x e^{(D - x) k} = 2 e^{(D - lo) k}.
  const auto fam = rolewicz_family({1, 2});
  const FiniteVector basis[] = {one_dim(SequenceFactor::basis(0, 1))};
  const auto c = cs1_sequence(fam, 0.5, {1, 2}, basis, 30);
  for (int k = 0; k <= 30; ++k) CHECK(c[k] == doctest::Approx(2 * std::exp(-0.5 * k)).epsilon(1e-12));
  CHECK(cs1_constant(fam, 0.5, {1, 2}, basis[0], 7) == doctest::Approx(c[7]));

  const auto rep = check_cs1_bounds(fam, 1.0, 0.5, {1, 2}, basis, 1, 30, 30, 5);
  CHECK(rep.pass());
  CHECK(rep.precondition_ok);
  CHECK(rep.worst_ratio <= 1.0 + 1e-9);
  CHECK(rep.decay_b == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rep.ratio_margin == doctest::Approx(1 - std::exp(-0.5)).epsilon(1e-9));
  CHECK_FALSE(check_cs1_bounds(fam, 1.0, 0.9, {1, 2}, basis, 1, 10, 10, 5).precondition_ok);
  CHECK_THROWS_AS(check_cs1_bounds(fam, 1.0, 0.5, {1, 2}, basis, 0, 10, 10), InvalidInputError);
}

TEST_CASE("CS1 decay for power weights") {
  const auto fam = power_family(0.5, {1, 2});
  const auto vt = default_target_vector();
  const FiniteVector basis[] = {vt};
  const double d = fam.c2 / (4 * fam.c0);
  // Bounds hold from kappa = support + 1 on.
  const std::int64_t kappa = vt.support_end() + 1;
  const auto rep = check_cs1_bounds(fam, 2.0, d, {1, 2}, basis, kappa, 40, 20, 5);
  CHECK(rep.bounds_pass);
  CHECK(rep.summable);
  CHECK(rep.decay_b > 0.0);
  CHECK(rep.rows.size() == 39);
  for (const auto& row : rep.rows) CHECK(row.measured <= row.bound * (1 + 1e-9));
}

TEST_CASE("choose_big_n") {
  const auto fam = rolewicz_family({1, 2});
  const FiniteVector basis[] = {one_dim(SequenceFactor::basis(0, 1))};
  const auto pick = choose_big_n(fam, 0.25, {1, 2}, basis, 2, 0.1);
  // Tail of 2 e^{-0.75 k} from N, smallest even N below 0.1.
  const auto tail = [](int n) { return 2 * std::exp(-0.75 * n) / (1 - std::exp(-0.75)); };
  int want = 2;
  while (tail(want) >= 0.1) want += 2;
  CHECK(pick.big_n == want);
  CHECK(pick.big_n % 2 == 0);
  CHECK(pick.tail < 0.1);
  CHECK(pick.tail == doctest::Approx(tail(want)).epsilon(1e-6));
  CHECK(pick.terms >= 256);

  const auto p = choose_big_n(power_family(0.5, {1, 2}), 0.25, {1, 2}, basis, 1, 0.1);
  CHECK(p.tail < 0.1);
  CHECK_THROWS_AS(choose_big_n(fam, 0.25, {1, 2}, basis, 0, 0.1), InvalidInputError);
  CHECK_THROWS_AS(choose_big_n(fam, 0.25, {1, 2}, basis, 1, 0.0), InvalidInputError);
  CHECK_THROWS_AS(choose_big_n(fam, 1.5, {1, 2}, basis, 1, 0.1), PreconditionError);
}

TEST_CASE("common vector for a single square") {
  const auto fam = rolewicz_family({1, 2});
  DynamicsConfig cfg;
  cfg.d = 1;
  cfg.interval = {1, 2};
  cfg.truncation = 50;
  cfg.big_n = 6;
  cfg.cs1_d = 0.25;
  const auto cov = single_square({1.5, 0.0});
  const auto u0 = one_dim(SequenceFactor::basis(0, 1, 0.3));
  const auto vt = one_dim(SequenceFactor::basis(1, 1, 2.0));
  const auto cv = build_common_vector(cov, fam, cfg, u0, vt);
  // u = u0 + S^6 vt, and S^6 e1 = e^{-1.5 * 6} e7.
  CHECK(cv.u.truncation() == 50);
  CHECK(cv.u.factor(0).value(0) == doctest::Approx(0.3));
  CHECK(cv.u.factor(0).value(7) == doctest::Approx(2.0 * std::exp(-9.0)));
  CHECK(cv.distance == doctest::Approx(2.0 * std::exp(-9.0)));
  const FiniteVector one[] = {vt};
  CHECK(cv.certificate == doctest::Approx(cs1_sequence(fam, 0.25, {1, 2}, one, 6)[6]));

  const auto zero = build_common_vector(cov, fam, cfg, u0, one_dim(SequenceFactor(1)));
  CHECK(zero.distance == 0.0);
  CHECK(zero.u.factor(0).value(0) == doctest::Approx(0.3));

  auto small = cfg;
  small.truncation = 6;
  CHECK_THROWS_AS(build_common_vector(cov, fam, small, u0, vt), TruncationOverflowError);
  CHECK_THROWS_AS(build_common_vector(single_square({2.5, 0.0}), fam, cfg, u0, vt), InvalidInputError);
  auto two = cfg;
  two.d = 2;
  CHECK_THROWS_AS(build_common_vector(cov, fam, two, u0, vt), InvalidInputError);
}

TEST_CASE("universality for a single square") {
  const auto fam = rolewicz_family({1, 2});
  DynamicsConfig cfg;
  cfg.d = 1;
  cfg.interval = {1, 2};
  cfg.truncation = 50;
  cfg.big_n = 6;
  cfg.eta = 0.1;
  const auto cov = single_square({1.5, 0.0});
  const auto u0 = one_dim(SequenceFactor::basis(0, 1, 0.3));
  const auto vt = one_dim(SequenceFactor::basis(1, 1, 2.0));
  const auto cv = build_common_vector(cov, fam, cfg, u0, vt);
  const auto rep = verify_universality(cv.u, cov, fam, cfg, vt);
  // B^6 u0 = 0 and B^6 S^6 vt = vt at the tag.
  CHECK(rep.worst_at_tag <= 1e-12);
  // Elsewhere in the square the error is 2 |e^{6 (x - 1.5)} - 1|, worst at the far corner.
  CHECK(rep.worst_error == doctest::Approx(2 * std::expm1(6 * 0.01)).epsilon(1e-9));
  CHECK(rep.samples == 9);
  CHECK(rep.pass);
  const Vec2 extra[] = {{1.505, 0.0}, {1.9, 0.0}};
  CHECK(verify_universality(cv.u, cov, fam, cfg, vt, extra).samples == 10);
}

TEST_CASE("flagship run on the gasket") {
  DynamicsOptions opt;
  opt.interval = {1, 2};
  opt.eta = 0.1;
  const auto rep = run_dynamics(*zoo_family("sierpinski"), rolewicz_family({1, 2}), opt);
  CHECK(rep.pass());
  CHECK(rep.q == 27);
  CHECK(rep.big_n % rep.kappa == 0);
  CHECK(rep.tail < opt.eta);
  CHECK(rep.distance < opt.eta);
  CHECK(rep.universality.worst_at_tag < 2 * opt.eta);
  CHECK(rep.universality.worst_error < 3 * opt.eta);
  CHECK(rep.separation_pass);
  CHECK(rep.cs2.pass);
  CHECK(rep.cs1.pass());
  CHECK(rep.truncation >= rep.q * static_cast<std::uint64_t>(rep.big_n));
  for (const auto& sq : rep.covering.squares) {
    CHECK(opt.interval.contains(sq.tag.x, 1e-12));
    CHECK(opt.interval.contains(sq.tag.y, 1e-12));
    CHECK(opt.interval.contains(sq.tag.x + sq.side, 1e-12));
    CHECK(opt.interval.contains(sq.tag.y + sq.side, 1e-12));
  }
}

TEST_CASE("run_dynamics rejects bad options") {
  const auto frac = *zoo_family("sierpinski");
  const auto fam = rolewicz_family({1, 2});
  DynamicsOptions opt;
  opt.eta = 0.0;
  CHECK_THROWS_AS(run_dynamics(frac, fam, opt), InvalidInputError);
  opt.eta = 0.1;
  opt.s = 0;
  CHECK_THROWS_AS(run_dynamics(frac, fam, opt), InvalidInputError);
  opt.s = 1;
  opt.interval = {2, 1};
  CHECK_THROWS_AS(run_dynamics(frac, fam, opt), InvalidInputError);
}
