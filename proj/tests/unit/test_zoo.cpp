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
#include <set>

#include "hbd/error.hpp"
#include "hbd/hbd_verifier.hpp"
#include "hbd/zoo.hpp"
#include "oracles.hpp"

using namespace hbd;

TEST_CASE("gasket constants and first map") {
  const auto g = sierpinski_gasket(1.0);
  CHECK(g.arity() == 3);
  CHECK(g.ratio() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.gamma() == doctest::Approx(std::log(3.0) / std::log(2.0)).epsilon(1e-15));
  CHECK(g.gamma() == doctest::Approx(1.58496).epsilon(1e-5));
  const Vec2 p = g.maps()[0].apply({0, 0});
  CHECK(p.x == doctest::Approx(-0.25));
  CHECK(p.y == doctest::Approx(-std::sqrt(3.0) / 12).epsilon(1e-12));
  CHECK_THROWS_AS(sierpinski_gasket(0.0), InvalidInputError);
}

TEST_CASE("gasket maps chain vertex to vertex along the arrowhead order") {
  // phi_i sends the bottom-right vertex to where phi_{i+1} sends the bottom-left one.
  const auto g = sierpinski_gasket(1.0);
  const auto& v = g.base().vertices;
  for (int i = 0; i + 1 < 3; ++i) {
    const Vec2 a = g.maps()[i].apply(v[1]);
    const Vec2 b = g.maps()[i + 1].apply(v[0]);
    CHECK(max_norm(a - b) <= 1e-12);
  }
}

TEST_CASE("gasket scales with its side") {
  const auto g1 = sierpinski_gasket(1.0);
  const auto g2 = sierpinski_gasket(2.0);
  CHECK(g2.rho() == doctest::Approx(2.0));
  const auto a = resolution_covering(g1, 3);
  const auto b = resolution_covering(g2, 3);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(b[k].box.lo.x == doctest::Approx(2 * a[k].box.lo.x).epsilon(1e-12));
    CHECK(b[k].box.hi.y == doctest::Approx(2 * a[k].box.hi.y).epsilon(1e-12));
    CHECK(b[k].side() == doctest::Approx(2 * a[k].side()).epsilon(1e-12));
  }
}

TEST_CASE("hilbert square constants") {
  const auto h = hilbert_square();
  CHECK(h.arity() == 4);
  CHECK(h.gamma() == 2.0);
  const Vec2 p = h.maps()[3].apply({0, 0});
  CHECK(p.x == doctest::Approx(0.25));
  CHECK(p.y == doctest::Approx(-0.25));
}

TEST_CASE("hilbert covering is the dyadic partition") {
  const auto h = hilbert_square();
  for (int m = 0; m <= 4; ++m) {
    const auto parts = resolution_covering(h, m);
    const double side = std::ldexp(1.0, -m);
    std::set<std::pair<long, long>> cells;
    for (const auto& p : parts) {
      CHECK(p.box.width() == doctest::Approx(side).epsilon(1e-12));
      CHECK(p.box.height() == doctest::Approx(side).epsilon(1e-12));
      const double gx = (p.box.lo.x + 0.5) / side;
      const double gy = (p.box.lo.y + 0.5) / side;
      CHECK(std::abs(gx - std::round(gx)) <= 1e-9);
      CHECK(std::abs(gy - std::round(gy)) <= 1e-9);
      cells.insert({std::lround(gx), std::lround(gy)});
    }
    CHECK(cells.size() == parts.size());
    CHECK(parts.size() == static_cast<std::size_t>(1) << (2 * m));
  }
}

TEST_CASE("hilbert order moves between edge-adjacent cells") {
  const auto parts = resolution_covering(hilbert_square(), 4);
  for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
    const Vec2 a = parts[k].box.center();
    const Vec2 b = parts[k + 1].box.center();
    const double d = std::abs(a.x - b.x) + std::abs(a.y - b.y);
    CHECK(d == doctest::Approx(1.0 / 16).epsilon(1e-9));
  }
}

TEST_CASE("koch constants and endpoint chaining") {
  const auto k = koch_curve();
  CHECK(k.arity() == 4);
  CHECK(k.gamma() == doctest::Approx(std::log(4.0) / std::log(3.0)).epsilon(1e-15));
  CHECK(k.gamma() == doctest::Approx(1.26186).epsilon(1e-5));
  for (const auto& s : k.maps()) CHECK(std::abs(s.ratio() - 1.0 / 3) <= 1e-12);
  for (int i = 0; i + 1 < 4; ++i) {
    CHECK(max_norm(k.maps()[i].apply({1, 0}) - k.maps()[i + 1].apply({0, 0})) <= 1e-12);
  }
  CHECK(max_norm(k.maps()[0].apply({0, 0}) - Vec2{0, 0}) <= 1e-12);
  CHECK(max_norm(k.maps()[3].apply({1, 0}) - Vec2{1, 0}) <= 1e-12);
}

TEST_CASE("seed similarities send each edge's ends to the seed points") {
  const auto k = koch_curve();
  const std::vector<oracle::cplx> seed{{0, 0}, {1.0 / 3, 0}, {0.5, std::sqrt(3.0) / 6}, {2.0 / 3, 0}, {1, 0}};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 4; ++i) {
    const auto ref = oracle::edge_map(seed[i], seed[i + 1]);
    for (int t = 0; t < 50; ++t) {
      const Vec2 z{u(rng), u(rng)};
      const auto w = ref({z.x, z.y});
      const Vec2 v = k.maps()[i].apply(z);
      CHECK(v.x == doctest::Approx(w.real()).epsilon(1e-12));
      CHECK(v.y == doctest::Approx(w.imag()).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(seed_similarities({{0, 0}, {1, 0}}), InvalidInputError);
}

TEST_CASE("minkowski constants") {
  const auto s = minkowski_sausage();
  CHECK(s.arity() == 8);
  CHECK(s.gamma() == 1.5);
  CHECK(8 * std::pow(s.ratio(), s.gamma()) == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 0; i + 1 < 8; ++i) {
    CHECK(max_norm(s.maps()[i].apply({1, 0}) - s.maps()[i + 1].apply({0, 0})) <= 1e-12);
  }
  const auto rep = hbd_report(covering_family(s), s.gamma(), s.rho(), 3);
  CHECK(rep.passes(Condition::adjacency));
}

TEST_CASE("zoo IFSs pass the three conditions at their stated gamma") {
  for (const char* name : {"sierpinski", "hilbert-square", "koch", "minkowski", "unit-interval"}) {
    const auto fam = zoo_family(name);
    REQUIRE(fam.has_value());
    const int m = fam->arity == 8 ? 3 : 5;
    CHECK_MESSAGE(hbd_report(*fam, fam->gamma, fam->rho, m).pass(), name);
  }
}

TEST_CASE("holder diagonal covering") {
  const auto parts = holder_dyadic_covering(holder_diagonal(), 2);
  REQUIRE(parts.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(parts[k].side() == doctest::Approx(0.25));
    CHECK(parts[k].corner().x == doctest::Approx(k * 0.25));
    CHECK(parts[k].corner().y == doctest::Approx(k * 0.25));
  }
  const auto fam = covering_family(holder_diagonal());
  CHECK(hbd_report(fam, 1.0, 1.0, 6).pass());
}

TEST_CASE("arrowhead pseudo-curve runs through the gasket") {
  const auto g = sierpinski_gasket(1.0);
  const auto c = arrowhead_pseudo_curve(4);
  CHECK(c.holder_beta == doctest::Approx(std::log(2.0) / std::log(3.0)));
  CHECK(max_norm(c.eval(0.0) - g.base().vertices[0]) <= 1e-12);
  CHECK(max_norm(c.eval(1.0) - g.base().vertices[1]) <= 1e-12);
  // Every vertex lies in the gasket's level-4 parts (it is a word image of a vertex).
  const auto parts = resolution_covering(g, 4);
  for (double t : c.knots) {
    const Vec2 p = c.eval(t);
    bool inside = false;
    for (const auto& part : parts) inside = inside || part.box.contains(p, 1e-9);
    CHECK(inside);
  }
  // Consecutive vertices are 2^-4 apart.
  for (std::size_t k = 0; k + 1 < c.knots.size(); ++k) {
    CHECK(euclidean_norm(c.eval(c.knots[k + 1]) - c.eval(c.knots[k])) ==
          doctest::Approx(1.0 / 16).epsilon(1e-9));
  }
}

TEST_CASE("holder spot check on random pairs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& c : {arrowhead_pseudo_curve(6), holder_diagonal()}) {
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double x = u(rng);
      const double y = u(rng);
      if (x == y) continue;
      const double ratio = max_norm(c.eval(x) - c.eval(y)) / std::pow(std::abs(x - y), c.holder_beta);
      worst = std::max(worst, ratio);
    }
    CHECK(worst <= c.holder_rho);
  }
}

TEST_CASE("holder covering sides for the pseudo-arrowhead curve") {
  const auto c = arrowhead_pseudo_curve(6);
  const double cc = std::pow(2.0, -c.holder_beta);
  for (int m = 1; m <= 6; ++m) {
    const auto parts = holder_dyadic_covering(c, m);
    REQUIRE(parts.size() == static_cast<std::size_t>(1) << m);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      CHECK(parts[k].side() <= c.holder_rho * std::pow(cc, m) + 1e-9);
      // Oracle: bounding box of 2^10 samples over the dyadic interval; the
      // exact knot box must contain it.
      const double a = static_cast<double>(k) / static_cast<double>(parts.size());
      const double w = 1.0 / static_cast<double>(parts.size());
      for (int j = 0; j <= 1024; ++j) {
        CHECK(parts[k].box.contains(c.eval(a + w * j / 1024.0), 1e-12));
      }
    }
  }
}

TEST_CASE("holder covering nests") {
  const auto c = arrowhead_pseudo_curve(5);
  for (int m = 1; m <= 6; ++m) {
    const auto parent = holder_dyadic_covering(c, m);
    const auto child = holder_dyadic_covering(c, m + 1);
    for (std::size_t k = 0; k < child.size(); ++k) {
      CHECK(parent[k / 2].box.contains(child[k].box, 1e-9));
    }
  }
}

TEST_CASE("sampled holder covering without knots") {
  CurveEvaluator c;
  c.name = "parabola";
  c.eval = [](double t) { return Vec2{t, t * t}; };
  c.holder_beta = 1.0;
  c.holder_rho = 2.0;
  const auto parts = holder_dyadic_covering(c, 3, 65);
  REQUIRE(parts.size() == 8);
  CHECK(parts[7].box.hi.y == doctest::Approx(1.0));
  CHECK(parts[7].box.lo.y == doctest::Approx(49.0 / 64));
}

TEST_CASE("zoo registry") {
  for (const char* name : {"sierpinski", "gasket", "hilbert-square", "koch", "minkowski",
                           "unit-interval", "holder-diag", "arrowhead-pseudo:3"}) {
    CHECK_MESSAGE(zoo_family(name).has_value(), name);
  }
  CHECK_FALSE(zoo_family("nope").has_value());
  CHECK_FALSE(zoo_family("arrowhead-pseudo:").has_value());
  CHECK_FALSE(zoo_family("arrowhead-pseudo:x").has_value());
  CHECK_FALSE(zoo_family("arrowhead-pseudo:99").has_value());
  CHECK(zoo_family("arrowhead-pseudo:3")->gamma == doctest::Approx(std::log(3.0) / std::log(2.0)));
}
