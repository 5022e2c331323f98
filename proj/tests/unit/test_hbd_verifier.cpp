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

#include <algorithm>
#include <cmath>

#include "hbd/error.hpp"
#include "hbd/hbd_verifier.hpp"
#include "hbd/zoo.hpp"
#include "oracles.hpp"

using namespace hbd;

namespace {

OrderedIFS cantor_gap() {
  BaseSet base{BaseShape::segment, {{0, 0}, {1, 0}}};
  return OrderedIFS("cantor-gap",
                    {Similarity(0.25, 0, false, {0, 0}), Similarity(0.25, 0, false, {0.75, 0})},
                    base, 0.5, 1.0);
}

const CoveringPart& find(const std::vector<CoveringPart>& parts, std::vector<int> w, int r) {
  return parts[oracle::rank(w, r)];
}

}  // namespace

TEST_CASE("check_diameters examples") {
  const auto g = sierpinski_gasket(1.0);
  const auto parts = resolution_covering(g, 3);
  const auto res = check_diameters(parts, 1.0, 0.5);
  CHECK(res.pass);
  CHECK(res.condition == Condition::diameters);
  double biggest = 0.0;
  const auto maps = oracle::gasket_maps(1.0);
  std::vector<oracle::cplx> base;
  for (const Vec2& v : g.base().vertices) base.emplace_back(v.x, v.y);
  for (const auto& w : oracle::words(3, 3)) {
    biggest = std::max(biggest, oracle::bbox(oracle::image(maps, w, base)).side());
  }
  CHECK(biggest == doctest::Approx(1.0 / 8).epsilon(1e-12));

  const auto zero = check_diameters(parts, 0.0, 0.5);
  CHECK_FALSE(zero.pass);
  REQUIRE(zero.counterexample.has_value());
  CHECK(zero.counterexample->indices.front() == MultiIndex(3, {1, 1, 1}));

  const auto h = resolution_covering(hilbert_square(), 2);
  CHECK(check_diameters(h, 1.0, 0.5).pass);
  CHECK(h.front().side() == doctest::Approx(0.25).epsilon(1e-15));

  std::vector<CoveringPart> mixed = resolution_covering(g, 1);
  mixed.push_back(parts.front());
  CHECK_THROWS_AS(check_diameters(mixed, 1.0, 0.5), InvalidInputError);
}

TEST_CASE("check_nesting examples") {
  const auto g = sierpinski_gasket(1.0);
  CHECK(check_nesting(resolution_covering(g, 1), resolution_covering(g, 2), 3).pass);
  const auto h = hilbert_square();
  CHECK(check_nesting(resolution_covering(h, 2), resolution_covering(h, 3), 4).pass);

  auto child = resolution_covering(h, 3);
  std::swap(child[3], child[40]);
  const auto bad = check_nesting(resolution_covering(h, 2), child, 4);
  CHECK_FALSE(bad.pass);
  CHECK(bad.counterexample.has_value());

  auto short_child = resolution_covering(h, 3);
  short_child.pop_back();
  CHECK_THROWS_AS(check_nesting(resolution_covering(h, 2), short_child, 4), InvalidInputError);
  CHECK_THROWS_AS(check_nesting(resolution_covering(h, 1), resolution_covering(h, 3), 4),
                  InvalidInputError);
}

TEST_CASE("check_adjacency examples") {
  const auto g = resolution_covering(sierpinski_gasket(1.0), 2);
  CHECK(find(g, {1, 3}, 3).box.intersects(find(g, {2, 1}, 3).box, 1e-9));
  CHECK(find(g, {2, 3}, 3).box.intersects(find(g, {3, 1}, 3).box, 1e-9));
  CHECK(check_adjacency(g, 3).pass);

  const auto h = resolution_covering(hilbert_square(), 2);
  CHECK(check_adjacency(h, 4).pass);
  for (int j = 2; j <= 4; ++j) {
    CHECK(find(h, {j - 1, 4}, 4).box.intersects(find(h, {j, 1}, 4).box, 1e-9));
  }

  const auto c = resolution_covering(cantor_gap(), 2);
  CHECK_FALSE(find(c, {1, 2}, 2).box.intersects(find(c, {2, 1}, 2).box, 1e-9));
  const auto bad = check_adjacency(c, 2);
  CHECK_FALSE(bad.pass);
  CHECK(bad.condition == Condition::adjacency);

  CHECK_THROWS_AS(check_adjacency(resolution_covering(hilbert_square(), 1), 4), InvalidInputError);
}

TEST_CASE("hbd_report examples") {
  const auto gasket = *zoo_family("sierpinski");
  const auto rep = hbd_report(gasket, std::log(3.0) / std::log(2.0), 1.0, 5);
  CHECK(rep.pass());
  CHECK(rep.first_failure() == nullptr);
  CHECK(rep.max_resolution == 5);

  const auto low = hbd_report(gasket, 1.2, 1.0, 5);
  CHECK_FALSE(low.pass());
  REQUIRE(low.first_failure() != nullptr);
  CHECK(low.first_failure()->condition == Condition::diameters);
  // Oracle: first m where the side 2^-m exceeds 3^{-m/1.2}.
  int first = 0;
  for (int m = 1; m <= 5 && first == 0; ++m) {
    if (std::pow(0.5, m) > std::pow(3.0, -m / 1.2) + 1e-9) first = m;
  }
  CHECK(low.first_failure()->resolution == first);
  CHECK_FALSE(low.passes(Condition::diameters));
  CHECK(low.passes(Condition::nesting));
  CHECK(low.passes(Condition::adjacency));

  CHECK(hbd_report(*zoo_family("holder-diag"), 1.0, 1.0, 6).pass());
  CHECK_THROWS_AS(hbd_report(gasket, 1.58, 1.0, 0), InvalidInputError);
  CHECK_THROWS_AS(hbd_report(*zoo_family("hilbert-square"), 2.0, 1.0, 12, 1000), BudgetExceededError);
}

TEST_CASE("report pass flag is the conjunction of the checks") {
  for (double gamma : {1.2, 1.5, 1.6}) {
    const auto rep = hbd_report(*zoo_family("sierpinski"), gamma, 1.0, 4);
    const bool all = std::all_of(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.pass; });
    CHECK(rep.pass() == all);
    CHECK(rep.pass() == (rep.passes(Condition::diameters) && rep.passes(Condition::nesting) &&
                         rep.passes(Condition::adjacency)));
  }
}

TEST_CASE("passing is monotone in gamma") {
  for (const char* name : {"sierpinski", "hilbert-square", "koch", "unit-interval"}) {
    const auto fam = *zoo_family(name);
    for (double extra : {0.0, 0.1, 0.5}) {
      CHECK_MESSAGE(hbd_report(fam, fam.gamma + extra, fam.rho, 5).pass(), name);
    }
  }
}

TEST_CASE("condition (i) fails below the similarity dimension") {
  for (const char* name : {"sierpinski", "hilbert-square", "koch", "minkowski"}) {
    const auto fam = *zoo_family(name);
    const int m = fam.arity == 8 ? 4 : 8;
    const auto rep = hbd_report(fam, 0.9 * fam.gamma, fam.rho, m);
    CHECK_MESSAGE(!rep.passes(Condition::diameters), name);
  }
}

TEST_CASE("explicit levels give the same report") {
  const auto fam = *zoo_family("koch");
  std::vector<std::vector<CoveringPart>> levels;
  for (int m = 1; m <= 4; ++m) levels.push_back(fam.level(m, kDefaultPartBudget));
  const auto a = hbd_report(fam, fam.gamma, fam.rho, 4);
  const auto b = hbd_report("koch", 4, levels, fam.gamma, fam.rho);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].pass == b.checks[i].pass);
    CHECK(a.checks[i].resolution == b.checks[i].resolution);
    CHECK(a.checks[i].condition == b.checks[i].condition);
  }
  CHECK(condition_label(Condition::diameters) == "i");
  CHECK(condition_label(Condition::nesting) == "ii");
  CHECK(condition_label(Condition::adjacency) == "iii");
}
