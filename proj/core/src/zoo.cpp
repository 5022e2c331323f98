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

#include "hbd/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "hbd/error.hpp"

namespace hbd {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

}  // namespace

OrderedIFS sierpinski_gasket(double side) {
  if (!(side > 0.0)) throw InvalidInputError("gasket side must be positive");
  const double l = side;
  std::vector<Similarity> maps{
      Similarity(0.5, kPi / 3, true, {-l / 4, -kSqrt3 / 12 * l}),
      Similarity(0.5, 0.0, false, {0.0, kSqrt3 / 6 * l}),
      Similarity(0.5, -kPi / 3, true, {l / 4, -kSqrt3 / 12 * l}),
  };
  BaseSet base{BaseShape::triangle,
               {{-l / 2, -kSqrt3 / 6 * l}, {l / 2, -kSqrt3 / 6 * l}, {0.0, kSqrt3 / 3 * l}}};
  // Images of the triangle have max-norm diameter side * 2^-m, so rho = side.
  return OrderedIFS("sierpinski", std::move(maps), std::move(base), std::log(3.0) / std::log(2.0),
                    l);
}

OrderedIFS hilbert_square() {
  // -1/2 conj(z) e^{-i pi/2} = 1/2 conj(z) e^{i pi/2}, and symmetrically for phi_4.
  std::vector<Similarity> maps{
      Similarity(0.5, kPi / 2, true, {-0.25, -0.25}),
      Similarity(0.5, 0.0, false, {-0.25, 0.25}),
      Similarity(0.5, 0.0, false, {0.25, 0.25}),
      Similarity(0.5, -kPi / 2, true, {0.25, -0.25}),
  };
  BaseSet base{BaseShape::square, {{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}};
  return OrderedIFS("hilbert-square", std::move(maps), std::move(base), 2.0, 1.0);
}

std::vector<Similarity> seed_similarities(const std::vector<Vec2>& path) {
  if (path.size() < 3) throw InvalidInputError("a seed needs at least two edges");
  std::vector<Similarity> maps;
  for (std::size_t e = 0; e + 1 < path.size(); ++e) {
    const Vec2 d = path[e + 1] - path[e];
    maps.emplace_back(euclidean_norm(d), std::atan2(d.y, d.x), false, path[e]);
  }
  return maps;
}

OrderedIFS koch_curve() {
  const std::vector<Vec2> seed{{0, 0}, {1.0 / 3, 0}, {0.5, kSqrt3 / 6}, {2.0 / 3, 0}, {1, 0}};
  BaseSet base{BaseShape::triangle, {{0, 0}, {1, 0}, {0.5, kSqrt3 / 6}}};
  return OrderedIFS("koch", seed_similarities(seed), std::move(base),
                    std::log(4.0) / std::log(3.0), 1.0);
}

OrderedIFS minkowski_sausage() {
  const std::vector<Vec2> seed{{0, 0},      {0.25, 0},     {0.25, 0.25},
                               {0.5, 0.25}, {0.5, 0},      {0.5, -0.25},
                               {0.75, -0.25}, {0.75, 0},  {1, 0}};
  BaseSet base{BaseShape::diamond, {{0, 0}, {0.5, 0.5}, {1, 0}, {0.5, -0.5}}};
  return OrderedIFS("minkowski", seed_similarities(seed), std::move(base), 1.5, 1.0);
}

OrderedIFS unit_interval() {
  std::vector<Similarity> maps{Similarity(0.5, 0.0, false, {0.0, 0.0}),
                               Similarity(0.5, 0.0, false, {0.5, 0.0})};
  BaseSet base{BaseShape::segment, {{0, 0}, {1, 0}}};
  return OrderedIFS("unit-interval", std::move(maps), std::move(base), 1.0, 1.0);
}

CurveEvaluator holder_diagonal() {
  CurveEvaluator c;
  c.name = "holder-diag";
  c.eval = [](double t) { return Vec2{t, t}; };
  c.holder_beta = 1.0;
  c.holder_rho = 1.0;
  c.knots = {0.0, 1.0};
  return c;
}

CurveEvaluator pseudo_curve(const OrderedIFS& ifs, int order, Vec2 start, Vec2 end, double beta,
                            double rho) {
  if (order < 0) throw InvalidInputError("pseudo-curve order must be non-negative");
  std::vector<Vec2> vertices;
  if (order == 0) {
    vertices.push_back(start);
  } else {
    // phi_i(start) for every word i of length `order`, in lexicographic order.
    const std::uint64_t count = checked_count(ifs.arity(), static_cast<std::size_t>(order),
                                              kDefaultPartBudget);
    vertices.reserve(count + 1);
    for (std::uint64_t rank = 0; rank < count; ++rank) {
      const MultiIndex w = lex_unrank(rank, ifs.arity(), static_cast<std::size_t>(order));
      Affine acc;
      for (int e : w.entries()) acc = acc.then_inner(ifs.maps()[e - 1].affine());
      vertices.push_back(acc.apply(start));
    }
  }
  vertices.push_back(end);

  const auto segments = static_cast<double>(vertices.size() - 1);
  CurveEvaluator c;
  c.name = ifs.name() + "-pseudo:" + std::to_string(order);
  c.holder_beta = beta;
  c.holder_rho = rho;
  c.knots.reserve(vertices.size());
  for (std::size_t k = 0; k < vertices.size(); ++k) c.knots.push_back(static_cast<double>(k) / segments);
  c.eval = [vertices = std::move(vertices), segments](double t) {
    t = std::clamp(t, 0.0, 1.0);
    const double u = t * segments;
    auto k = static_cast<std::size_t>(std::floor(u));
    if (k >= vertices.size() - 1) return vertices.back();
    const double f = u - static_cast<double>(k);
    return (1.0 - f) * vertices[k] + f * vertices[k + 1];
  };
  return c;
}

CurveEvaluator arrowhead_pseudo_curve(int order) {
  const OrderedIFS g = sierpinski_gasket(1.0);
  const auto& v = g.base().vertices;
  // |x - y| <= 3^-k puts x, y in two adjacent level-k pieces, each inside a
  // sub-triangle of side 2^-k; hence |f(x) - f(y)| <= 2 * 2^-k < 4 |x - y|^beta.
  CurveEvaluator c = pseudo_curve(g, order, v[0], v[1], std::log(2.0) / std::log(3.0), 4.0);
  c.name = "arrowhead-pseudo:" + std::to_string(order);
  return c;
}

namespace {

Box image_box(const CurveEvaluator& curve, double a, double b, std::size_t samples) {
  std::vector<Vec2> pts{curve.eval(a), curve.eval(b)};
  if (!curve.knots.empty()) {
    auto it = std::upper_bound(curve.knots.begin(), curve.knots.end(), a);
    for (; it != curve.knots.end() && *it < b; ++it) pts.push_back(curve.eval(*it));
  } else {
    const std::size_t n = std::max<std::size_t>(samples, 2);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      pts.push_back(curve.eval(a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1)));
    }
  }
  return Box::bounding(pts);
}

double dyadic_start(const MultiIndex& index) {
  double start = 0.0;
  double w = 0.5;
  for (int e : index.entries()) {
    start += (e - 1) * w;
    w /= 2;
  }
  return start;
}

}  // namespace

std::vector<CoveringPart> holder_dyadic_covering(const CurveEvaluator& curve, int m,
                                                 std::size_t samples_per_interval,
                                                 std::size_t budget) {
  if (m < 0) throw InvalidInputError("resolution must be non-negative");
  const std::uint64_t count = checked_count(2, static_cast<std::size_t>(m), budget);
  const double width = std::ldexp(1.0, -m);
  std::vector<CoveringPart> parts;
  parts.reserve(count);
  for (std::uint64_t rank = 0; rank < count; ++rank) {
    const double a = static_cast<double>(rank) * width;
    parts.push_back(CoveringPart{lex_unrank(rank, 2, static_cast<std::size_t>(m)),
                                 image_box(curve, a, a + width, samples_per_interval), m});
  }
  return parts;
}

CoveringFamily covering_family(const CurveEvaluator& curve) {
  CoveringFamily fam;
  fam.name = curve.name;
  fam.arity = 2;
  fam.gamma = 1.0 / curve.holder_beta;
  fam.rho = curve.holder_rho;
  fam.part = [curve](const MultiIndex& index) {
    if (index.arity() != 2) throw InvalidIndexError("dyadic coverings have arity 2");
    const double a = dyadic_start(index);
    const double b = a + std::ldexp(1.0, -static_cast<int>(index.size()));
    return CoveringPart{index, image_box(curve, a, b, 1024), static_cast<int>(index.size())};
  };
  fam.level = [curve](int m, std::size_t budget) {
    return holder_dyadic_covering(curve, m, 1024, budget);
  };
  fam.samples = [curve](int depth, std::size_t budget) {
    const std::uint64_t count = checked_count(2, static_cast<std::size_t>(depth), budget);
    std::vector<Vec2> pts;
    pts.reserve(count + 1);
    for (std::uint64_t k = 0; k <= count; ++k) {
      pts.push_back(curve.eval(static_cast<double>(k) / static_cast<double>(count)));
    }
    return pts;
  };
  return fam;
}

std::vector<std::string> zoo_names() {
  return {"sierpinski", "hilbert-square", "koch",          "minkowski",
          "unit-interval", "holder-diag", "arrowhead-pseudo:<order>"};
}

std::optional<OrderedIFS> zoo_ifs(const std::string& name) {
  if (name == "sierpinski" || name == "gasket") return sierpinski_gasket(1.0);
  if (name == "hilbert-square") return hilbert_square();
  if (name == "koch") return koch_curve();
  if (name == "minkowski") return minkowski_sausage();
  if (name == "unit-interval") return unit_interval();
  return std::nullopt;
}

std::optional<CoveringFamily> zoo_family(const std::string& name) {
  if (auto ifs = zoo_ifs(name)) return covering_family(*ifs);
  if (name == "holder-diag") return covering_family(holder_diagonal());
  const std::string prefix = "arrowhead-pseudo:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string tail = name.substr(prefix.size());
    if (tail.empty() || tail.size() > 2 ||
        !std::all_of(tail.begin(), tail.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      return std::nullopt;
    }
    const int order = std::stoi(tail);
    if (order > 12) return std::nullopt;
    return covering_family(arrowhead_pseudo_curve(order));
  }
  return std::nullopt;
}

}  // namespace hbd
