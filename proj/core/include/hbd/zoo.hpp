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

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hbd/geometry.hpp"

namespace hbd {

/// Sierpiński gasket of side `side`, barycentre at the origin, with the three
/// maps ordered along the arrowhead curve (bottom-left, top, bottom-right).
OrderedIFS sierpinski_gasket(double side = 1.0);

/// Unit square [-1/2, 1/2]^2 ordered along the pseudo-Hilbert curves.
OrderedIFS hilbert_square();

/// Von Koch curve on the segment [0,1] with the classical 60-degree seed.
/// The base is the triangle (0,0), (1,0), (1/2, sqrt(3)/6).
OrderedIFS koch_curve();

/// Minkowski sausage on [0,1]: eight maps of ratio 1/4 along the seed path,
/// the long middle edge split into two. The base is the square with
/// diagonal [0,1] x {0}.
OrderedIFS minkowski_sausage();

/// The segment [0,1] x {0} as the attractor of x -> x/2 and x -> x/2 + 1/2.
OrderedIFS unit_interval();

/// Maps a polygonal seed path (first point (0,0), last point (1,0)) to one
/// orientation-preserving similarity per edge, in path order.
std::vector<Similarity> seed_similarities(const std::vector<Vec2>& path);

// A parameterised curve f : [0,1] -> R^2 with a Hölder certificate
// |f(x) - f(y)| <= holder_rho |x - y|^holder_beta.
struct CurveEvaluator {
  std::string name;
  std::function<Vec2(double)> eval;
  double holder_beta = 1.0;
  double holder_rho = 1.0;
  // Parameters where the curve may bend (polygonal curves). When non-empty,
  // image boxes are exact: the box of f(I) is spanned by f at the ends of I
  // and at the knots inside I.
  std::vector<double> knots;
};

/// f(t) = (t, t), Lipschitz with beta = 1 and rho = 1 in the max norm.
CurveEvaluator holder_diagonal();

/// Order-n polygonal approximant of the attractor curve of `ifs`, through the
/// points phi_i(start) for i in I_r^n (lexicographic) and finally `end`.
/// Every segment has length proportional to r^{-n}, so the uniform
/// parameterisation is the arc-length one.
CurveEvaluator pseudo_curve(const OrderedIFS& ifs, int order, Vec2 start, Vec2 end, double beta,
                            double rho);

/// Pseudo-arrowhead curve of the given order, beta = log 2 / log 3, rho = 4.
CurveEvaluator arrowhead_pseudo_curve(int order);

/// Parts f(I_i) over the dyadic intervals I_i, i in {1,2}^m, in dyadic
/// lexicographic order. Without knots, each interval is sampled at
/// `samples_per_interval` evenly spaced parameters (ends included).
std::vector<CoveringPart> holder_dyadic_covering(const CurveEvaluator& curve, int m,
                                                 std::size_t samples_per_interval = 1024,
                                                 std::size_t budget = kDefaultPartBudget);

CoveringFamily covering_family(const CurveEvaluator& curve);

/// Zoo registry: "sierpinski", "hilbert-square", "koch", "minkowski",
/// "unit-interval", "holder-diag", "arrowhead-pseudo:<order>".
std::vector<std::string> zoo_names();
std::optional<CoveringFamily> zoo_family(const std::string& name);
std::optional<OrderedIFS> zoo_ifs(const std::string& name);

}  // namespace hbd
