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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hbd {

// Absolute tolerance used by every containment and intersection predicate.
inline constexpr double kGeometryTolerance = 1e-9;

// Default ceiling on the number of parts any single enumeration may produce.
inline constexpr std::size_t kDefaultPartBudget = 1'000'000;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

double max_norm(Vec2 v);
double euclidean_norm(Vec2 v);

// Closed axis-aligned box [lo.x, hi.x] x [lo.y, hi.y].
struct Box {
  Vec2 lo;
  Vec2 hi;

  static Box bounding(std::span<const Vec2> points);
  // Square [corner, corner + side]^2.
  static Box square(Vec2 corner, double side);

  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  // Max-norm diameter of the box.
  double side() const;
  Vec2 center() const { return {(lo.x + hi.x) / 2, (lo.y + hi.y) / 2}; }

  bool contains(const Box& inner, double tol = kGeometryTolerance) const;
  bool contains(Vec2 p, double tol = kGeometryTolerance) const;
  bool intersects(const Box& other, double tol = kGeometryTolerance) const;
};

// Planar affine map p -> A p + t, used to compose similarities.
struct Affine {
  double a = 1, b = 0, c = 0, d = 1;
  Vec2 t;

  Vec2 apply(Vec2 p) const { return {a * p.x + b * p.y + t.x, c * p.x + d * p.y + t.y}; }
  // (*this) o inner
  Affine then_inner(const Affine& inner) const;
};

// z -> shift + ratio * e^{i angle} * (reflect ? conj(z) : z).
class Similarity {
 public:
  Similarity(double ratio, double angle, bool reflect, Vec2 shift);

  double ratio() const { return ratio_; }
  double angle() const { return angle_; }
  bool reflect() const { return reflect_; }
  Vec2 shift() const { return shift_; }
  const Affine& affine() const { return affine_; }

  Vec2 apply(Vec2 p) const { return affine_.apply(p); }
  Vec2 fixed_point() const;

 private:
  double ratio_;
  double angle_;
  bool reflect_;
  Vec2 shift_;
  Affine affine_;
};

Vec2 apply_similarity(const Similarity& map, Vec2 point);

// Word (i_1, ..., i_m) over the alphabet {1, ..., arity}.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(int arity, std::vector<int> entries);

  int arity() const { return arity_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  int operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<int>& entries() const { return entries_; }

  MultiIndex prefix(std::size_t length) const;
  MultiIndex appended(int j) const;
  MultiIndex concat(const MultiIndex& tail) const;
  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  // Lexicographic order; only meaningful for equal arity.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  int arity_ = 2;
  std::vector<int> entries_;
};

// Sum_j (i_j - 1) r^{m-j}.
std::uint64_t lex_rank(const MultiIndex& index);
MultiIndex lex_unrank(std::uint64_t rank, int arity, std::size_t length);
// r^m, throwing BudgetExceededError when it exceeds `budget`.
std::uint64_t checked_count(int arity, std::size_t length, std::size_t budget);

enum class BaseShape { square, triangle, diamond, segment };
std::string to_string(BaseShape shape);

// Convex compact base set given by its vertices.
struct BaseSet {
  BaseShape shape;
  std::vector<Vec2> vertices;
};

// Uniformly contracting ordered IFS; the order of `maps` defines the
// lexicographic order of every covering it generates.
class OrderedIFS {
 public:
  OrderedIFS(std::string name, std::vector<Similarity> maps, BaseSet base, double gamma,
             double rho);

  const std::string& name() const { return name_; }
  const std::vector<Similarity>& maps() const { return maps_; }
  const BaseSet& base() const { return base_; }
  int arity() const { return static_cast<int>(maps_.size()); }
  double ratio() const { return maps_.front().ratio(); }
  double gamma() const { return gamma_; }
  double rho() const { return rho_; }

 private:
  std::string name_;
  std::vector<Similarity> maps_;
  BaseSet base_;
  double gamma_;
  double rho_;
};

// One part of a resolution-m covering. `box` is the tight bounding box of
// the true image; the part's bounding square and tag are derived from it.
struct CoveringPart {
  MultiIndex index;
  Box box;
  int resolution = 0;

  Vec2 corner() const { return box.lo; }
  double side() const { return box.side(); }
  Box square() const { return Box::square(box.lo, box.side()); }
};

CoveringPart compose_part(const OrderedIFS& ifs, const MultiIndex& index);

// All r^m parts in lexicographic order.
std::vector<CoveringPart> resolution_covering(const OrderedIFS& ifs, int m,
                                              std::size_t budget = kDefaultPartBudget);

// One attractor point per index of length `depth`, in lexicographic order:
// the image of the first map's fixed point, which lies on the attractor
// inside its part.
std::vector<Vec2> attractor_points(const OrderedIFS& ifs, int depth,
                                   std::size_t budget = kDefaultPartBudget);

// A nested family of coverings (one per resolution) with its HBD constants.
// Both IFS coverings and Hölder-curve coverings are exposed this way.
struct CoveringFamily {
  std::string name;
  int arity = 2;
  double gamma = 1.0;
  double rho = 1.0;
  std::function<CoveringPart(const MultiIndex&)> part;
  std::function<std::vector<CoveringPart>(int m, std::size_t budget)> level;
  // Attractor samples at a given depth (may be empty for families without
  // a cheap exact sampler).
  std::function<std::vector<Vec2>(int depth, std::size_t budget)> samples;

  double ratio() const;
};

CoveringFamily covering_family(const OrderedIFS& ifs);

}  // namespace hbd
