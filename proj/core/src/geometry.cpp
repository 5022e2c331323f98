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

#include "hbd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "hbd/error.hpp"

namespace hbd {

namespace {

// cos/sin of multiples of pi/2 come back as ~6e-17 instead of 0; snap them
// so dyadic constructions stay exact.
double snap(double v) {
  for (double target : {0.0, 1.0, -1.0, 0.5, -0.5}) {
    if (std::abs(v - target) < 1e-15) return target;
  }
  return v;
}

}  // namespace

double max_norm(Vec2 v) { return std::max(std::abs(v.x), std::abs(v.y)); }

double euclidean_norm(Vec2 v) { return std::hypot(v.x, v.y); }

Box Box::bounding(std::span<const Vec2> points) {
  if (points.empty()) throw InvalidInputError("bounding box of an empty point set");
  Box b{points.front(), points.front()};
  for (const Vec2& p : points.subspan(1)) {
    b.lo.x = std::min(b.lo.x, p.x);
    b.lo.y = std::min(b.lo.y, p.y);
    b.hi.x = std::max(b.hi.x, p.x);
    b.hi.y = std::max(b.hi.y, p.y);
  }
  return b;
}

Box Box::square(Vec2 corner, double side) { return {corner, {corner.x + side, corner.y + side}}; }

double Box::side() const { return std::max(width(), height()); }

bool Box::contains(const Box& inner, double tol) const {
  return inner.lo.x >= lo.x - tol && inner.lo.y >= lo.y - tol && inner.hi.x <= hi.x + tol &&
         inner.hi.y <= hi.y + tol;
}

bool Box::contains(Vec2 p, double tol) const {
  return p.x >= lo.x - tol && p.x <= hi.x + tol && p.y >= lo.y - tol && p.y <= hi.y + tol;
}

bool Box::intersects(const Box& other, double tol) const {
  return lo.x <= other.hi.x + tol && other.lo.x <= hi.x + tol && lo.y <= other.hi.y + tol &&
         other.lo.y <= hi.y + tol;
}

Affine Affine::then_inner(const Affine& in) const {
  Affine out;
  out.a = a * in.a + b * in.c;
  out.b = a * in.b + b * in.d;
  out.c = c * in.a + d * in.c;
  out.d = c * in.b + d * in.d;
  out.t = apply(in.t);
  return out;
}

Similarity::Similarity(double ratio, double angle, bool reflect, Vec2 shift)
    : ratio_(ratio), angle_(angle), reflect_(reflect), shift_(shift) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw InvalidInputError("similarity ratio must lie in (0,1)");
  }
  const double cs = snap(std::cos(angle));
  const double sn = snap(std::sin(angle));
  // Rotation after the optional conjugation (x, y) -> (x, -y).
  const double flip = reflect ? -1.0 : 1.0;
  affine_.a = ratio * cs;
  affine_.b = -ratio * sn * flip;
  affine_.c = ratio * sn;
  affine_.d = ratio * cs * flip;
  affine_.t = shift;
}

Vec2 Similarity::fixed_point() const {
  // (I - A) p = t
  const Affine& m = affine_;
  const double a = 1.0 - m.a, b = -m.b, c = -m.c, d = 1.0 - m.d;
  const double det = a * d - b * c;
  return {(d * m.t.x - b * m.t.y) / det, (a * m.t.y - c * m.t.x) / det};
}

Vec2 apply_similarity(const Similarity& map, Vec2 point) { return map.apply(point); }

MultiIndex::MultiIndex(int arity, std::vector<int> entries)
    : arity_(arity), entries_(std::move(entries)) {
  if (arity < 2) throw InvalidInputError("multi-index arity must be at least 2");
  for (int e : entries_) {
    if (e < 1 || e > arity) {
      throw InvalidIndexError("multi-index entry " + std::to_string(e) + " outside {1.." +
                              std::to_string(arity) + "}");
    }
  }
}

MultiIndex MultiIndex::prefix(std::size_t length) const {
  return MultiIndex(arity_, std::vector<int>(entries_.begin(),
                                             entries_.begin() + std::min(length, size())));
}

MultiIndex MultiIndex::appended(int j) const {
  std::vector<int> e = entries_;
  e.push_back(j);
  return MultiIndex(arity_, std::move(e));
}

MultiIndex MultiIndex::concat(const MultiIndex& tail) const {
  std::vector<int> e = entries_;
  e.insert(e.end(), tail.entries_.begin(), tail.entries_.end());
  return MultiIndex(arity_, std::move(e));
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j) os << ',';
    os << entries_[j];
  }
  os << ')';
  return os.str();
}

std::uint64_t lex_rank(const MultiIndex& index) {
  std::uint64_t rank = 0;
  for (int e : index.entries()) {
    rank = rank * static_cast<std::uint64_t>(index.arity()) + static_cast<std::uint64_t>(e - 1);
  }
  return rank;
}

MultiIndex lex_unrank(std::uint64_t rank, int arity, std::size_t length) {
  std::vector<int> e(length, 1);
  const auto r = static_cast<std::uint64_t>(arity);
  for (std::size_t j = length; j-- > 0;) {
    e[j] = static_cast<int>(rank % r) + 1;
    rank /= r;
  }
  if (rank != 0) throw InvalidIndexError("rank out of range for the requested length");
  return MultiIndex(arity, std::move(e));
}

std::uint64_t checked_count(int arity, std::size_t length, std::size_t budget) {
  std::uint64_t count = 1;
  for (std::size_t j = 0; j < length; ++j) {
    if (count > budget / static_cast<std::uint64_t>(arity)) {
      throw BudgetExceededError(std::to_string(arity) + "^" + std::to_string(length) +
                                " parts exceed the part budget of " + std::to_string(budget));
    }
    count *= static_cast<std::uint64_t>(arity);
  }
  if (count > budget) {
    throw BudgetExceededError("part count exceeds the part budget of " + std::to_string(budget));
  }
  return count;
}

std::string to_string(BaseShape shape) {
  switch (shape) {
    case BaseShape::square: return "square";
    case BaseShape::triangle: return "triangle";
    case BaseShape::diamond: return "diamond";
    case BaseShape::segment: return "segment";
  }
  return "unknown";
}

OrderedIFS::OrderedIFS(std::string name, std::vector<Similarity> maps, BaseSet base, double gamma,
                       double rho)
    : name_(std::move(name)), maps_(std::move(maps)), base_(std::move(base)), gamma_(gamma),
      rho_(rho) {
  if (maps_.size() < 2) throw InvalidInputError("an ordered IFS needs at least two maps");
  if (base_.vertices.empty()) throw InvalidInputError("empty base set");
  if (!(gamma_ > 0.0) || !(rho_ > 0.0)) throw InvalidInputError("gamma and rho must be positive");
  const double c = maps_.front().ratio();
  for (const Similarity& m : maps_) {
    if (std::abs(m.ratio() - c) > 1e-12) {
      throw InvalidInputError("non-uniform contraction ratios are not supported");
    }
  }
  const Box base_box = Box::bounding(base_.vertices);
  for (const Similarity& m : maps_) {
    std::vector<Vec2> image;
    image.reserve(base_.vertices.size());
    for (Vec2 v : base_.vertices) image.push_back(m.apply(v));
    if (!base_box.contains(Box::bounding(image))) {
      throw InvalidInputError("map image of the base escapes the base bounding box");
    }
  }
}

namespace {

CoveringPart part_from_affine(const OrderedIFS& ifs, const Affine& map, MultiIndex index) {
  const auto& verts = ifs.base().vertices;
  std::vector<Vec2> image;
  image.reserve(verts.size());
  for (Vec2 v : verts) image.push_back(map.apply(v));
  const int m = static_cast<int>(index.size());
  return CoveringPart{std::move(index), Box::bounding(image), m};
}

// Depth-first walk over I_r^m in lexicographic order, composing maps so that
// the leaf for (i_1..i_m) holds phi_{i_1} o ... o phi_{i_m}.
template <typename Visit>
void walk(const OrderedIFS& ifs, int m, const Affine& acc, std::vector<int>& word, Visit&& visit) {
  if (static_cast<int>(word.size()) == m) {
    visit(acc, word);
    return;
  }
  for (int j = 1; j <= ifs.arity(); ++j) {
    word.push_back(j);
    walk(ifs, m, acc.then_inner(ifs.maps()[j - 1].affine()), word, visit);
    word.pop_back();
  }
}

}  // namespace

CoveringPart compose_part(const OrderedIFS& ifs, const MultiIndex& index) {
  if (index.arity() != ifs.arity()) {
    throw InvalidIndexError("multi-index arity does not match the IFS");
  }
  Affine acc;
  for (int e : index.entries()) acc = acc.then_inner(ifs.maps()[e - 1].affine());
  return part_from_affine(ifs, acc, index);
}

std::vector<CoveringPart> resolution_covering(const OrderedIFS& ifs, int m, std::size_t budget) {
  if (m < 0) throw InvalidInputError("resolution must be non-negative");
  std::vector<CoveringPart> parts;
  parts.reserve(checked_count(ifs.arity(), static_cast<std::size_t>(m), budget));
  std::vector<int> word;
  walk(ifs, m, Affine{}, word, [&](const Affine& acc, const std::vector<int>& w) {
    parts.push_back(part_from_affine(ifs, acc, MultiIndex(ifs.arity(), w)));
  });
  return parts;
}

std::vector<Vec2> attractor_points(const OrderedIFS& ifs, int depth, std::size_t budget) {
  if (depth < 1) throw InvalidInputError("attractor sampling depth must be at least 1");
  std::vector<Vec2> points;
  points.reserve(checked_count(ifs.arity(), static_cast<std::size_t>(depth), budget));
  const Vec2 seed = ifs.maps().front().fixed_point();
  std::vector<int> word;
  walk(ifs, depth, Affine{}, word,
       [&](const Affine& acc, const std::vector<int>&) { points.push_back(acc.apply(seed)); });
  return points;
}

double CoveringFamily::ratio() const { return std::pow(static_cast<double>(arity), -1.0 / gamma); }

CoveringFamily covering_family(const OrderedIFS& ifs) {
  CoveringFamily fam;
  fam.name = ifs.name();
  fam.arity = ifs.arity();
  fam.gamma = ifs.gamma();
  fam.rho = ifs.rho();
  fam.part = [ifs](const MultiIndex& index) { return compose_part(ifs, index); };
  fam.level = [ifs](int m, std::size_t budget) { return resolution_covering(ifs, m, budget); };
  fam.samples = [ifs](int depth, std::size_t budget) {
    return attractor_points(ifs, depth, budget);
  };
  return fam;
}

}  // namespace hbd
