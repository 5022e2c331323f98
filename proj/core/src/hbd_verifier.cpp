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

#include "hbd/hbd_verifier.hpp"

#include <cmath>

#include "hbd/error.hpp"

namespace hbd {

std::string condition_label(Condition c) {
  switch (c) {
    case Condition::diameters: return "i";
    case Condition::nesting: return "ii";
    case Condition::adjacency: return "iii";
  }
  return "?";
}

namespace {

int common_resolution(std::span<const CoveringPart> covering) {
  if (covering.empty()) throw InvalidInputError("empty covering");
  const int m = covering.front().resolution;
  for (const CoveringPart& p : covering) {
    if (p.resolution != m) throw InvalidInputError("covering mixes resolutions");
  }
  return m;
}

}  // namespace

CheckResult check_diameters(std::span<const CoveringPart> covering, double rho, double c) {
  const int m = common_resolution(covering);
  CheckResult res{Condition::diameters, m, true, std::nullopt};
  const double bound = rho * std::pow(c, m);
  for (const CoveringPart& p : covering) {
    if (p.side() > bound + kGeometryTolerance) {
      res.pass = false;
      res.counterexample = Counterexample{{p.index}, {p.side(), bound}, "side exceeds rho*c^m"};
      break;
    }
  }
  return res;
}

CheckResult check_nesting(std::span<const CoveringPart> parent, std::span<const CoveringPart> child,
                          int arity) {
  const int m = common_resolution(parent);
  const int m1 = common_resolution(child);
  if (m1 != m + 1) throw InvalidInputError("child covering must have resolution m+1");
  if (child.size() != parent.size() * static_cast<std::size_t>(arity)) {
    throw InvalidInputError("child covering must have r times as many parts");
  }
  CheckResult res{Condition::nesting, m1, true, std::nullopt};
  for (std::size_t k = 0; k < child.size(); ++k) {
    const CoveringPart& p = parent[k / static_cast<std::size_t>(arity)];
    const CoveringPart& ch = child[k];
    if (ch.index.prefix(p.index.size()) != p.index) {
      res.pass = false;
      res.counterexample = Counterexample{{p.index, ch.index}, {}, "child is not a refinement of its parent"};
      break;
    }
    if (!p.box.contains(ch.box)) {
      res.pass = false;
      res.counterexample = Counterexample{
          {p.index, ch.index},
          {ch.box.lo.x, ch.box.lo.y, ch.box.hi.x, ch.box.hi.y},
          "child box escapes its parent box"};
      break;
    }
  }
  return res;
}

CheckResult check_adjacency(std::span<const CoveringPart> covering, int arity) {
  const int m = common_resolution(covering);
  if (m < 2) throw InvalidInputError("adjacency needs resolution at least 2");
  const auto r = static_cast<std::size_t>(arity);
  if (covering.size() % (r * r) != 0) throw InvalidInputError("covering size is not r^m");
  CheckResult res{Condition::adjacency, m, true, std::nullopt};
  // Parts (i, a, b) sit at offset base + (a-1) r + (b-1).
  for (std::size_t base = 0; base < covering.size(); base += r * r) {
    for (std::size_t j = 2; j <= r; ++j) {
      const CoveringPart& last = covering[base + (j - 2) * r + (r - 1)];
      const CoveringPart& first = covering[base + (j - 1) * r];
      if (!last.box.intersects(first.box)) {
        res.pass = false;
        res.counterexample = Counterexample{{last.index, first.index}, {}, "consecutive parts are disjoint"};
        return res;
      }
    }
  }
  return res;
}

bool HbdReport::passes(Condition c) const {
  for (const CheckResult& r : checks) {
    if (r.condition == c && !r.pass) return false;
  }
  return true;
}

bool HbdReport::pass() const {
  return passes(Condition::diameters) && passes(Condition::nesting) &&
         passes(Condition::adjacency);
}

const CheckResult* HbdReport::first_failure() const {
  for (const CheckResult& r : checks) {
    if (!r.pass) return &r;
  }
  return nullptr;
}

HbdReport hbd_report(const std::string& name, int arity,
                     const std::vector<std::vector<CoveringPart>>& levels, double gamma,
                     double rho) {
  if (levels.empty()) throw InvalidInputError("no covering levels supplied");
  if (!(gamma > 0.0)) throw InvalidInputError("gamma must be positive");
  const double c = std::pow(static_cast<double>(arity), -1.0 / gamma);
  HbdReport report{name, gamma, rho, common_resolution(levels.back()), {}};
  for (const auto& level : levels) report.checks.push_back(check_diameters(level, rho, c));
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    report.checks.push_back(check_nesting(levels[k], levels[k + 1], arity));
  }
  for (const auto& level : levels) {
    if (common_resolution(level) >= 2) report.checks.push_back(check_adjacency(level, arity));
  }
  return report;
}

HbdReport hbd_report(const CoveringFamily& family, double gamma, double rho, int max_resolution,
                     std::size_t budget) {
  if (max_resolution < 1) throw InvalidInputError("max resolution must be at least 1");
  std::vector<std::vector<CoveringPart>> levels;
  for (int m = 1; m <= max_resolution; ++m) levels.push_back(family.level(m, budget));
  HbdReport report = hbd_report(family.name, family.arity, levels, gamma, rho);
  return report;
}

}  // namespace hbd
