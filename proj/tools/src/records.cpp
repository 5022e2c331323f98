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

#include "hbd_cli/records.hpp"

#include "hbd/error.hpp"

namespace hbd::cli {

namespace {

constexpr const char* kSchema = "hbdcover";

Vec2 parse_vec(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInputError("expected a 2-vector");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Json index_json(const MultiIndex& i) { return Json(i.entries()); }

MultiIndex parse_index(const Json& j, int arity) {
  return MultiIndex(arity, j.get<std::vector<int>>());
}

}  // namespace

Json vec_json(Vec2 p) { return Json::array({p.x, p.y}); }

Json manifest_json(const RunManifest& m) {
  Json j;
  j["command"] = m.command;
  j["seed"] = m.seed;
  j["parameters"] = m.parameters;
  j["input"] = m.input;
  j["output"] = m.output;
  j["version"] = kToolVersion;
  j["wall_time"] = m.wall_time;
  return j;
}

Json record_header(const std::string& kind) {
  Json j;
  j["schema"] = kSchema;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

std::string record_kind(const Json& record) {
  if (!record.is_object() || !record.contains("schema") || record["schema"] != kSchema) {
    throw InvalidInputError("not an hbdcover record");
  }
  if (!record.contains("schema_version") || record["schema_version"] != kSchemaVersion) {
    throw InvalidInputError("unsupported schema version");
  }
  if (!record.contains("kind") || !record["kind"].is_string()) {
    throw InvalidInputError("record has no kind");
  }
  return record["kind"].get<std::string>();
}

void expect_kind(const Json& record, const std::string& kind) {
  const std::string found = record_kind(record);
  if (found != kind) throw InvalidInputError("expected a " + kind + " record, found " + found);
}

Json covering_json(const CoveringFile& file) {
  Json j = record_header("covering");
  j["name"] = file.name;
  j["arity"] = file.arity;
  j["gamma"] = file.gamma;
  j["rho"] = file.rho;
  Json levels = Json::array();
  for (const auto& level : file.levels) {
    Json parts = Json::array();
    int resolution = level.empty() ? 0 : level.front().resolution;
    for (const CoveringPart& p : level) {
      Json pj;
      pj["index"] = index_json(p.index);
      pj["corner"] = vec_json(p.corner());
      pj["side"] = p.side();
      pj["box"] = Json::array({p.box.lo.x, p.box.lo.y, p.box.hi.x, p.box.hi.y});
      pj["resolution"] = p.resolution;
      parts.push_back(std::move(pj));
    }
    Json lj;
    lj["resolution"] = resolution;
    lj["parts"] = std::move(parts);
    levels.push_back(std::move(lj));
  }
  j["levels"] = std::move(levels);
  return j;
}

CoveringFile parse_covering(const Json& record) {
  expect_kind(record, "covering");
  try {
    CoveringFile f;
    f.name = record.at("name").get<std::string>();
    f.arity = record.at("arity").get<int>();
    f.gamma = record.at("gamma").get<double>();
    f.rho = record.at("rho").get<double>();
    if (f.arity < 2) throw InvalidInputError("arity must be at least 2");
    for (const Json& lj : record.at("levels")) {
      const int resolution = lj.at("resolution").get<int>();
      std::vector<CoveringPart> level;
      for (const Json& pj : lj.at("parts")) {
        CoveringPart p;
        p.index = parse_index(pj.at("index"), f.arity);
        p.resolution = pj.value("resolution", resolution);
        if (pj.contains("box")) {
          const auto b = pj["box"].get<std::vector<double>>();
          if (b.size() != 4) throw InvalidInputError("box needs four numbers");
          p.box = {{b[0], b[1]}, {b[2], b[3]}};
        } else {
          p.box = Box::square(parse_vec(pj.at("corner")), pj.at("side").get<double>());
        }
        level.push_back(std::move(p));
      }
      f.levels.push_back(std::move(level));
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("malformed covering record: ") + e.what());
  }
}

Json tagged_covering_json(const TaggedCovering& cov) {
  Json j = record_header("tagged-covering");
  j["name"] = cov.name;
  j["arity"] = cov.arity;
  j["gamma"] = cov.gamma;
  j["rho"] = cov.rho;
  j["tau"] = cov.tau;
  j["bigN"] = cov.big_n;
  j["D"] = cov.big_d;
  j["s"] = cov.s;
  j["t"] = cov.t;
  j["q"] = cov.q;
  Json squares = Json::array();
  for (const TaggedSquare& sq : cov.squares) {
    Json sj;
    sj["k"] = sq.k;
    sj["tag"] = vec_json(sq.tag);
    sj["side"] = sq.side;
    sj["rank"] = sq.rank;
    sj["stage"] = sq.stage;
    sj["covered_index"] = index_json(sq.covered_index);
    squares.push_back(std::move(sj));
  }
  j["squares"] = std::move(squares);
  Json groups = Json::array();
  for (const FinenessGroup& g : cov.groups) {
    Json gj;
    gj["rank"] = g.rank;
    gj["fineness"] = g.fineness;
    gj["ordinal"] = g.ordinal;
    gj["k_from"] = g.k_from;
    gj["k_to"] = g.k_to;
    groups.push_back(std::move(gj));
  }
  j["groups"] = std::move(groups);
  j["pending_after_stage"] = cov.pending_after_stage;
  return j;
}

TaggedCovering parse_tagged_covering(const Json& record) {
  expect_kind(record, "tagged-covering");
  try {
    TaggedCovering cov;
    cov.name = record.at("name").get<std::string>();
    cov.arity = record.at("arity").get<int>();
    cov.gamma = record.at("gamma").get<double>();
    cov.rho = record.at("rho").get<double>();
    cov.tau = record.at("tau").get<double>();
    cov.big_n = record.at("bigN").get<std::int64_t>();
    cov.big_d = record.at("D").get<double>();
    cov.s = record.at("s").get<int>();
    cov.t = record.at("t").get<int>();
    cov.q = record.at("q").get<std::uint64_t>();
    if (cov.arity < 2 || cov.big_n < 1 || !(cov.gamma > 0.0) || !(cov.tau > 0.0)) {
      throw InvalidInputError("tagged covering has invalid constants");
    }
    for (const Json& sj : record.at("squares")) {
      TaggedSquare sq;
      sq.k = sj.at("k").get<std::uint64_t>();
      sq.tag = parse_vec(sj.at("tag"));
      sq.side = sj.at("side").get<double>();
      sq.rank = sj.value("rank", 0);
      sq.stage = sj.value("stage", 0);
      if (sj.contains("covered_index")) sq.covered_index = parse_index(sj["covered_index"], cov.arity);
      cov.squares.push_back(std::move(sq));
    }
    for (const Json& gj : record.value("groups", Json::array())) {
      FinenessGroup g;
      g.rank = gj.at("rank").get<int>();
      g.fineness = gj.at("fineness").get<std::uint64_t>();
      g.ordinal = gj.at("ordinal").get<std::uint64_t>();
      g.k_from = gj.at("k_from").get<std::uint64_t>();
      g.k_to = gj.at("k_to").get<std::uint64_t>();
      cov.groups.push_back(g);
    }
    cov.pending_after_stage =
        record.value("pending_after_stage", std::vector<std::uint64_t>{});
    return cov;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("malformed tagged-covering record: ") + e.what());
  }
}

Json hbd_report_json(const HbdReport& report) {
  Json j = record_header("hbd-report");
  j["name"] = report.name;
  j["gamma"] = report.gamma;
  j["rho"] = report.rho;
  j["max_resolution"] = report.max_resolution;
  j["pass"] = report.pass();
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) {
    Json cj;
    cj["condition"] = condition_label(c.condition);
    cj["m"] = c.resolution;
    cj["pass"] = c.pass;
    if (c.counterexample) {
      Json ce;
      Json idx = Json::array();
      for (const MultiIndex& i : c.counterexample->indices) idx.push_back(i.to_string());
      ce["indices"] = std::move(idx);
      ce["values"] = c.counterexample->values;
      ce["detail"] = c.counterexample->detail;
      cj["counterexample"] = std::move(ce);
    }
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

Json separation_json(const SeparationReport& report) {
  Json j;
  j["q"] = report.q;
  j["pairs_checked"] = report.pairs_checked;
  j["worst_ratio"] = report.worst_ratio;
  j["worst_pair"] = Json::array({report.worst_j, report.worst_l});
  j["sampled"] = report.sampled;
  j["pass"] = report.pass();
  if (report.first_violation) {
    j["first_violation"] = Json::array({report.first_violation->first, report.first_violation->second});
  }
  return j;
}

Json jump_json(const JumpLemmaReport& report) {
  Json j;
  j["resolution"] = report.resolution;
  j["pairs_checked"] = report.pairs_checked;
  j["pass"] = report.pass();
  if (report.counterexample) {
    const auto& ce = *report.counterexample;
    Json cj;
    cj["j"] = ce.j.to_string();
    cj["l"] = ce.l.to_string();
    cj["n"] = ce.n;
    cj["distance"] = ce.distance;
    cj["count"] = ce.count;
    cj["required"] = ce.required;
    j["counterexample"] = std::move(cj);
  }
  return j;
}

Json dynamics_json(const DynamicsReport& r) {
  Json j = record_header("dynamics-report");
  Json config;
  config["fractal"] = r.fractal;
  config["family"] = r.family;
  config["alpha"] = r.alpha;
  config["gamma"] = r.gamma;
  config["alpha_within_inverse_gamma"] = r.alpha_within;
  config["interval"] = Json::array({r.interval.lo, r.interval.hi});
  config["d"] = r.d;
  config["s"] = r.s;
  config["t"] = r.t;
  config["truncation"] = r.truncation;
  config["cs1_D"] = r.cs1_d;
  j["config"] = std::move(config);
  j["eta"] = r.eta;
  j["N"] = r.big_n;
  j["kappa"] = r.kappa;
  j["q"] = r.q;
  j["tail_sum"] = r.tail;
  Json map;
  map["scale"] = r.sigma;
  map["anchor"] = vec_json(r.anchor);
  map["offset"] = vec_json(r.offset);
  map["tau"] = r.tau;
  map["D"] = r.mapped_d;
  j["parameter_map"] = std::move(map);
  j["cs2_bound"] = r.cs2_bound;
  j["separation_worst_ratio"] = r.separation_worst;
  j["separation_pass"] = r.separation_pass;
  j["distance_u_u0"] = r.distance;
  j["certificate"] = r.certificate;
  j["worst_universality_error"] = r.universality.worst_error;
  Json where;
  where["i"] = r.universality.worst_i;
  where["lambda"] = vec_json(r.universality.worst_lambda);
  j["worst_location"] = std::move(where);
  j["worst_at_tags"] = r.universality.worst_at_tag;
  j["universality_bound"] = r.universality.bound;
  j["samples"] = r.universality.samples;
  j["min_samples_per_square"] = r.universality.min_samples_per_square;
  j["cs1_pass"] = r.cs1.pass();
  Json cs1;
  cs1["precondition_ok"] = r.cs1.precondition_ok;
  cs1["bounds_pass"] = r.cs1.bounds_pass;
  cs1["worst_ratio"] = r.cs1.worst_ratio;
  cs1["decay_a"] = r.cs1.decay_a;
  cs1["decay_b"] = r.cs1.decay_b;
  cs1["ratio_margin"] = r.cs1.ratio_margin;
  cs1["summable"] = r.cs1.summable;
  j["cs1"] = std::move(cs1);
  j["cs2_pass"] = r.cs2.pass;
  Json cs2;
  cs2["measured"] = r.cs2.measured;
  cs2["bound"] = r.cs2.bound;
  cs2["worst"] = Json::array({r.cs2.worst_x, r.cs2.worst_y, r.cs2.worst_n});
  cs2["samples"] = r.cs2.samples;
  j["cs2"] = std::move(cs2);
  j["pass"] = r.pass();
  return j;
}

}  // namespace hbd::cli
