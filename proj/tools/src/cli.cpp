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

#include "hbd_cli/cli.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "hbd/covering_builder.hpp"
#include "hbd/covering_verifier.hpp"
#include "hbd/error.hpp"
#include "hbd/hbd_verifier.hpp"
#include "hbd/shift_dynamics.hpp"
#include "hbd/weights.hpp"
#include "hbd/zoo.hpp"
#include "hbd_cli/records.hpp"
#include "hbd_cli/svg.hpp"

namespace hbd::cli {

std::size_t resolve_budget(std::optional<std::size_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HBD_COVER_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw InvalidInputError(std::string("HBD_COVER_BUDGET is not a positive integer: ") + env);
    }
    return static_cast<std::size_t>(v);
  }
  return kDefaultPartBudget;
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp =
      path.string() + ".tmp." + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidInputError("cannot write " + tmp.string());
    f << contents;
    f.flush();
    if (!f) {
      std::filesystem::remove(tmp);
      throw InvalidInputError("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

namespace {

struct Common {
  std::optional<std::size_t> budget;
  std::uint64_t seed = 1;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool with_out = true) {
  cmd->add_option("--budget", c.budget, "Maximum number of parts per enumeration")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "Random seed for sampled checks");
  if (with_out) cmd->add_option("--out", c.out, "Output file (stdout when omitted)");
}

Json load_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInputError(path + ": " + e.what());
  }
}

CoveringFamily family_by_name(const std::string& name) {
  auto fam = zoo_family(name);
  if (!fam) {
    std::string known;
    for (const auto& n : zoo_names()) known += (known.empty() ? "" : ", ") + n;
    throw InvalidInputError("unknown fractal '" + name + "' (known: " + known + ")");
  }
  return *fam;
}

class Emitter {
 public:
  Emitter(std::ostream& out, std::string command, const Common& common)
      : out_(out), start_(std::chrono::steady_clock::now()) {
    manifest_.command = std::move(command);
    manifest_.seed = common.seed;
    manifest_.output = common.out;
  }

  RunManifest& manifest() { return manifest_; }

  void emit(Json record, const std::string& summary) {
    manifest_.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    record["manifest"] = manifest_json(manifest_);
    const std::string text = record.dump(2) + "\n";
    if (manifest_.output.empty()) {
      out_ << text;
    } else {
      write_atomic(manifest_.output, text);
      out_ << summary << "\n";
    }
  }

 private:
  std::ostream& out_;
  RunManifest manifest_;
  std::chrono::steady_clock::time_point start_;
};

// zoo emit

struct ZooEmit {
  Common common;
  std::string name;
  int m = 0;
  bool all_levels = false;
};

int cmd_zoo_emit(const ZooEmit& o, std::ostream& out) {
  const CoveringFamily fam = family_by_name(o.name);
  const std::size_t budget = resolve_budget(o.common.budget);
  CoveringFile file{fam.name, fam.arity, fam.gamma, fam.rho, {}};
  for (int m = o.all_levels ? 0 : o.m; m <= o.m; ++m) file.levels.push_back(fam.level(m, budget));
  Emitter e(out, "zoo emit", o.common);
  e.manifest().parameters = {{"name", o.name}, {"m", o.m}, {"all_levels", o.all_levels},
                             {"budget", budget}};
  const std::size_t parts = file.levels.back().size();
  e.emit(covering_json(file), "wrote " + std::to_string(parts) + " parts (m=" +
                                  std::to_string(o.m) + ") to " + o.common.out);
  return kExitPass;
}

// verify-hbd

struct VerifyHbd {
  Common common;
  std::string name;
  std::string in;
  std::optional<double> gamma;
  std::optional<double> rho;
  std::optional<int> m;
};

int cmd_verify_hbd(const VerifyHbd& o, std::ostream& out, std::ostream& err) {
  const std::size_t budget = resolve_budget(o.common.budget);
  HbdReport report;
  Emitter e(out, "verify-hbd", o.common);
  if (!o.name.empty()) {
    const CoveringFamily fam = family_by_name(o.name);
    const int m = o.m.value_or(5);
    if (m < 1) throw InvalidInputError("--m must be at least 1");
    report = hbd_report(fam, o.gamma.value_or(fam.gamma), o.rho.value_or(fam.rho), m, budget);
  } else {
    CoveringFile file = parse_covering(load_json(o.in));
    e.manifest().input = o.in;
    if (o.m) {
      std::erase_if(file.levels, [&](const auto& level) {
        return !level.empty() && level.front().resolution > *o.m;
      });
    }
    std::erase_if(file.levels, [](const auto& level) {
      return level.empty() || level.front().resolution < 1;
    });
    if (file.levels.empty()) throw InvalidInputError("no level of resolution >= 1 in " + o.in);
    report = hbd_report(file.name, file.arity, file.levels, o.gamma.value_or(file.gamma),
                        o.rho.value_or(file.rho));
  }
  e.manifest().parameters = {{"name", o.name}, {"gamma", report.gamma}, {"rho", report.rho},
                             {"m", report.max_resolution}, {"budget", budget}};
  const bool pass = report.pass();
  if (const CheckResult* bad = report.first_failure()) {
    err << "condition (" << condition_label(bad->condition) << ") fails at m=" << bad->resolution;
    if (bad->counterexample) err << ": " << bad->counterexample->detail;
    err << "\n";
  }
  e.emit(hbd_report_json(report), std::string(pass ? "pass" : "FAIL") + ": " + report.name +
                                      " gamma=" + std::to_string(report.gamma));
  return pass ? kExitPass : kExitFail;
}

// cover build / verify

struct CoverBuild {
  Common common;
  std::string name;
  std::int64_t big_n = 1;
  std::optional<double> tau;
  std::optional<double> big_d;
  std::optional<int> s;
};

int cmd_cover_build(const CoverBuild& o, std::ostream& out) {
  const CoveringFamily fam = family_by_name(o.name);
  const std::size_t budget = resolve_budget(o.common.budget);
  if (o.big_n < 1) throw InvalidInputError("--bigN must be at least 1");
  const double c = fam.ratio();
  const double big_d = o.big_d.value_or(fam.rho / std::pow(c, 3));
  BuilderParams params;
  if (o.tau && !o.s) {
    const Normalization norm = normalize_tau(*o.tau, o.big_n, fam.rho, c, fam.arity, 1.0 / fam.gamma);
    params = BuilderParams::stage_fit(fam, norm.s, o.big_n, big_d);
  } else {
    params = BuilderParams::stage_fit(fam, o.s.value_or(1), o.big_n, big_d);
    if (o.tau) params.tau = *o.tau;
  }
  const TaggedCovering cov = build_tagged_covering(fam, params, budget);
  Emitter e(out, "cover build", o.common);
  e.manifest().parameters = {{"name", o.name}, {"bigN", o.big_n}, {"tau", params.tau},
                             {"D", big_d}, {"s", params.s}, {"budget", budget}};
  e.emit(tagged_covering_json(cov), "wrote tagged covering q=" + std::to_string(cov.q) +
                                        " (s=" + std::to_string(cov.s) + ", t=" +
                                        std::to_string(cov.t) + ") to " + o.common.out);
  return kExitPass;
}

struct CoverVerify {
  Common common;
  std::string in;
  std::optional<double> big_d;
};

int cmd_cover_verify(const CoverVerify& o, std::ostream& out, std::ostream& err) {
  const std::size_t budget = resolve_budget(o.common.budget);
  const TaggedCovering cov = parse_tagged_covering(load_json(o.in));
  const double big_d = o.big_d.value_or(cov.big_d);
  if (!(big_d > 0.0)) throw InvalidInputError("--D must be positive");

  Json rec = record_header("cover-report");
  rec["name"] = cov.name;
  rec["q"] = cov.q;
  rec["D"] = big_d;
  bool pass = true;

  const FormResult form = verify_form(cov);
  rec["form"] = {{"pass", form.pass}, {"expected", form.expected}, {"actual", form.actual}};
  if (form.first_bad_k) rec["form"]["first_bad_k"] = *form.first_bad_k;
  pass = pass && form.pass;
  if (!form.pass) err << "form check fails at k=" << form.first_bad_k.value_or(0) << "\n";

  SeparationOptions sep_opts;
  sep_opts.seed = o.common.seed;
  const SeparationReport sep = verify_separation(cov, big_d, cov.gamma, sep_opts);
  rec["separation"] = separation_json(sep);
  pass = pass && sep.pass();
  if (!sep.pass()) {
    err << "separation fails: worst ratio " << sep.worst_ratio << " at (j,l)=(" << sep.worst_j
        << "," << sep.worst_l << ")\n";
  }

  if (auto fam = zoo_family(cov.name)) {
    int depth = cov.s + cov.t + 1;
    while (depth > 1 && std::pow(static_cast<double>(fam->arity), depth) > static_cast<double>(budget)) --depth;
    const auto points = fam->samples ? fam->samples(depth, budget) : std::vector<Vec2>{};
    const CoverageReport coverage = verify_coverage(cov, points);
    rec["coverage"] = {{"points", coverage.points}, {"uncovered", coverage.uncovered},
                       {"pass", coverage.pass()}};
    pass = pass && coverage.pass();
    if (!coverage.pass()) err << coverage.uncovered << " attractor samples are not covered\n";

    const bool contained = verify_containment(cov, *fam);
    rec["containment"] = {{"pass", contained}};
    pass = pass && contained;
    if (!contained) err << "some square does not contain the part it covers\n";

    // Exhaustive pair scan; keep it near 10^7 pairs.
    int m = cov.s + cov.t;
    while (m > 1 && std::pow(static_cast<double>(fam->arity), 2.0 * m) > 1e7) --m;
    const JumpLemmaReport jump = verify_jump_lemma(*fam, m, budget);
    rec["jump_lemma"] = jump_json(jump);
    pass = pass && jump.pass();
    if (!jump.pass()) err << "jump counting fails at resolution " << m << "\n";
  } else {
    rec["note"] = "fractal not in the zoo; coverage, containment and jump checks skipped";
  }
  rec["pass"] = pass;

  Emitter e(out, "cover verify", o.common);
  e.manifest().input = o.in;
  e.manifest().parameters = {{"D", big_d}, {"budget", budget}};
  e.emit(std::move(rec), std::string(pass ? "pass" : "FAIL") + ": " + cov.name + " q=" +
                             std::to_string(cov.q));
  return pass ? kExitPass : kExitFail;
}

// dyn

struct Dyn {
  Common common;
  std::string name;
  std::string family = "rolewicz";
  std::vector<double> interval{1.0, 2.0};
  double alpha = 0.5;
  double eta = 0.1;
  int s = 1;
};

int cmd_dyn(const Dyn& o, std::ostream& out, std::ostream& err) {
  const CoveringFamily fractal = family_by_name(o.name);
  if (o.interval.size() != 2) throw InvalidInputError("--interval takes two numbers a b");
  if (!(o.eta > 0.0)) throw InvalidInputError("--eta must be positive");
  const Interval interval{o.interval[0], o.interval[1]};
  const WeightFamily fam = weight_family(o.family, o.alpha, interval);
  const double inv_gamma = 1.0 / fractal.gamma;
  if (fam.alpha > inv_gamma + 1e-12) {
    if (fam.name != "rolewicz") {
      throw InvalidInputError("alpha = " + std::to_string(fam.alpha) + " exceeds 1/gamma = " +
                              std::to_string(inv_gamma) + " for " + fractal.name +
                              "; these weights need alpha in (0, 1/gamma]");
    }
    err << "warning: rolewicz weights have alpha = 1 > 1/gamma = " << inv_gamma
        << "; running as a finite-scale experiment\n";
  }
  DynamicsOptions opts;
  opts.interval = interval;
  opts.eta = o.eta;
  opts.s = o.s;
  opts.budget = resolve_budget(o.common.budget);
  opts.seed = o.common.seed;
  const DynamicsReport rep = run_dynamics(fractal, fam, opts);

  Emitter e(out, "dyn", o.common);
  e.manifest().parameters = {{"name", o.name},     {"family", o.family}, {"interval", o.interval},
                             {"alpha", fam.alpha}, {"eta", o.eta},       {"s", o.s},
                             {"budget", opts.budget}};
  const bool pass = rep.pass();
  if (!pass) {
    err << "universality check fails: worst error " << rep.universality.worst_error
        << " (bound " << rep.universality.bound << "), |u-u0| = " << rep.distance << "\n";
  }
  std::ostringstream summary;
  summary << (pass ? "pass" : "FAIL") << ": N=" << rep.big_n << " q=" << rep.q
          << " worst=" << rep.universality.worst_error << " < " << rep.universality.bound;
  e.emit(dynamics_json(rep), summary.str());
  return pass ? kExitPass : kExitFail;
}

// render

struct Render {
  std::string in;
  std::string out;
};

int cmd_render(const Render& o, std::ostream& out) {
  const Json record = load_json(o.in);
  const std::string kind = record_kind(record);
  std::vector<SvgCell> cells;
  std::string title;
  if (kind == "covering") {
    const CoveringFile file = parse_covering(record);
    title = file.name;
    if (!file.levels.empty()) {
      for (const CoveringPart& p : file.levels.back()) {
        cells.push_back({p.square(), p.square().center()});
      }
      if (!file.levels.back().empty()) {
        title += " m=" + std::to_string(file.levels.back().front().resolution);
      }
    }
  } else if (kind == "tagged-covering") {
    const TaggedCovering cov = parse_tagged_covering(record);
    title = cov.name + " q=" + std::to_string(cov.q);
    for (const TaggedSquare& sq : cov.squares) cells.push_back({sq.square(), sq.square().center()});
  } else {
    throw InvalidInputError("cannot render a " + kind + " record");
  }
  write_atomic(o.out, render_svg(cells, title));
  out << "wrote " << cells.size() << " cells to " << o.out << "\n";
  return kExitPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ordered coverings of self-similar sets and common hypercyclic vectors", "hbd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto* zoo = app.add_subcommand("zoo", "Built-in fractals");
  zoo->require_subcommand(1);
  zoo->add_subcommand("list", "List the built-in fractals");
  ZooEmit zoo_emit;
  auto* emit = zoo->add_subcommand("emit", "Write the resolution-m covering of a fractal");
  emit->add_option("--name", zoo_emit.name, "Fractal name")->required();
  emit->add_option("--m", zoo_emit.m, "Resolution")->required()->check(CLI::NonNegativeNumber);
  emit->add_flag("--all-levels", zoo_emit.all_levels, "Also write resolutions 0..m-1");
  add_common(emit, zoo_emit.common);

  VerifyHbd vh;
  auto* verify = app.add_subcommand("verify-hbd", "Check the three covering conditions");
  auto* vh_name = verify->add_option("--name", vh.name, "Fractal name");
  auto* vh_in = verify->add_option("--in", vh.in, "Covering file");
  vh_name->excludes(vh_in);
  verify->add_option("--gamma", vh.gamma, "Dimension exponent")->check(CLI::PositiveNumber);
  verify->add_option("--rho", vh.rho, "Diameter constant")->check(CLI::PositiveNumber);
  verify->add_option("--m", vh.m, "Largest resolution");
  add_common(verify, vh.common);

  auto* cover = app.add_subcommand("cover", "Tagged coverings");
  cover->require_subcommand(1);
  CoverBuild cb;
  auto* build = cover->add_subcommand("build", "Build the tagged covering Gamma_1..Gamma_q");
  build->add_option("--name", cb.name, "Fractal name")->required();
  build->add_option("--bigN", cb.big_n, "Shift spacing N")->required();
  build->add_option("--tau", cb.tau, "Side constant tau (normalised to pick s)");
  build->add_option("--D", cb.big_d, "Separation constant (default rho/c^3)");
  build->add_option("--s", cb.s, "Starting rank");
  add_common(build, cb.common);
  CoverVerify cv;
  auto* cverify = cover->add_subcommand("verify", "Form, separation, coverage and jump checks");
  cverify->add_option("--in", cv.in, "Tagged covering file")->required();
  cverify->add_option("--D", cv.big_d, "Separation constant (default: the file's)");
  add_common(cverify, cv.common);

  Dyn dyn;
  auto* dync = app.add_subcommand("dyn", "Common hypercyclic vector experiment");
  dync->add_option("--name", dyn.name, "Fractal name")->required();
  dync->add_option("--family", dyn.family, "rolewicz | power | inverse-power");
  dync->add_option("--interval", dyn.interval, "Parameter interval a b")->expected(2);
  dync->add_option("--alpha", dyn.alpha, "Weight exponent");
  dync->add_option("--eta", dyn.eta, "Target accuracy");
  dync->add_option("--s", dyn.s, "Starting rank");
  add_common(dync, dyn.common);

  Render rd;
  auto* render = app.add_subcommand("render", "Draw a covering as SVG");
  render->add_option("--in", rd.in, "Covering or tagged covering file")->required();
  render->add_option("--out", rd.out, "SVG file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) {
      err << sub->help();
      break;
    }
    return kExitUsage;
  }

  try {
    if (zoo->parsed()) {
      if (emit->parsed()) return cmd_zoo_emit(zoo_emit, out);
      for (const auto& n : zoo_names()) out << n << "\n";
      return kExitPass;
    }
    if (verify->parsed()) {
      if (vh.name.empty() && vh.in.empty()) throw InvalidInputError("give --name or --in");
      return cmd_verify_hbd(vh, out, err);
    }
    if (cover->parsed()) {
      return build->parsed() ? cmd_cover_build(cb, out) : cmd_cover_verify(cv, out, err);
    }
    if (dync->parsed()) return cmd_dyn(dyn, out, err);
    if (render->parsed()) return cmd_render(rd, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace hbd::cli
