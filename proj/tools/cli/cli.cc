// Copyright 2026 The Onesided Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/cli.h"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "nlohmann/json.hpp"
#include "onesided/discrete_pmf.h"
#include "onesided/histogram_padding.h"
#include "onesided/mechanisms.h"
#include "onesided/psi_padding.h"
#include "onesided/rng.h"
#include "onesided/sampler.h"
#include "onesided/spec_json.h"
#include "onesided/verifier.h"

namespace onesided::cli {
namespace {

using nlohmann::json;

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

// I/O failures travel as kUnavailable so they map to exit code 3.
absl::Status IoError(std::string_view message) {
  return absl::UnavailableError(std::string(message));
}

int ExitCode(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kUnavailable:
      return kExitIo;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
      return kExitParameter;
    default:
      return 1;
  }
}

std::string ResolvePath(const std::string& path) {
  const std::filesystem::path p(path);
  const char* dir = std::getenv(kOutputDirEnv);
  if (p.is_relative() && dir != nullptr && *dir != '\0') {
    return (std::filesystem::path(dir) / p).string();
  }
  return path;
}

absl::Status Emit(const std::string& path, const std::string& text,
                  std::ostream& out) {
  if (path.empty()) {
    out << text;
    return out ? absl::OkStatus() : IoError("failed writing to stdout");
  }
  const std::string resolved = ResolvePath(path);
  std::ofstream file(resolved, std::ios::binary | std::ios::trunc);
  if (!file) return IoError(absl::StrCat("cannot open ", resolved));
  file << text;
  file.close();
  if (!file) return IoError(absl::StrCat("failed writing ", resolved));
  return absl::OkStatus();
}

absl::StatusOr<std::string> Slurp(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return IoError(absl::StrCat("cannot read ", path));
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

std::string Real(double x) { return absl::StrFormat("%.17g", x); }

// ---------------------------------------------------------------------------
// Mechanism selection shared by most subcommands.

struct MechanismFlags {
  std::string spec_path;
  std::string family;
  double epsilon = kUnset;
  double delta = kUnset;
  double sensitivity = 1.0;
  bool singly = false;
  std::string sign = "overvalued";
  int64_t n = 0;
};

void AddMechanismFlags(CLI::App* app, MechanismFlags& f) {
  auto* spec = app->add_option("--spec", f.spec_path,
                               "Read a mechanism spec JSON document");
  auto* family = app->add_option(
      "--family", f.family,
      "trunc_laplace|double_geometric|negative_binomial|discrete_uniform|"
      "binomial (aliases: laplace, geometric, negbin, uniform)");
  auto* eps = app->add_option("--epsilon", f.epsilon, "Privacy loss epsilon");
  auto* delta = app->add_option("--delta", f.delta, "Failure mass delta");
  auto* sens = app->add_option("--sensitivity", f.sensitivity,
                               "Query sensitivity (default 1)");
  auto* singly = app->add_flag("--singly", f.singly,
                               "Singly truncated Laplace (support [0, inf))");
  auto* sign = app->add_option("--sign", f.sign, "overvalued|undervalued");
  auto* n = app->add_option("--N", f.n, "Size N of a uniform/binomial heuristic");
  for (CLI::Option* o : {family, eps, delta, sens, singly, sign, n}) {
    spec->excludes(o);
  }
  n->excludes(eps);
  n->excludes(delta);
  n->excludes(singly);
}

absl::StatusOr<MechanismSpec> ResolveMechanism(const MechanismFlags& f) {
  if (!f.spec_path.empty()) {
    absl::StatusOr<std::string> text = Slurp(f.spec_path);
    if (!text.ok()) return text.status();
    return ParseSpec(*text);
  }
  if (f.family.empty()) {
    return absl::InvalidArgumentError("one of --family or --spec is required");
  }
  absl::StatusOr<Family> family = ParseFamily(f.family);
  if (!family.ok()) return family.status();
  absl::StatusOr<Sign> sign = ParseSign(f.sign);
  if (!sign.ok()) return sign.status();

  if (*family == Family::kDiscreteUniform || *family == Family::kBinomial) {
    if (f.n < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat(std::string(FamilyName(*family)), " needs --N >= 1"));
    }
    if (f.sensitivity != std::floor(f.sensitivity)) {
      return absl::InvalidArgumentError("sensitivity must be an integer");
    }
    return MakeHeuristicSpec(*family == Family::kBinomial
                                 ? HeuristicFamily::kBinomial
                                 : HeuristicFamily::kDiscreteUniform,
                             f.n, static_cast<int64_t>(f.sensitivity), *sign);
  }
  if (f.n != 0) {
    return absl::InvalidArgumentError("--N only applies to uniform/binomial");
  }
  if (std::isnan(f.epsilon) || std::isnan(f.delta)) {
    return absl::InvalidArgumentError("--epsilon and --delta are required");
  }
  if (f.singly && *family != Family::kTruncLaplace) {
    return absl::InvalidArgumentError("--singly only applies to trunc_laplace");
  }
  return SolveMechanism(*family,
                        {.epsilon = f.epsilon,
                         .delta = f.delta,
                         .sensitivity = f.sensitivity},
                        !f.singly, *sign);
}

// Finite table plus the shift (in table cells) that one sensitivity unit
// corresponds to; the Laplace is discretised on `laplace_step`.
struct Table {
  DiscretePmf pmf;
  int64_t shift = 1;
  double step = 1.0;
};

absl::StatusOr<Table> TableFor(const MechanismSpec& spec, double laplace_step) {
  Table t;
  if (const auto* lp = std::get_if<TruncLaplaceParams>(&spec.params)) {
    const double step =
        laplace_step > 0 ? laplace_step : DefaultLaplaceStep(spec.budget);
    absl::StatusOr<DiscretizedLaplace> d = DiscretizeContinuous(*lp, step);
    if (!d.ok()) return d.status();
    absl::StatusOr<int64_t> shift =
        ShiftInSteps(spec.budget.sensitivity, step);
    if (!shift.ok()) return shift.status();
    t.pmf = std::move(d->pmf);
    t.shift = *shift;
    t.step = step;
    return t;
  }
  absl::StatusOr<DiscretePmf> pmf = TabulatePmf(spec);
  if (!pmf.ok()) return pmf.status();
  t.pmf = *std::move(pmf);
  t.shift = static_cast<int64_t>(spec.budget.sensitivity);
  return t;
}

// ---------------------------------------------------------------------------
// Subcommands

struct OutputFlag {
  std::string path;
};

void AddOutputFlag(CLI::App* app, OutputFlag& o) {
  app->add_option("--output,-o", o.path,
                  absl::StrCat("Write to this file (relative to $",
                               kOutputDirEnv, " when set)"));
}

absl::Status RunSolve(const MechanismFlags& f, const OutputFlag& o,
                      std::ostream& out) {
  absl::StatusOr<MechanismSpec> spec = ResolveMechanism(f);
  if (!spec.ok()) return spec.status();
  return Emit(o.path, SerializeSpec(*spec) + "\n", out);
}

struct SampleFlags {
  uint64_t seed = 0;
  uint64_t stream = 0;
  int64_t count = 1;
};

absl::Status RunSample(const MechanismFlags& f, const SampleFlags& s,
                       const OutputFlag& o, std::ostream& out) {
  absl::StatusOr<MechanismSpec> spec = ResolveMechanism(f);
  if (!spec.ok()) return spec.status();
  if (s.count < 0) return absl::InvalidArgumentError("--count must be >= 0");
  absl::StatusOr<NoiseSampler> sampler = NoiseSampler::Create(*spec);
  if (!sampler.ok()) return sampler.status();
  RngStream rng(s.seed, s.stream);
  std::string text;
  for (int64_t i = 0; i < s.count; ++i) {
    if (spec->integer_valued()) {
      absl::StrAppend(&text, sampler->SampleInteger(rng), "\n");
    } else {
      absl::StrAppend(&text, Real(sampler->Sample(rng)), "\n");
    }
  }
  return Emit(o.path, text, out);
}

struct VerifyFlags {
  std::vector<double> epsilon_grid;
  double laplace_step = 0.0;
};

absl::Status RunVerify(const MechanismFlags& f, const VerifyFlags& v,
                       const OutputFlag& o, std::ostream& out) {
  absl::StatusOr<MechanismSpec> spec = ResolveMechanism(f);
  if (!spec.ok()) return spec.status();
  absl::StatusOr<Table> table = TableFor(*spec, v.laplace_step);
  if (!table.ok()) return table.status();
  std::vector<double> grid = v.epsilon_grid;
  if (grid.empty()) grid.push_back(spec->budget.epsilon);
  absl::StatusOr<std::vector<PrivacyVerdict>> curve =
      PrivacyCurve(table->pmf, table->shift, grid);
  if (!curve.ok()) return curve.status();
  std::string text;
  for (const PrivacyVerdict& verdict : *curve) {
    json line = {{"epsilon", verdict.epsilon},
                 {"delta_required", verdict.delta_required},
                 {"direction_worst",
                  std::string(DirectionName(verdict.direction_worst))}};
    absl::StrAppend(&text, line.dump(), "\n");
  }
  return Emit(o.path, text, out);
}

absl::Status RunPmfDump(const MechanismFlags& f, double laplace_step,
                        const OutputFlag& o, std::ostream& out) {
  absl::StatusOr<MechanismSpec> spec = ResolveMechanism(f);
  if (!spec.ok()) return spec.status();
  absl::StatusOr<Table> table = TableFor(*spec, laplace_step);
  if (!table.ok()) return table.status();
  std::string text = "x,probability\n";
  const bool integer = spec->integer_valued();
  for (size_t i = 0; i < table->pmf.probs.size(); ++i) {
    const int64_t cell = table->pmf.origin + static_cast<int64_t>(i);
    const std::string x = integer
                              ? absl::StrCat(cell)
                              : Real(static_cast<double>(cell) * table->step);
    absl::StrAppend(&text, x, ",", Real(table->pmf.probs[i]), "\n");
  }
  return Emit(o.path, text, out);
}

struct PsiFlags {
  int64_t size_x = 0;
  int64_t size_y = 0;
  int64_t intersection = 0;
  std::string family = "double_geometric";
  double epsilon = kUnset;
  double delta = kUnset;
  double epsilon_x = kUnset;
  double delta_x = kUnset;
  double epsilon_y = kUnset;
  double delta_y = kUnset;
  double union_epsilon = kUnset;
  double union_delta = kUnset;
  bool union_mode = false;
  bool one_party = false;
  uint64_t seed = 0;
  int64_t runs = 1;
  std::string histogram_path;
};

absl::StatusOr<MechanismSpec> PsiSpec(const std::string& family, double eps,
                                      double delta, const char* who) {
  if (std::isnan(eps) || std::isnan(delta)) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing epsilon/delta for ", who));
  }
  absl::StatusOr<Family> f = ParseFamily(family);
  if (!f.ok()) return f.status();
  return SolveMechanism(*f, {.epsilon = eps, .delta = delta});
}

double Pick(double specific, double fallback) {
  return std::isnan(specific) ? fallback : specific;
}

json ViewJson(const PartyView& view) {
  json j = {{"dp_intersection", view.dp_intersection},
            {"dp_counterpart_size", view.dp_counterpart_size}};
  if (view.dp_union.has_value()) j["dp_union"] = *view.dp_union;
  return j;
}

absl::Status RunPsiSim(const PsiFlags& p, const OutputFlag& o,
                       std::ostream& out) {
  if (p.size_x < 0 || p.size_y < 0 || p.intersection < 0 ||
      p.intersection > std::min(p.size_x, p.size_y)) {
    return absl::InvalidArgumentError(
        "need 0 <= --intersection <= min(--size-x, --size-y)");
  }
  if (p.runs < 1) return absl::InvalidArgumentError("--runs must be >= 1");

  PartyInput x;
  PartyInput y;
  y.role = PartyRole::kY;
  absl::StatusOr<MechanismSpec> spec_x =
      PsiSpec(p.family, Pick(p.epsilon_x, p.epsilon), Pick(p.delta_x, p.delta),
              "party X");
  if (!spec_x.ok()) return spec_x.status();
  absl::StatusOr<MechanismSpec> spec_y =
      PsiSpec(p.family, Pick(p.epsilon_y, p.epsilon), Pick(p.delta_y, p.delta),
              "party Y");
  if (!spec_y.ok()) return spec_y.status();
  x.intersect_noise_spec = *spec_x;
  y.intersect_noise_spec = *spec_y;
  if (p.union_mode) {
    absl::StatusOr<MechanismSpec> u =
        PsiSpec(p.family, Pick(p.union_epsilon, p.epsilon),
                Pick(p.union_delta, p.delta), "union padding");
    if (!u.ok()) return u.status();
    x.union_noise_spec = *u;
    y.union_noise_spec = *u;
  }
  for (int64_t i = 0; i < p.intersection; ++i) {
    x.real_set.push_back(absl::StrCat("shared:", i));
    y.real_set.push_back(absl::StrCat("shared:", i));
  }
  for (int64_t i = p.intersection; i < p.size_x; ++i) {
    x.real_set.push_back(absl::StrCat("x:", i));
  }
  for (int64_t i = p.intersection; i < p.size_y; ++i) {
    y.real_set.push_back(absl::StrCat("y:", i));
  }
  absl::StatusOr<Pools> pools = BuildPools(x, y);
  if (!pools.ok()) return pools.status();

  const PsiMode mode = p.one_party        ? PsiMode::kOneParty
                       : p.union_mode     ? PsiMode::kIntersectionAndUnion
                                          : PsiMode::kIntersection;
  std::map<int64_t, std::pair<int64_t, int64_t>> noise_counts;
  std::string text;
  for (int64_t run = 0; run < p.runs; ++run) {
    RngStream rng_x(p.seed, 2 * static_cast<uint64_t>(run));
    RngStream rng_y(p.seed, 2 * static_cast<uint64_t>(run) + 1);
    absl::StatusOr<PsiRunRecord> r = SimulatePsi(x, y, *pools, mode, rng_x, rng_y);
    if (!r.ok()) return r.status();
    json record = {
        {"run", run},
        {"z_x", r->z_x},
        {"z_y", r->z_y},
        {"v_x", r->v_x},
        {"v_y", r->v_y},
        {"transcript",
         {{"size_x", r->transcript.size_x},
          {"size_y", r->transcript.size_y},
          {"intersection_size", r->transcript.intersection_size},
          {"union_size", r->transcript.union_size}}},
        {"view_x", ViewJson(r->view_x)}};
    if (mode != PsiMode::kOneParty) record["view_y"] = ViewJson(r->view_y);
    absl::StrAppend(&text, record.dump(), "\n");
    ++noise_counts[r->view_x.dp_intersection - p.intersection].first;
    if (mode != PsiMode::kOneParty) {
      ++noise_counts[r->view_y.dp_intersection - p.intersection].second;
    }
  }
  if (absl::Status s = Emit(o.path, text, out); !s.ok()) return s;
  if (!p.histogram_path.empty()) {
    std::string csv = "noise,count_x,count_y\n";
    for (const auto& [noise, counts] : noise_counts) {
      absl::StrAppend(&csv, noise, ",", counts.first, ",", counts.second, "\n");
    }
    return Emit(p.histogram_path, csv, out);
  }
  return absl::OkStatus();
}

absl::StatusOr<EventHistogram> ReadHistogramCsv(const std::string& path) {
  absl::StatusOr<std::string> text = Slurp(path);
  if (!text.ok()) return text.status();
  std::map<int64_t, int64_t> bins;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(*text, '\n')) {
    ++line_no;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    std::vector<absl::string_view> cells = absl::StrSplit(line, ',');
    int64_t bin = 0;
    int64_t count = 0;
    if (cells.size() != 2 ||
        !absl::SimpleAtoi(absl::StripAsciiWhitespace(cells[0]), &bin) ||
        !absl::SimpleAtoi(absl::StripAsciiWhitespace(cells[1]), &count)) {
      if (line_no == 1) continue;  // header
      return absl::InvalidArgumentError(
          absl::StrFormat("%s:%d: expected 'bin,count'", path, line_no));
    }
    if (bin < 0 || !bins.emplace(bin, count).second) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "%s:%d: bin %d is negative or repeated", path, line_no, bin));
    }
  }
  if (bins.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": no bins"));
  }
  EventHistogram hist;
  hist.k_max = bins.rbegin()->first;
  hist.counts.assign(static_cast<size_t>(hist.k_max + 1), 0);
  for (const auto& [bin, count] : bins) {
    hist.counts[static_cast<size_t>(bin)] = count;
  }
  if (absl::Status s = ValidateHistogram(hist); !s.ok()) return s;
  return hist;
}

json CostJson(int64_t users, int64_t k_max, const CostReport& r) {
  return {{"n_users", users},
          {"k_max", k_max},
          {"constant_time_events", r.constant_time_events},
          {"dp_padding_events", r.dp_padding_events},
          {"shuffled_elements", r.shuffled_elements},
          {"shuffle_cost", r.shuffle_cost},
          {"dp_cheaper", r.dp_cheaper}};
}

struct HistFlags {
  std::string input;
  uint64_t seed = 0;
  uint64_t stream = 0;
  std::string cost_report;
  double shuffle_constant = kDefaultShuffleConstant;
  int64_t bin_sensitivity = 1;
};

absl::Status RunHistPad(const MechanismFlags& f, const HistFlags& h,
                        const OutputFlag& o, std::ostream& out) {
  absl::StatusOr<EventHistogram> hist = ReadHistogramCsv(h.input);
  if (!hist.ok()) return hist.status();
  MechanismFlags with_default = f;
  if (with_default.family.empty()) with_default.family = "double_geometric";
  absl::StatusOr<MechanismSpec> spec = ResolveMechanism(with_default);
  if (!spec.ok()) return spec.status();
  absl::StatusOr<PaddedHistogram> padded =
      PadHistogram(*hist, *spec, RngStream(h.seed, h.stream),
                   {.bin_sensitivity = h.bin_sensitivity});
  if (!padded.ok()) return padded.status();
  std::string csv = "bin,true_count,dummy_count,leaked_count\n";
  const std::vector<int64_t> leaked = padded->leaked();
  for (size_t i = 0; i < leaked.size(); ++i) {
    absl::StrAppend(&csv, i, ",", hist->counts[i], ",",
                    padded->dummy_counts[i], ",", leaked[i], "\n");
  }
  if (absl::Status s = Emit(o.path, csv, out); !s.ok()) return s;
  if (!h.cost_report.empty()) {
    absl::StatusOr<CostReport> report = CostCompare(
        hist->total_users(), hist->k_max, *spec, h.shuffle_constant);
    if (!report.ok()) return report.status();
    return Emit(h.cost_report,
                CostJson(hist->total_users(), hist->k_max, *report).dump() +
                    "\n",
                out);
  }
  return absl::OkStatus();
}

struct CostFlags {
  int64_t users = 0;
  int64_t k_max = 0;
  double noise_mean = kUnset;
  double shuffle_constant = kDefaultShuffleConstant;
};

absl::Status RunCost(const MechanismFlags& f, const CostFlags& c,
                     const OutputFlag& o, std::ostream& out) {
  absl::StatusOr<CostReport> report;
  if (!std::isnan(c.noise_mean)) {
    report = CostCompareWithMean(c.users, c.k_max, c.noise_mean,
                                 c.shuffle_constant);
  } else {
    absl::StatusOr<MechanismSpec> spec = ResolveMechanism(f);
    if (!spec.ok()) return spec.status();
    report = CostCompare(c.users, c.k_max, *spec, c.shuffle_constant);
  }
  if (!report.ok()) return report.status();
  return Emit(o.path, CostJson(c.users, c.k_max, *report).dump() + "\n", out);
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"One-sided differentially private noise: solve, sample, "
               "verify, and simulate padding protocols.",
               "onesided"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  MechanismFlags mech;
  OutputFlag output;

  auto* solve = app.add_subcommand("solve", "Solve mechanism parameters");
  AddMechanismFlags(solve, mech);
  AddOutputFlag(solve, output);

  SampleFlags sample_flags;
  auto* sample = app.add_subcommand("sample", "Draw noise samples");
  AddMechanismFlags(sample, mech);
  AddOutputFlag(sample, output);
  sample->add_option("--seed", sample_flags.seed, "RNG seed");
  sample->add_option("--stream", sample_flags.stream, "RNG stream id");
  sample->add_option("--count", sample_flags.count, "Number of draws");

  VerifyFlags verify_flags;
  auto* verify = app.add_subcommand(
      "verify", "Brute-force delta for the mechanism's noise at each epsilon");
  AddMechanismFlags(verify, mech);
  AddOutputFlag(verify, output);
  verify->add_option("--epsilon-grid", verify_flags.epsilon_grid,
                     "Ascending epsilons to test (default: --epsilon)")
      ->delimiter(',');
  verify->add_option("--laplace-step", verify_flags.laplace_step,
                     "Grid width for discretising the Laplace");

  double dump_step = 0.0;
  auto* pmf_dump = app.add_subcommand("pmf-dump", "Write the pmf as CSV");
  AddMechanismFlags(pmf_dump, mech);
  AddOutputFlag(pmf_dump, output);
  pmf_dump->add_option("--laplace-step", dump_step,
                       "Grid width for discretising the Laplace");

  PsiFlags psi;
  auto* psi_sim = app.add_subcommand(
      "psi-sim", "Simulate padded PSI runs and report each party's view");
  AddOutputFlag(psi_sim, output);
  psi_sim->add_option("--size-x", psi.size_x, "|D_X|")->required();
  psi_sim->add_option("--size-y", psi.size_y, "|D_Y|")->required();
  psi_sim->add_option("--intersection", psi.intersection, "|D_X n D_Y|")
      ->required();
  psi_sim->add_option("--family", psi.family,
                      "Bounded noise family (default double_geometric)");
  psi_sim->add_option("--epsilon", psi.epsilon, "Epsilon for both parties");
  psi_sim->add_option("--delta", psi.delta, "Delta for both parties");
  psi_sim->add_option("--epsilon-x", psi.epsilon_x, "X's epsilon");
  psi_sim->add_option("--delta-x", psi.delta_x, "X's delta");
  psi_sim->add_option("--epsilon-y", psi.epsilon_y, "Y's epsilon");
  psi_sim->add_option("--delta-y", psi.delta_y, "Y's delta");
  auto* union_eps = psi_sim->add_option("--union-epsilon", psi.union_epsilon,
                                        "Union-padding epsilon");
  auto* union_delta = psi_sim->add_option("--union-delta", psi.union_delta,
                                          "Union-padding delta");
  auto* union_mode =
      psi_sim->add_flag("--union-mode", psi.union_mode, "Also pad the union");
  auto* one_party = psi_sim->add_flag("--one-party", psi.one_party,
                                      "Only X observes the intersection");
  one_party->excludes(union_mode);
  one_party->excludes(union_eps);
  one_party->excludes(union_delta);
  psi_sim->add_option("--seed", psi.seed, "RNG seed");
  psi_sim->add_option("--runs", psi.runs, "Number of protocol runs");
  psi_sim->add_option("--histogram", psi.histogram_path,
                      "Write a CSV histogram of view noise");

  HistFlags hist;
  auto* hist_pad =
      app.add_subcommand("hist-pad", "Pad an event-count histogram");
  AddMechanismFlags(hist_pad, mech);
  AddOutputFlag(hist_pad, output);
  hist_pad->add_option("--input", hist.input, "CSV with rows bin,count")
      ->required();
  hist_pad->add_option("--seed", hist.seed, "RNG seed");
  hist_pad->add_option("--stream", hist.stream, "RNG stream id");
  hist_pad->add_option("--bin-sensitivity", hist.bin_sensitivity,
                       "Per-bin sensitivity (default 1)");
  hist_pad->add_option("--cost-report", hist.cost_report,
                       "Write a JSON cost comparison here");
  hist_pad->add_option("--shuffle-constant", hist.shuffle_constant,
                       "Oblivious shuffle constant in [4, 7]");

  CostFlags cost_flags;
  auto* cost = app.add_subcommand(
      "cost", "Compare DP padding with constant-time padding");
  AddMechanismFlags(cost, mech);
  AddOutputFlag(cost, output);
  cost->add_option("--users", cost_flags.users, "Number of users N")
      ->required();
  cost->add_option("--k-max", cost_flags.k_max, "Maximum events per user K")
      ->required();
  cost->add_option("--noise-mean", cost_flags.noise_mean,
                   "Per-bin noise mean (instead of a mechanism)");
  cost->add_option("--shuffle-constant", cost_flags.shuffle_constant,
                   "Oblivious shuffle constant in [4, 7]");

  std::vector<const char*> argv = {"onesided"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string usage;
    for (const CLI::App* sub : app.get_subcommands()) {
      usage = absl::StrCat(" (see 'onesided ", sub->get_name(), " --help')");
    }
    err << "error: " << e.what() << usage << "\n";
    return kExitParameter;
  }

  absl::Status status;
  if (solve->parsed()) {
    status = RunSolve(mech, output, out);
  } else if (sample->parsed()) {
    status = RunSample(mech, sample_flags, output, out);
  } else if (verify->parsed()) {
    status = RunVerify(mech, verify_flags, output, out);
  } else if (pmf_dump->parsed()) {
    status = RunPmfDump(mech, dump_step, output, out);
  } else if (psi_sim->parsed()) {
    status = RunPsiSim(psi, output, out);
  } else if (hist_pad->parsed()) {
    status = RunHistPad(mech, hist, output, out);
  } else if (cost->parsed()) {
    status = RunCost(mech, cost_flags, output, out);
  }
  if (!status.ok()) {
    err << "error: " << status.message() << "\n";
    return ExitCode(status);
  }
  return kExitOk;
}

}  // namespace onesided::cli
