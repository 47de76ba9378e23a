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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_split.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

namespace onesided::cli {
namespace {

using nlohmann::json;
using ::testing::HasSubstr;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = Run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Structural equality with a relative tolerance on non-integer numbers;
// integers, strings and booleans must match exactly.
void ExpectJsonNear(const json& want, const json& got, const std::string& at) {
  ASSERT_EQ(want.type(), got.type()) << at;
  if (want.is_object()) {
    ASSERT_EQ(want.size(), got.size()) << at;
    for (const auto& [key, value] : want.items()) {
      ASSERT_TRUE(got.contains(key)) << at << "." << key;
      ExpectJsonNear(value, got.at(key), at + "." + key);
    }
  } else if (want.is_number_float()) {
    const double w = want.get<double>();
    EXPECT_NEAR(got.get<double>(), w, 1e-12 * std::abs(w)) << at;
  } else {
    EXPECT_EQ(want, got) << at;
  }
}

class GoldenSolveTest : public ::testing::TestWithParam<const char*> {};

TEST_P(GoldenSolveTest, MatchesPinnedJson) {
  const std::string family = GetParam();
  const std::filesystem::path golden =
      std::filesystem::path(ONESIDED_GOLDEN_DIR) /
      ("solve_" + family + "_eps0.5_delta1e-6.json");
  const std::string want_text = ReadFile(golden);
  ASSERT_FALSE(want_text.empty()) << golden;

  Result r = Invoke({"solve", "--family", family, "--epsilon", "0.5",
                     "--delta", "1e-6", "--sensitivity", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  ASSERT_FALSE(r.out.empty());
  EXPECT_EQ(r.out.back(), '\n');
  // Key order and compact layout are part of the format.
  EXPECT_EQ(json::parse(r.out).dump() + "\n", r.out);
  ExpectJsonNear(json::parse(want_text), json::parse(r.out), family);
}

INSTANTIATE_TEST_SUITE_P(Families, GoldenSolveTest,
                         ::testing::Values("double_geometric",
                                           "negative_binomial",
                                           "trunc_laplace"));

TEST(CliTest, ShortFamilyNamesGiveWorkedExampleParameters) {
  Result geo = Invoke({"solve", "--family", "geometric", "--epsilon", "0.5",
                       "--delta", "1e-6", "--sensitivity", "1"});
  ASSERT_EQ(geo.code, kExitOk) << geo.err;
  EXPECT_THAT(geo.out, HasSubstr("\"n\":25"));

  Result nb = Invoke({"solve", "--family", "negbin", "--epsilon", "0.5",
                      "--delta", "1e-6", "--sensitivity", "1"});
  ASSERT_EQ(nb.code, kExitOk) << nb.err;
  EXPECT_THAT(nb.out, HasSubstr("\"r\":15"));
}

TEST(CliTest, SolveReadsSpecFile) {
  const auto dir = std::filesystem::temp_directory_path() / "onesided_cli_spec";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "geo.json").string();
  Result solved = Invoke({"solve", "--family", "geometric", "--epsilon", "0.5",
                          "--delta", "1e-6", "--output", path});
  ASSERT_EQ(solved.code, kExitOk) << solved.err;
  EXPECT_TRUE(solved.out.empty());
  Result reread = Invoke({"solve", "--spec", path});
  ASSERT_EQ(reread.code, kExitOk) << reread.err;
  EXPECT_EQ(reread.out, ReadFile(path));
}

TEST(CliTest, VerifyEmitsNonIncreasingCurve) {
  Result r = Invoke({"verify", "--family", "geometric", "--epsilon", "0.5",
                     "--delta", "1e-6", "--epsilon-grid", "0.4,0.5,0.6"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::vector<std::string> lines =
      absl::StrSplit(r.out, '\n', absl::SkipEmpty());
  ASSERT_EQ(lines.size(), 3u);
  double previous = 2.0;
  const double eps[] = {0.4, 0.5, 0.6};
  for (size_t i = 0; i < lines.size(); ++i) {
    json line = json::parse(lines[i]);
    ASSERT_EQ(line.size(), 3u);
    EXPECT_DOUBLE_EQ(line.at("epsilon").get<double>(), eps[i]);
    const double d = line.at("delta_required").get<double>();
    EXPECT_LE(d, previous);
    previous = d;
    const std::string dir = line.at("direction_worst");
    EXPECT_TRUE(dir == "left" || dir == "right") << dir;
  }
  EXPECT_LE(json::parse(lines[1]).at("delta_required").get<double>(), 1e-6);
}

TEST(CliTest, VerifyDefaultsToOwnEpsilonForLaplace) {
  Result r = Invoke(
      {"verify", "--family", "laplace", "--epsilon", "1", "--delta", "1e-6"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  json line = json::parse(r.out);
  EXPECT_DOUBLE_EQ(line.at("epsilon").get<double>(), 1.0);
  EXPECT_LE(line.at("delta_required").get<double>(), 1.05e-6);
}

struct PmfRows {
  std::vector<std::string> x;
  std::vector<double> p;
};

PmfRows ParsePmfCsv(const std::string& text) {
  PmfRows rows;
  std::vector<std::string> lines = absl::StrSplit(text, '\n');
  EXPECT_EQ(lines.front(), "x,probability");
  EXPECT_EQ(lines.back(), "");  // trailing LF
  for (size_t i = 1; i + 1 < lines.size(); ++i) {
    std::vector<std::string> cells = absl::StrSplit(lines[i], ',');
    EXPECT_EQ(cells.size(), 2u) << lines[i];
    double p = 0;
    EXPECT_TRUE(absl::SimpleAtod(cells[1], &p)) << lines[i];
    rows.x.push_back(cells[0]);
    rows.p.push_back(p);
  }
  EXPECT_EQ(text.find('\r'), std::string::npos);
  return rows;
}

double Sum(const std::vector<double>& v) {
  long double s = 0;
  for (double x : v) s += x;
  return static_cast<double>(s);
}

TEST(CliTest, PmfDumpGeometricHasFullSupport) {
  const std::vector<std::string> args = {"pmf-dump", "--family", "geometric",
                                         "--epsilon", "0.5", "--delta",
                                         "1e-6"};
  Result r = Invoke(args);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  PmfRows rows = ParsePmfCsv(r.out);
  ASSERT_EQ(rows.x.size(), 51u);
  EXPECT_EQ(rows.x.front(), "0");
  EXPECT_EQ(rows.x.back(), "50");
  EXPECT_NEAR(Sum(rows.p), 1.0, 1e-12);
  EXPECT_EQ(Invoke(args).out, r.out);
}

TEST(CliTest, PmfDumpNegativeBinomialReachesQuantile) {
  const std::vector<std::string> args = {"pmf-dump", "--family", "negbin",
                                         "--epsilon", "0.5", "--delta",
                                         "1e-6"};
  Result r = Invoke(args);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  PmfRows rows = ParsePmfCsv(r.out);
  ASSERT_FALSE(rows.p.empty());
  EXPECT_EQ(rows.x.front(), "0");
  // Independent reference: mass of {0..last} from the recurrence
  // pmf(k+1) = pmf(k) (k + r) / (k + 1) * (1 - p), pmf(0) = p^r.
  const double p = 1 - std::exp(-0.5);
  const int r_param = 15;
  long double pmf = std::pow(static_cast<long double>(p), r_param);
  long double mass = 0;
  for (size_t k = 0; k < rows.p.size(); ++k) {
    EXPECT_NEAR(rows.p[k], static_cast<double>(pmf), 1e-13 + 1e-10 * pmf)
        << k;
    mass += pmf;
    pmf *= (static_cast<long double>(k) + r_param) / (k + 1) * (1 - p);
  }
  EXPECT_GE(static_cast<double>(mass), 1 - 1e-12);
  // The table stops at the first row reaching the quantile.
  EXPECT_LT(static_cast<double>(mass - rows.p.back()), 1 - 1e-12);
  EXPECT_NEAR(Sum(rows.p), 1.0, 1e-12);
  EXPECT_EQ(Invoke(args).out, r.out);
}

TEST(CliTest, PmfDumpLaplaceDiscretisation) {
  Result r = Invoke({"pmf-dump", "--family", "laplace", "--epsilon", "1",
                     "--delta", "1e-6", "--laplace-step", "0.01"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  PmfRows rows = ParsePmfCsv(r.out);
  EXPECT_NEAR(Sum(rows.p), 1.0, 1e-9);
  EXPECT_EQ(rows.x.front(), "0");
}

TEST(CliTest, SampleIsDeterministicAndNonNegative) {
  const std::vector<std::string> args = {
      "sample", "--family", "geometric", "--epsilon", "0.5", "--delta",
      "1e-6",   "--seed",   "42",        "--stream",  "3",   "--count",
      "200"};
  Result a = Invoke(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(Invoke(args).out, a.out);
  std::vector<std::string> lines =
      absl::StrSplit(a.out, '\n', absl::SkipEmpty());
  ASSERT_EQ(lines.size(), 200u);
  for (const std::string& line : lines) {
    int64_t v = -1;
    ASSERT_TRUE(absl::SimpleAtoi(line, &v)) << line;
    EXPECT_GE(v, 0);
    EXPECT_LE(v, 50);
  }
  std::vector<std::string> other = args;
  other[8] = "43";
  EXPECT_NE(Invoke(other).out, a.out);
}

TEST(CliTest, SampleLaplaceEmitsReals) {
  Result r = Invoke({"sample", "--family", "laplace", "--epsilon", "1",
                     "--delta", "1e-6", "--count", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (absl::string_view line : absl::StrSplit(r.out, '\n', absl::SkipEmpty())) {
    double v = -1;
    ASSERT_TRUE(absl::SimpleAtod(line, &v));
    EXPECT_GE(v, 0.0);
  }
}

TEST(CliTest, PsiSimIdentitiesAndHistogram) {
  const auto dir = std::filesystem::temp_directory_path() / "onesided_cli_psi";
  std::filesystem::create_directories(dir);
  const std::string hist = (dir / "noise.csv").string();
  Result r = Invoke({"psi-sim", "--size-x", "100", "--size-y", "80",
                     "--intersection", "40", "--epsilon", "1", "--delta",
                     "1e-6", "--union-mode", "--runs", "50", "--seed", "9",
                     "--histogram", hist});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::vector<std::string> lines =
      absl::StrSplit(r.out, '\n', absl::SkipEmpty());
  ASSERT_EQ(lines.size(), 50u);
  for (const std::string& line : lines) {
    json rec = json::parse(line);
    const int64_t z_x = rec["z_x"], z_y = rec["z_y"];
    EXPECT_EQ(rec["transcript"]["intersection_size"].get<int64_t>(),
              40 + z_x + z_y);
    EXPECT_EQ(rec["view_x"]["dp_intersection"].get<int64_t>(), 40 + z_y);
    EXPECT_EQ(rec["view_y"]["dp_intersection"].get<int64_t>(), 40 + z_x);
    EXPECT_TRUE(rec["view_x"].contains("dp_union"));
  }
  const std::string csv = ReadFile(hist);
  EXPECT_EQ(csv.rfind("noise,count_x,count_y\n", 0), 0u);
  int64_t total_x = 0;
  std::vector<std::string> rows = absl::StrSplit(csv, '\n', absl::SkipEmpty());
  for (size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> cells = absl::StrSplit(rows[i], ',');
    int64_t c = 0;
    ASSERT_TRUE(absl::SimpleAtoi(cells[1], &c));
    total_x += c;
  }
  EXPECT_EQ(total_x, 50);
}

TEST(CliTest, PsiOnePartyOmitsCounterpartView) {
  Result r = Invoke({"psi-sim", "--size-x", "10", "--size-y", "10",
                     "--intersection", "5", "--epsilon", "1", "--delta",
                     "1e-6", "--one-party"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  json rec = json::parse(r.out);
  EXPECT_FALSE(rec.contains("view_y"));
  EXPECT_EQ(rec["z_x"].get<int64_t>(), 0);
}

TEST(CliTest, HistPadAndCostReport) {
  const auto dir = std::filesystem::temp_directory_path() / "onesided_cli_hist";
  std::filesystem::create_directories(dir);
  const std::string input = (dir / "in.csv").string();
  const std::string report = (dir / "cost.json").string();
  std::ofstream(input) << "bin,count\n0,10\n1,5\n3,2\n";
  Result r = Invoke({"hist-pad", "--input", input, "--epsilon", "0.5",
                     "--delta", "1e-6", "--seed", "1", "--cost-report",
                     report});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::vector<std::string> rows = absl::StrSplit(r.out, '\n', absl::SkipEmpty());
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "bin,true_count,dummy_count,leaked_count");
  EXPECT_THAT(rows[3], ::testing::StartsWith("2,0,"));
  for (size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> c = absl::StrSplit(rows[i], ',');
    int64_t t = 0, d = 0, l = 0;
    ASSERT_TRUE(absl::SimpleAtoi(c[1], &t) && absl::SimpleAtoi(c[2], &d) &&
                absl::SimpleAtoi(c[3], &l));
    EXPECT_GE(d, 0);
    EXPECT_EQ(l, t + d);
  }
  json cost = json::parse(ReadFile(report));
  EXPECT_EQ(cost["n_users"].get<int64_t>(), 17);
  EXPECT_EQ(cost["k_max"].get<int64_t>(), 3);
}

TEST(CliTest, CostMatchesLargePopulationComparison) {
  Result r = Invoke({"cost", "--users", "1000000", "--k-max", "100",
                     "--noise-mean", "25"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  json cost = json::parse(r.out);
  EXPECT_DOUBLE_EQ(cost["constant_time_events"].get<double>(), 5e7);
  EXPECT_DOUBLE_EQ(cost["dp_padding_events"].get<double>(), 126250.0);
  EXPECT_TRUE(cost["dp_cheaper"].get<bool>());
}

TEST(CliTest, ParameterErrorsExitTwoWithOneLine) {
  const std::vector<std::vector<std::string>> bad = {
      {},
      {"solve"},
      {"solve", "--family", "geometric", "--epsilon", "-1", "--delta", "1e-6"},
      {"solve", "--family", "laplace", "--epsilon", "0.1", "--delta", "0.9"},
      {"solve", "--family", "nope", "--epsilon", "1", "--delta", "1e-6"},
      {"solve", "--family", "geometric", "--epsilon", "x", "--delta", "1e-6"},
      {"solve", "--spec", "a.json", "--family", "geometric"},
      {"psi-sim", "--size-x", "1", "--size-y", "1", "--intersection", "1",
       "--epsilon", "1", "--delta", "1e-6", "--one-party", "--union-mode"},
      {"psi-sim", "--size-x", "1", "--size-y", "1", "--intersection", "2",
       "--epsilon", "1", "--delta", "1e-6"},
      {"psi-sim", "--size-x", "5", "--size-y", "5", "--intersection", "1",
       "--family", "negbin", "--epsilon", "1", "--delta", "1e-6"},
      {"cost", "--users", "10", "--k-max", "2", "--noise-mean", "1",
       "--shuffle-constant", "9"},
      {"frobnicate"},
  };
  for (const auto& args : bad) {
    Result r = Invoke(args);
    const std::string joined = testing::PrintToString(args);
    EXPECT_EQ(r.code, kExitParameter) << joined << " -> " << r.err;
    EXPECT_TRUE(r.out.empty()) << joined;
    ASSERT_FALSE(r.err.empty()) << joined;
    EXPECT_EQ(r.err.find('\n'), r.err.size() - 1) << joined << r.err;
  }
}

TEST(CliTest, IoErrorsExitThree) {
  EXPECT_EQ(Invoke({"solve", "--spec", "/nonexistent/spec.json"}).code,
            kExitIo);
  EXPECT_EQ(Invoke({"solve", "--family", "geometric", "--epsilon", "1",
                    "--delta", "1e-6", "--output", "/nonexistent/dir/x"})
                .code,
            kExitIo);
  EXPECT_EQ(Invoke({"hist-pad", "--input", "/nonexistent.csv", "--epsilon",
                    "1", "--delta", "1e-6"})
                .code,
            kExitIo);
}

TEST(CliTest, HelpExitsZero) {
  Result top = Invoke({"--help"});
  EXPECT_EQ(top.code, kExitOk);
  EXPECT_THAT(top.out, HasSubstr("pmf-dump"));
  for (const char* sub : {"solve", "sample", "verify", "pmf-dump", "psi-sim",
                          "hist-pad", "cost"}) {
    Result r = Invoke({sub, "--help"});
    EXPECT_EQ(r.code, kExitOk) << sub;
    EXPECT_THAT(r.out, HasSubstr("--")) << sub;
  }
}

TEST(CliTest, RelativeOutputGoesToEnvironmentDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "onesided_cli_env";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  ASSERT_EQ(setenv(kOutputDirEnv, dir.c_str(), 1), 0);
  Result r = Invoke({"solve", "--family", "geometric", "--epsilon", "0.5",
                     "--delta", "1e-6", "--output", "geo.json"});
  unsetenv(kOutputDirEnv);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_THAT(ReadFile(dir / "geo.json"), HasSubstr("\"n\":25"));
}

}  // namespace
}  // namespace onesided::cli
