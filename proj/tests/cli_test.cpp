// Copyright 2026 The bosonlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bosonlab_cli/config.hpp"
#include "bosonlab_cli/report.hpp"
#include "bosonlab_cli/runner.hpp"

namespace bosonlab::cli {
namespace {

constexpr const char* kMinimalEd = R"(engine = ed
[box]
dims = 2x2
[model]
beta = 1
t = 1
mu = 0
)";

RunConfig parse_ok(const std::string& text) {
  auto r = parse_config(text);
  for (const auto& e : r.errors) ADD_FAILURE() << format_error(e);
  EXPECT_TRUE(r.ok());
  return r.config.value_or(RunConfig{});
}

int column(const Report& r, const std::string& name) {
  const auto it = std::find(r.columns.begin(), r.columns.end(), name);
  EXPECT_NE(it, r.columns.end()) << name;
  return static_cast<int>(it - r.columns.begin());
}

TEST(ParseConfig, MinimalEdIsValid) {
  const auto c = parse_ok(kMinimalEd);
  EXPECT_EQ(c.engine, Engine::kEd);
  EXPECT_EQ(c.box.dims, (std::vector<int>{2, 2}));
  EXPECT_EQ(c.model.t, 1.0);
  EXPECT_EQ(grid_points(c).size(), 1u);
}

TEST(ParseConfig, StochasticEngineNeedsSeed) {
  const auto r = parse_config("engine = cycles\n[box]\ndims = 2\n");
  ASSERT_FALSE(r.ok());
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_NE(r.errors[0].message.find("seed"), std::string::npos);
  EXPECT_TRUE(parse_config("engine = cycles\n[box]\ndims = 2\n", {.seed = 5}).ok());
}

TEST(ParseConfig, GridArithmetic) {
  EXPECT_EQ(parse_grid("-2:0.1:2").size(), 41u);
  const auto g = parse_grid("-2:0.1:2");
  EXPECT_NEAR(g.front(), -2.0, 1e-15);
  EXPECT_NEAR(g[20], 0.0, 1e-15);
  EXPECT_NEAR(g.back(), 2.0, 1e-15);
  EXPECT_EQ(parse_grid("1, 2.5 ,4"), (std::vector<double>{1, 2.5, 4}));
  EXPECT_EQ(parse_grid("3:1:3"), (std::vector<double>{3}));
  EXPECT_THROW(parse_grid("0:0:1"), std::exception);
  EXPECT_THROW(parse_grid("1:1:0"), std::exception);

  auto c = parse_ok(std::string(kMinimalEd) + "[scan]\nmu = -2:0.1:2\nt = 0, 1\n");
  const auto points = grid_points(c);
  ASSERT_EQ(points.size(), 82u);
  EXPECT_EQ(points[0].t, 0.0);
  EXPECT_EQ(points[1].t, 1.0);
  EXPECT_NEAR(points[2].mu, -1.9, 1e-12);
}

TEST(ParseConfig, CollectsEveryViolationWithLines) {
  const std::string text =
      "engine = cycles\n"
      "foo = 1\n"
      "[box]\n"
      "nmax = x\n"
      "[model]\n"
      "beta = -1\n"
      "[nowhere]\n"
      "[scan]\n"
      "mu = -2:0.1:2\n"
      "mu = 1\n";
  const auto r = parse_config(text);
  ASSERT_FALSE(r.ok());
  auto has = [&](int line, const std::string& needle) {
    return std::any_of(r.errors.begin(), r.errors.end(), [&](const ConfigError& e) {
      return e.line == line && format_error(e).find(needle) != std::string::npos;
    });
  };
  EXPECT_TRUE(has(2, "foo"));
  EXPECT_TRUE(has(4, "nmax"));
  EXPECT_TRUE(has(6, "beta"));
  EXPECT_TRUE(has(7, "nowhere"));
  EXPECT_TRUE(has(10, "duplicate"));
  EXPECT_TRUE(std::any_of(r.errors.begin(), r.errors.end(), [](const ConfigError& e) {
    return e.message.find("seed") != std::string::npos;
  }));
  EXPECT_TRUE(std::any_of(r.errors.begin(), r.errors.end(), [](const ConfigError& e) {
    return e.message.find("dims") != std::string::npos;
  }));
  for (std::size_t i = 1; i < r.errors.size(); ++i) {
    if (r.errors[i].line > 0) EXPECT_LE(r.errors[i - 1].line, r.errors[i].line);
  }
  EXPECT_EQ(format_error({4, "box.nmax", "bad"}, "a.ini"), "a.ini:4: bad");
}

TEST(ParseConfig, TypeMismatchAndEngineRules) {
  EXPECT_FALSE(parse_config("engine = ed\n[box]\ndims = 2x2\nperiodic = maybe\n").ok());
  EXPECT_FALSE(parse_config("engine = ed\n[box]\ndims = 2x2\nnmax = 2\n[potential]\nonsite = inf\n")
                   .ok());
  EXPECT_FALSE(parse_config("engine = classical\n[box]\ndims = 4\n").ok());
  EXPECT_FALSE(parse_config("engine = worldline\n[run]\nseed = 1\n[box]\ndims = 2\nnmax = 2\n").ok());
  EXPECT_FALSE(parse_config("engine = teleport\n[box]\ndims = 2\n").ok());
  EXPECT_FALSE(parse_config("[box]\ndims = 2\n").ok());
}

TEST(ParseConfig, OverridesWin) {
  const auto r = parse_config(std::string(kMinimalEd) + "[run]\nthreads = 4\nformat = csv\n",
                              {.seed = 9, .threads = 1, .format = Format::kJson, .out = "x.json"});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.config->run.threads, 1);
  EXPECT_EQ(r.config->run.seed, 9u);
  EXPECT_EQ(r.config->run.format, Format::kJson);
  EXPECT_EQ(r.config->run.out, "x.json");
}

TEST(CliProperty, EmitParseRoundTrip) {
  const std::vector<std::string> texts{
      kMinimalEd,
      "engine = cycles\n[box]\ndims = 3x3\nperiodic = true,false\n[run]\nseed = 18446744073709551615\n"
      "threads = 3\n[cycles]\nkind = power\ngamma = 2.5\nn = 1,4\nmethod = mcmc\nsweeps = 77\n",
      "engine = polymer\n[box]\ndims = 4x4\n[model]\nt = 0.1\nmu = 0.3\nfamilies = T,N,Q\nhq = 0.25\n"
      "[potential]\nonsite = inf\nu1 = 1\nusqrt2 = -0.25\ntail.2 = 0.125\ncutoff = 2\n"
      "[polymer]\nr = 0.2\nsize_cutoff = 5\n",
      "engine = contours\n[box]\ndims = 4x4\n[model]\nbeta = 0.5\n[scan]\nh = -0.3,0.3\n"
      "beta = 1,2\n[run]\nseed = 4\nformat = json\nout = o.json\ntimestamp = true\n"
      "[contours]\nparticles = 8\nslices = 12\n",
      "engine = worldline\n[box]\ndims = 2x3\nperiodic = false\n[run]\nseed = 2\n"
      "[worldline]\nsamples = 12\nchains = 2\nparticles = 3\n[model]\nalpha = 0.7853981633974483\n",
      "engine = classical\n[box]\ndims = 4x4\n[scan]\nmu = -1:0.1:5\n[classical]\nmax_sites = 16\n",
  };
  for (const auto& text : texts) {
    const auto first = parse_config(text);
    ASSERT_TRUE(first.ok()) << text;
    const std::string emitted = emit_config(*first.config);
    const auto second = parse_config(emitted);
    ASSERT_TRUE(second.ok()) << emitted;
    EXPECT_EQ(*second.config, *first.config) << emitted;
    EXPECT_EQ(emit_config(*second.config), emitted);
  }
}

TEST(RunAndReport, EdColumnsAndRows) {
  auto c = parse_ok(std::string(kMinimalEd) + "[scan]\nmu = -1:0.5:1\n");
  const auto r = run_and_report(c);
  EXPECT_EQ(r.engine, "ed");
  ASSERT_EQ(r.columns.size(), 5 + engine_columns(Engine::kEd).size());
  EXPECT_EQ(r.columns[0], "point");
  ASSERT_EQ(r.rows.size(), 5u);
  const int rho = column(r, "rho");
  const int z = column(r, "Z");
  EXPECT_NEAR(r.rows[2][rho].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(r.rows[2][z].get<double>(), 42.0267, 1e-3);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_EQ(r.rows[i][0].get<long>(), static_cast<long>(i));
    EXPECT_NEAR(r.rows[i][column(r, "mu")].get<double>(), -1 + 0.5 * i, 1e-12);
  }
}

TEST(RunAndReport, AtomicLimitPlateaus) {
  auto c = parse_ok(
      "engine = ed\n[box]\ndims = 2x2\n[model]\nbeta = 30\n[potential]\nonsite = inf\nu1 = 1\n"
      "[scan]\nmu = -1:0.1:5\n");
  const auto r = run_and_report(c);
  const int rho = column(r, "rho");
  const int mu = column(r, "mu");
  double previous = -1.0;
  int plateau_points = 0;
  for (const auto& row : r.rows) {
    const double v = row[rho].get<double>();
    const double m = row[mu].get<double>();
    EXPECT_GE(v, previous - 1e-12);
    previous = v;
    // Each site of the 2x2 torus has two distinct neighbours: steps at mu = 0 and mu = 2.
    const bool near_step = std::abs(m) < 0.35 || std::abs(m - 2.0) < 0.35;
    if (!near_step) {
      const double target = m < 0 ? 0.0 : (m < 2 ? 0.5 : 1.0);
      EXPECT_NEAR(v, target, 1e-3) << "mu=" << m;
      ++plateau_points;
    }
  }
  EXPECT_GT(plateau_points, 40);
}

TEST(RunAndReport, CyclesTwoSiteSwap) {
  auto c = parse_ok("engine = cycles\n[box]\ndims = 2\nperiodic = false\n[run]\nseed = 1\n"
                    "[cycles]\nn = 1\n");
  auto r = run_and_report(c);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_NEAR(r.rows[0][column(r, "p_tail")].get<double>(), 0.1192029220221175, 1e-12);
  c.cycles.method = Method::kMcmc;
  c.cycles.sweeps = 200000;
  r = run_and_report(c);
  EXPECT_NEAR(r.rows[0][column(r, "p_tail")].get<double>(), 0.1192, 5e-3);
}

TEST(RunAndReport, EngineErrorsCarryThePoint) {
  auto c = parse_ok("engine = polymer\n[box]\ndims = 2x2\n[model]\nt = 0.05\nh = 0.2\n"
                    "[potential]\nonsite = inf\n");
  try {
    run_and_report(c);
    FAIL() << "expected an engine failure";
  } catch (const EngineFailure& e) {
    EXPECT_EQ(e.point().h, 0.2);
    EXPECT_NE(std::string(e.what()).find("h=0.2"), std::string::npos) << e.what();
  }
}

TEST(RunAndReport, DeterministicAcrossRunsAndThreads) {
  const std::string text =
      "engine = worldline\n[box]\ndims = 2x2\n[model]\nt = 0.5\nbeta = 1\n[potential]\nonsite = inf\n"
      "[run]\nseed = 13\n[worldline]\nsamples = 300\n[scan]\nmu = -0.5,0,0.5\n";
  auto c = parse_ok(text);
  const auto first = run_and_report(c);
  const std::string a = render(first, Format::kCsv);
  EXPECT_EQ(render(run_and_report(c), Format::kCsv), a);
  c.run.threads = 2;
  EXPECT_EQ(run_and_report(c).rows, first.rows);
  c.run.threads = 1;
  c.run.seed = 14;
  EXPECT_NE(run_and_report(c).rows, first.rows);
}

TEST(CliProperty, NumericColumnsAreFinite) {
  const std::vector<std::string> texts{
      std::string(kMinimalEd) + "[scan]\nt = 0,0.5\n",
      "engine = ed\n[box]\ndims = 3x3\n[model]\nt = 0.1\n[potential]\nonsite = inf\n"
      "[ed]\nmethod = sector\n",
      "engine = cycles\n[box]\ndims = 2x2\n[run]\nseed = 3\n[cycles]\nn = 1,2\n",
      "engine = cycles\n[box]\ndims = 4x4\n[run]\nseed = 3\n[cycles]\nsweeps = 500\nn = 2\n",
      "engine = polymer\n[box]\ndims = 2x2\n[model]\nt = 0.05\n[potential]\nonsite = inf\n"
      "[polymer]\nsize_cutoff = 4\n",
      "engine = worldline\n[box]\ndims = 2\n[model]\nt = 0.5\n[potential]\nonsite = inf\n"
      "[run]\nseed = 5\n[worldline]\nsamples = 200\n",
      "engine = classical\n[box]\ndims = 2x2\n[potential]\nu1 = 1\n[scan]\nmu = 0,1,3\n",
      "engine = contours\n[box]\ndims = 2x2\n[model]\nt = 0.2\n[potential]\nonsite = inf\n"
      "[run]\nseed = 6\n[contours]\nsamples = 20\n",
  };
  for (const auto& text : texts) {
    const auto r = run_and_report(parse_ok(text));
    ASSERT_FALSE(r.rows.empty()) << text;
    for (const auto& row : r.rows) {
      ASSERT_EQ(row.size(), r.columns.size());
      for (const auto& cell : row) {
        if (cell.is_number_float()) EXPECT_TRUE(std::isfinite(cell.get<double>())) << text;
      }
    }
  }
}

TEST(Report, CsvAndJsonLayout) {
  Report r{"1.2.3", "ed", "engine = ed\n[box]\ndims = 2\n", "", {"point", "x", "s"}, {}};
  r.rows.push_back({0, 0.5, "a,b"});
  r.rows.push_back({1, nullptr, "plain"});
  std::ostringstream csv;
  write_csv(csv, r);
  EXPECT_EQ(csv.str(),
            "# bosonlab 1.2.3\n# engine: ed\n# config:\n#   engine = ed\n#   [box]\n#   dims = 2\n"
            "point,x,s\n0,0.5,\"a,b\"\n1,,plain\n");
  const auto j = nlohmann::json::parse(render(r, Format::kJson));
  EXPECT_EQ(j["version"], "1.2.3");
  EXPECT_EQ(j["rows"][0]["s"], "a,b");
  EXPECT_TRUE(j["rows"][1]["x"].is_null());
  EXPECT_FALSE(j.contains("timestamp"));
}

#ifdef BOSONLAB_CLI_EXE
namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BOSONLAB_CLI_EXE) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Executable : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bosonlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }
  fs::path dir_;
};

TEST_F(Executable, ExitCodesAndNoPartialOutput) {
  const auto good = write("good.ini", kMinimalEd);
  const auto bad = write("bad.ini", "engine = cycles\n[box]\ndims = 2\n");
  const auto failing = write("fail.ini", "engine = polymer\n[box]\ndims = 2x2\n[model]\nh = 0.1\nt = 0.01\n");
  EXPECT_EQ(run_cli("--config " + good.string() + " --out " + (dir_ / "g.csv").string()), 0);
  EXPECT_TRUE(fs::exists(dir_ / "g.csv"));
  EXPECT_EQ(run_cli("--config " + bad.string() + " --out " + (dir_ / "b.csv").string()), 2);
  EXPECT_FALSE(fs::exists(dir_ / "b.csv"));
  EXPECT_EQ(run_cli("--config " + (dir_ / "absent.ini").string()), 2);
  EXPECT_EQ(run_cli("--config " + failing.string() + " --out " + (dir_ / "f.csv").string()), 3);
  EXPECT_FALSE(fs::exists(dir_ / "f.csv"));
  EXPECT_EQ(run_cli("--config " + bad.string() + " --seed 4 --out " + (dir_ / "s.json").string() +
                    " --format json"),
            0);
  EXPECT_NO_THROW(nlohmann::json::parse(slurp(dir_ / "s.json")));
  for (const auto& entry : fs::directory_iterator(dir_)) {
    EXPECT_EQ(entry.path().string().find(".tmp"), std::string::npos) << entry.path();
  }
}

TEST_F(Executable, ByteIdenticalReports) {
  const auto cfg = write("wl.ini",
                         "engine = worldline\n[box]\ndims = 2x2\n[model]\nt = 0.5\n[potential]\n"
                         "onsite = inf\n[run]\nseed = 21\nthreads = 1\n[worldline]\nsamples = 500\n"
                         "[scan]\nmu = 0,0.5\n");
  ASSERT_EQ(run_cli("--config " + cfg.string() + " --out " + (dir_ / "a.csv").string()), 0);
  ASSERT_EQ(run_cli("--config " + cfg.string() + " --out " + (dir_ / "b.csv").string()), 0);
  const std::string a = slurp(dir_ / "a.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir_ / "b.csv"));
}
#endif

}  // namespace
}  // namespace bosonlab::cli
