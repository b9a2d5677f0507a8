// Copyright 2026 The jccat Authors. All Rights Reserved.
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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "jccat/config.hpp"
#include "jccat/run.hpp"

namespace jccat {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("jccat_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(JCCAT_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(ParseNumber, Expressions) {
  EXPECT_DOUBLE_EQ(parse_number("2pi"), 2 * M_PI);
  EXPECT_DOUBLE_EQ(parse_number("0.1 * pi"), 0.1 * M_PI);
  EXPECT_DOUBLE_EQ(parse_number("1/sqrt(2)"), 1 / std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(parse_number("-3e-2"), -0.03);
  EXPECT_DOUBLE_EQ(parse_number("7.5pi/pi"), 7.5);
  EXPECT_THROW(parse_number("2 +"), config_error);
  EXPECT_THROW(parse_number("tau"), config_error);
  EXPECT_THROW(parse_integer("2.5"), config_error);
}

TEST(ParseList, CommasAndLinspace) {
  EXPECT_EQ(parse_list("1, 2.5, pi").size(), 3u);
  const auto v = parse_list("linspace(0, 40, 4001)");
  ASSERT_EQ(v.size(), 4001u);
  EXPECT_DOUBLE_EQ(v[1], 0.01);
  EXPECT_DOUBLE_EQ(v.back(), 40.0);
  EXPECT_THROW(parse_list("linspace(0, 1)"), config_error);
  EXPECT_THROW(parse_list("1,,2"), config_error);
}

TEST(ParseConfig, Rejections) {
  EXPECT_THROW(parse_config("experiment = wigner\nrun.tau = 5\nbogus = 1\n"), config_error);
  EXPECT_THROW(parse_config("experiment = wigner\nrun.tau = 5\nrun.tau = 6\n"), config_error);
  EXPECT_THROW(parse_config("experiment = g2-vs-time\nrun.tau_grid = \n"), config_error);
  EXPECT_THROW(parse_config("experiment = g2-vs-time\n"), config_error);
  EXPECT_THROW(parse_config("experiment = wigner\n"), config_error);
  EXPECT_THROW(parse_config("experiment = nope\n"), config_error);
  EXPECT_THROW(parse_config("run.tau = 1\n"), config_error);
  EXPECT_THROW(parse_config("experiment = wigner\nrun.tau = 1\nparams.detuning = 0.1\n"), config_error);
  EXPECT_THROW(parse_config("experiment = wigner\nrun.tau = 1\nparams.n_trunc = -1\n"), config_error);
  EXPECT_THROW(parse_config("experiment = wigner\nrun.tau = 1\ndiss.kappa = -1\n"), config_error);
  EXPECT_THROW(parse_config("experiment = g2-vs-time\nrun.tau_grid = 2, 1\n"), config_error);
}

TEST(ParseConfig, ValuesAndComments) {
  const RunConfig c = parse_config(
      "# comment\nexperiment = dissipative  # trailing\nparams.g = 0.1pi\n"
      "diss.temperature = 1\ncavity.alpha_re = 1/sqrt(2)\nrun.tau_grid = linspace(0, 1, 3)\n"
      "meta.note = anything\n");
  EXPECT_EQ(c.experiment, Experiment::dissipative);
  EXPECT_DOUBLE_EQ(c.params.g, 0.1 * M_PI);
  EXPECT_DOUBLE_EQ(c.diss.n_th, 1.0 / (std::exp(1.0) - 1.0));
  EXPECT_DOUBLE_EQ(c.alpha.real(), 1 / std::sqrt(2.0));
  EXPECT_EQ(c.tau_grid.size(), 3u);
}

TEST(SerializeConfig, RoundTripsExactly) {
  RunConfig c = parse_config(
      "experiment = multicavity\nparams.g = pi/3\nparams.n_trunc = 7\nrun.tau = 1/3\n"
      "cavity.alpha_im = 0.1\nrun.n_cavities = 1, 3\nseed = 99\n");
  const RunConfig back = parse_config(serialize_config(c));
  EXPECT_EQ(serialize_config(back), serialize_config(c));
  EXPECT_EQ(back.params.g, c.params.g);
  EXPECT_EQ(*back.tau, *c.tau);
  EXPECT_EQ(back.alpha, c.alpha);
  EXPECT_EQ(back.n_cavities, c.n_cavities);
  EXPECT_EQ(back.seed, 99u);
}

TEST(Experiment, MetadataReproducesTheRun) {
  const RunConfig c = parse_config(
      "experiment = g2-vs-time\nparams.n_trunc = 16\nrun.tau_grid = linspace(0, 2, 21)\n");
  const RunResult first = compute_experiment(c, 1);
  const RunResult again = compute_experiment(parse_config(first.metadata), 3);
  EXPECT_EQ(first.csv, again.csv);
  EXPECT_EQ(first.csv.substr(0, first.csv.find('\n')), "t,g2,delta,q,re_r,im_r");
}

TEST(Experiment, CsvHeaders) {
  const std::string base = "params.n_trunc = 8\ngrid.points = 41\ncavity.tail_tol = 1e-2\n";
  const auto header = [&](const std::string& extra) {
    const std::string csv = compute_experiment(parse_config(base + extra)).csv;
    return csv.substr(0, csv.find('\n'));
  };
  EXPECT_EQ(header("experiment = wigner\nrun.tau = 1\n"), "x,p,w");
  EXPECT_EQ(header("experiment = wln-vs-time\nrun.tau_grid = 0, 1\n"), "t,wln,delta");
  EXPECT_EQ(header("experiment = squeezing\nrun.tau_grid = 0, 1\n"), "t,xi,delta");
  EXPECT_EQ(header("experiment = scan-alpha\nrun.alpha_grid = 0.5\nrun.gtau_bound = 2\nrun.tau_step = 0.1\n"),
            "alpha,min_g2,argmin_tau");
  EXPECT_EQ(header("experiment = catalytic-set\nrun.n_samples = 3\n"),
            "tau,q,re_r,im_r,g2,feasible,delta");
  EXPECT_EQ(header("experiment = multicavity\nrun.tau = 1\nrun.n_cavities = 1, 2\n"),
            "n_cavities,fidelity");
}

TEST(Cli, ExitCodesAndOutputs) {
  const fs::path dir = scratch_dir("cli");
  const fs::path good = dir / "good.conf";
  std::ofstream(good) << "experiment = g2-vs-time\nparams.n_trunc = 16\nrun.tau_grid = linspace(0, 1, 11)\n";
  const fs::path bad = dir / "bad.conf";
  std::ofstream(bad) << "experiment = g2-vs-time\nunknown.key = 1\n";

  EXPECT_EQ(run_cli("--version"), 0);
  EXPECT_EQ(run_cli(""), 1);
  EXPECT_EQ(run_cli("run --config " + bad.string()), 2);
  EXPECT_EQ(run_cli("run --config " + (dir / "missing.conf").string()), 4);

  EXPECT_EQ(run_cli("run --config " + good.string() + " --output " + (dir / "a").string()), 0);
  EXPECT_EQ(run_cli("run --config " + good.string() + " --threads 4 --output " + (dir / "b").string()), 0);
  EXPECT_EQ(read_file(dir / "a" / "g2_vs_t.csv"), read_file(dir / "b" / "g2_vs_t.csv"));
  EXPECT_TRUE(fs::exists(dir / "a" / "metadata.conf"));

  // metadata.conf is itself a valid config that regenerates the CSV.
  EXPECT_EQ(run_cli("run --config " + (dir / "a" / "metadata.conf").string() + " --output " +
                    (dir / "c").string()),
            0);
  EXPECT_EQ(read_file(dir / "a" / "g2_vs_t.csv"), read_file(dir / "c" / "g2_vs_t.csv"));
  fs::remove_all(dir);
}

}  // namespace
}  // namespace jccat
