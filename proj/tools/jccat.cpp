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

// Command-line front end:
//
//   jccat run --config <path> [--output <dir>] [--threads <n>]
//   jccat --version
//
// Exit codes: 0 success, 1 usage error, 2 invalid configuration,
// 3 computation error, 4 I/O error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "jccat/config.hpp"
#include "jccat/errors.hpp"
#include "jccat/run.hpp"
#include "jccat/version.hpp"

namespace {

int threads_from_env() {
  const char* env = std::getenv("THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    const long v = jccat::parse_integer(env);
    if (v >= 1) return static_cast<int>(v);
  } catch (const jccat::config_error&) {
  }
  throw jccat::config_error(std::string("THREADS must be a positive integer, got '") + env + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Catalytic Jaynes-Cummings simulator"};
  app.set_version_flag("--version", std::string("jccat ") + jccat::kVersion + " (interface revision " +
                                        std::to_string(jccat::kInterfaceRevision) + ")");
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--output", output_dir, "Output directory (overrides output_dir)");
  run->add_option("--threads", threads, "Worker threads (overrides THREADS)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const jccat::RunConfig config = jccat::load_config(config_path);
    const int n_threads = threads > 0 ? threads : threads_from_env();
    const std::string out = output_dir.empty() ? config.output_dir : output_dir;
    const jccat::RunResult res = jccat::run_experiment(config, out, n_threads);
    std::cout << "wrote " << out << "/" << res.csv_name << " and " << out << "/metadata.conf\n";
    return 0;
  } catch (const jccat::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const jccat::io_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << '\n';
    return 3;
  }
}
