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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bosonlab_cli/config.hpp"
#include "bosonlab_cli/report.hpp"
#include "bosonlab_cli/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitEngine = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace bosonlab::cli;

  CLI::App app{"bosonlab: lattice boson experiments driven by a config file"};
  app.set_version_flag("--version", std::string("bosonlab ") + library_version());
  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string format;
  bool print_config = false;
  app.add_option("--config,config", config_path, "Config file")->required();
  auto* out_opt = app.add_option("--out", out, "Output file (default: stdout)");
  auto* seed_opt = app.add_option("--seed", seed, "Base seed for stochastic engines");
  auto* threads_opt =
      app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  auto* format_opt =
      app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--print-config", print_config, "Print the validated config and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "bosonlab: cannot read config '" << config_path << "'\n";
    return kExitInvalid;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  Overrides ov;
  if (*seed_opt) ov.seed = seed;
  if (*threads_opt) ov.threads = threads;
  if (*format_opt) ov.format = format == "json" ? Format::kJson : Format::kCsv;
  if (*out_opt) ov.out = out;

  const ParseResult parsed = parse_config(buf.str(), ov);
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors) std::cerr << format_error(e, config_path) << "\n";
    return kExitInvalid;
  }
  const RunConfig& config = *parsed.config;
  if (print_config) {
    std::cout << emit_config(config);
    return kExitOk;
  }

  try {
    const Report report = run_and_report(config);
    write_report(report, config.run.format, config.run.out);
  } catch (const std::exception& e) {
    std::cerr << "bosonlab: " << e.what() << "\n";
    return kExitEngine;
  }
  return kExitOk;
}
