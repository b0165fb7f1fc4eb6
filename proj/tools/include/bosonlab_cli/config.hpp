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

#ifndef BOSONLAB_CLI_CONFIG_HPP
#define BOSONLAB_CLI_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bosonlab/cycles.hpp"
#include "bosonlab/model.hpp"

namespace bosonlab::cli {

enum class Engine { kEd, kCycles, kPolymer, kWorldline, kClassical, kContours };
enum class Format { kCsv, kJson };
enum class Method { kAuto, kFull, kSector, kExact, kMcmc };

const char* engine_name(Engine e);
const char* format_name(Format f);
const char* method_name(Method m);
bool is_stochastic(Engine e);

struct BoxConfig {
  std::vector<int> dims;
  std::vector<bool> periodic{true};
  int nmax = 1;
  bool operator==(const BoxConfig&) const = default;
};

struct ModelConfig {
  double t = 0.0;
  double mu = 0.0;
  double h = 0.0;
  double alpha = 0.0;
  double hq = 0.0;
  double beta = 1.0;
  std::vector<Family> families{Family::kT, Family::kV, Family::kN, Family::kP};
  bool operator==(const ModelConfig&) const = default;
};

struct PotentialConfig {
  double onsite = 0.0;
  double u1 = 0.0;
  double usqrt2 = 0.0;
  double cutoff = 1.4142135623730951;
  std::map<double, double> tail;
  bool operator==(const PotentialConfig&) const = default;
};

/// Scanned parameters; an absent key uses the [model] value.
struct ScanConfig {
  std::map<std::string, std::vector<double>> grids;
  bool operator==(const ScanConfig&) const = default;
};

struct RunSection {
  std::optional<std::uint64_t> seed;
  int threads = 1;
  Format format = Format::kCsv;
  std::string out;
  bool timestamp = false;
  bool operator==(const RunSection&) const = default;
};

struct EdSection {
  Method method = Method::kAuto;
  double dmu = 1e-3;
  bool operator==(const EdSection&) const = default;
};

struct CyclesSection {
  XiKind kind = XiKind::kNearestNeighbor;
  double gamma = 2.0;
  double cutoff = 10.0;
  Method method = Method::kAuto;
  long sweeps = 100000;
  int batches = 50;
  std::vector<int> n{1, 2, 3};
  int threshold = 0;
  bool operator==(const CyclesSection&) const = default;
};

struct PolymerSection {
  double r = 0.1;
  int size_cutoff = 6;
  int k_cutoff = 3;
  bool operator==(const PolymerSection&) const = default;
};

struct WorldlineSection {
  long samples = 10000;
  int chains = 1;
  std::optional<int> particles;
  bool operator==(const WorldlineSection&) const = default;
};

struct ClassicalSection {
  int max_sites = 20;
  bool operator==(const ClassicalSection&) const = default;
};

struct ContoursSection {
  int slices = 0;  // 0: default_slice_count
  long samples = 100;
  std::optional<int> particles;
  bool operator==(const ContoursSection&) const = default;
};

struct RunConfig {
  Engine engine = Engine::kEd;
  BoxConfig box;
  ModelConfig model;
  PotentialConfig potential;
  ScanConfig scan;
  RunSection run;
  EdSection ed;
  CyclesSection cycles;
  PolymerSection polymer;
  WorldlineSection worldline;
  ClassicalSection classical;
  ContoursSection contours;
  bool operator==(const RunConfig&) const = default;
};

struct ConfigError {
  int line = 0;  // 0 when not tied to a line
  std::string key;
  std::string message;
};

std::string format_error(const ConfigError& e, std::string_view source = "config");

/// Command-line values that take precedence over the file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<Format> format;
  std::optional<std::string> out;
};

struct ParseResult {
  std::optional<RunConfig> config;
  std::vector<ConfigError> errors;
  bool ok() const { return config.has_value(); }
};

/// Parses and validates; collects every violation.
ParseResult parse_config(std::string_view text, const Overrides& overrides = {});

/// Canonical text form; parse_config(emit_config(c)) reproduces c.
std::string emit_config(const RunConfig& config);

/// "a:step:b" (inclusive, round((b-a)/step)+1 points) or "x,y,z".
std::vector<double> parse_grid(std::string_view text);

/// Grid points in nesting order beta, mu, h, t (t varies fastest).
std::vector<ModelParams> grid_points(const RunConfig& config);

LatticeBox make_box(const RunConfig& config);
PotentialSpec make_potential(const RunConfig& config);
FamilySet make_families(const RunConfig& config);

}  // namespace bosonlab::cli

#endif  // BOSONLAB_CLI_CONFIG_HPP
