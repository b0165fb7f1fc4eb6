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

#ifndef BOSONLAB_CLI_RUNNER_HPP
#define BOSONLAB_CLI_RUNNER_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosonlab_cli/config.hpp"
#include "bosonlab_cli/report.hpp"

namespace bosonlab::cli {

/// An engine failed at one grid point; what() names the point.
class EngineFailure : public std::runtime_error {
 public:
  EngineFailure(const ModelParams& point, const std::string& message);
  const ModelParams& point() const { return point_; }

 private:
  ModelParams point_;
};

/// splitmix64 of base + index; the seed of grid point `index`.
std::uint64_t point_seed(std::uint64_t base, std::uint64_t index);

/// Engine columns, after the leading point, beta, mu, h, t.
std::vector<std::string> engine_columns(Engine engine);

/// Rows of one grid point (engine columns only).
std::vector<std::vector<Cell>> run_point(const RunConfig& config, const ModelParams& point,
                                         std::uint64_t seed);

/// Runs every grid point on run.threads workers and assembles the report in
/// grid order. Throws EngineFailure for the first failing point.
Report run_and_report(const RunConfig& config);

}  // namespace bosonlab::cli

#endif  // BOSONLAB_CLI_RUNNER_HPP
