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

#ifndef BOSONLAB_CLI_REPORT_HPP
#define BOSONLAB_CLI_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bosonlab_cli/config.hpp"

namespace bosonlab::cli {

/// Cells are JSON scalars; null marks a value that was not computed.
using Cell = nlohmann::json;

struct Report {
  std::string version;
  std::string engine;
  std::string config_text;
  std::string timestamp;  // empty unless requested
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

const char* library_version();

/// "# " metadata lines, a header row, then one line per row. Numbers use
/// the shortest round-trip form; null cells are empty.
void write_csv(std::ostream& os, const Report& report);

/// {"version", "engine", "config", ["timestamp"], "columns", "rows"} with
/// rows as objects keyed by column.
void write_json(std::ostream& os, const Report& report);

std::string render(const Report& report, Format format);

/// Writes through a temporary file in the same directory, then renames.
/// An empty path writes to stdout.
void write_report(const Report& report, Format format, const std::string& path);

std::string utc_timestamp();

}  // namespace bosonlab::cli

#endif  // BOSONLAB_CLI_REPORT_HPP
