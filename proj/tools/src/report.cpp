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

#include "bosonlab_cli/report.hpp"

#include <unistd.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#ifndef BOSONLAB_VERSION
#define BOSONLAB_VERSION "0.0.0"
#endif

namespace bosonlab::cli {

namespace {

std::string csv_cell(const Cell& c) {
  if (c.is_null()) return "";
  if (c.is_string()) {
    const auto& s = c.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  return c.dump();
}

}  // namespace

const char* library_version() { return BOSONLAB_VERSION; }

void write_csv(std::ostream& os, const Report& report) {
  os << "# bosonlab " << report.version << "\n";
  os << "# engine: " << report.engine << "\n";
  if (!report.timestamp.empty()) os << "# timestamp: " << report.timestamp << "\n";
  os << "# config:\n";
  std::istringstream in(report.config_text);
  for (std::string line; std::getline(in, line);) {
    os << (line.empty() ? "#" : "#   " + line) << "\n";
  }
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    os << (i ? "," : "") << report.columns[i];
  }
  os << "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << "\n";
  }
}

void write_json(std::ostream& os, const Report& report) {
  nlohmann::ordered_json doc;
  doc["version"] = report.version;
  doc["engine"] = report.engine;
  doc["config"] = report.config_text;
  if (!report.timestamp.empty()) doc["timestamp"] = report.timestamp;
  doc["columns"] = report.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) {
      obj[report.columns[i]] = row[i];
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << "\n";
}

std::string render(const Report& report, Format format) {
  std::ostringstream os;
  if (format == Format::kCsv) {
    write_csv(os, report);
  } else {
    write_json(os, report);
  }
  return os.str();
}

void write_report(const Report& report, Format format, const std::string& path) {
  const std::string text = render(report, format);
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw std::runtime_error("cannot rename '" + tmp.string() + "' to '" + path +
                             "': " + ec.message());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace bosonlab::cli
