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

#include "bosonlab_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bosonlab/errors.hpp"

namespace bosonlab::cli {

namespace {

constexpr long kMaxGridPoints = 1000000;

// Malformed value; the message names the expected type.
struct ValueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double to_double(std::string_view s) {
  s = trim(s);
  const std::string l = lower(s);
  if (l == "inf" || l == "+inf" || l == "infinity") return std::numeric_limits<double>::infinity();
  if (l == "-inf" || l == "-infinity") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || std::isnan(v)) {
    throw ValueError("expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

template <typename Int>
Int to_int(std::string_view s) {
  s = trim(s);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValueError("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

bool to_bool(std::string_view s) {
  const std::string l = lower(trim(s));
  if (l == "true" || l == "yes" || l == "on" || l == "1") return true;
  if (l == "false" || l == "no" || l == "off" || l == "0") return false;
  throw ValueError("expected true or false, got '" + std::string(s) + "'");
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::vector<int> to_dims(std::string_view s) {
  std::vector<int> dims;
  for (auto part : split(s, 'x')) dims.push_back(to_int<int>(part));
  return dims;
}

std::vector<bool> to_bools(std::string_view s) {
  std::vector<bool> out;
  for (auto part : split(s, ',')) out.push_back(to_bool(part));
  return out;
}

std::vector<int> to_ints(std::string_view s) {
  std::vector<int> out;
  for (auto part : split(s, ',')) out.push_back(to_int<int>(part));
  return out;
}

Family to_family(std::string_view s) {
  const std::string u = lower(trim(s));
  if (u == "t") return Family::kT;
  if (u == "v") return Family::kV;
  if (u == "n") return Family::kN;
  if (u == "p") return Family::kP;
  if (u == "q") return Family::kQ;
  throw ValueError("unknown term family '" + std::string(s) + "' (expected T, V, N, P or Q)");
}

Engine to_engine(std::string_view s) {
  const std::string l = lower(trim(s));
  if (l == "ed") return Engine::kEd;
  if (l == "cycles") return Engine::kCycles;
  if (l == "polymer") return Engine::kPolymer;
  if (l == "worldline") return Engine::kWorldline;
  if (l == "classical") return Engine::kClassical;
  if (l == "contours") return Engine::kContours;
  throw ValueError("unknown engine '" + std::string(s) +
                   "' (expected ed, cycles, polymer, worldline, classical or contours)");
}

Format to_format(std::string_view s) {
  const std::string l = lower(trim(s));
  if (l == "csv") return Format::kCsv;
  if (l == "json") return Format::kJson;
  throw ValueError("unknown format '" + std::string(s) + "' (expected csv or json)");
}

Method to_method(std::string_view s) {
  const std::string l = lower(trim(s));
  if (l == "auto") return Method::kAuto;
  if (l == "full") return Method::kFull;
  if (l == "sector") return Method::kSector;
  if (l == "exact") return Method::kExact;
  if (l == "mcmc") return Method::kMcmc;
  throw ValueError("unknown method '" + std::string(s) + "'");
}

XiKind to_kind(std::string_view s) {
  const std::string l = lower(trim(s));
  if (l == "quadratic") return XiKind::kQuadratic;
  if (l == "power") return XiKind::kPower;
  if (l == "nearest-neighbor" || l == "nearest-neighbour" || l == "nn") {
    return XiKind::kNearestNeighbor;
  }
  throw ValueError("unknown xi kind '" + std::string(s) +
                   "' (expected quadratic, power or nearest-neighbor)");
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"engine", [](RunConfig& c, std::string_view v) { c.engine = to_engine(v); }},
      {"box.dims", [](RunConfig& c, std::string_view v) { c.box.dims = to_dims(v); }},
      {"box.periodic", [](RunConfig& c, std::string_view v) { c.box.periodic = to_bools(v); }},
      {"box.nmax", [](RunConfig& c, std::string_view v) { c.box.nmax = to_int<int>(v); }},
      {"model.t", [](RunConfig& c, std::string_view v) { c.model.t = to_double(v); }},
      {"model.mu", [](RunConfig& c, std::string_view v) { c.model.mu = to_double(v); }},
      {"model.h", [](RunConfig& c, std::string_view v) { c.model.h = to_double(v); }},
      {"model.alpha", [](RunConfig& c, std::string_view v) { c.model.alpha = to_double(v); }},
      {"model.hq", [](RunConfig& c, std::string_view v) { c.model.hq = to_double(v); }},
      {"model.beta", [](RunConfig& c, std::string_view v) { c.model.beta = to_double(v); }},
      {"model.families",
       [](RunConfig& c, std::string_view v) {
         c.model.families.clear();
         for (auto part : split(v, ',')) {
           const Family f = to_family(part);
           if (std::find(c.model.families.begin(), c.model.families.end(), f) ==
               c.model.families.end()) {
             c.model.families.push_back(f);
           }
         }
         std::sort(c.model.families.begin(), c.model.families.end());
       }},
      {"potential.onsite", [](RunConfig& c, std::string_view v) { c.potential.onsite = to_double(v); }},
      {"potential.u1", [](RunConfig& c, std::string_view v) { c.potential.u1 = to_double(v); }},
      {"potential.usqrt2", [](RunConfig& c, std::string_view v) { c.potential.usqrt2 = to_double(v); }},
      {"potential.cutoff", [](RunConfig& c, std::string_view v) { c.potential.cutoff = to_double(v); }},
      {"scan.beta", [](RunConfig& c, std::string_view v) { c.scan.grids["beta"] = parse_grid(v); }},
      {"scan.mu", [](RunConfig& c, std::string_view v) { c.scan.grids["mu"] = parse_grid(v); }},
      {"scan.h", [](RunConfig& c, std::string_view v) { c.scan.grids["h"] = parse_grid(v); }},
      {"scan.t", [](RunConfig& c, std::string_view v) { c.scan.grids["t"] = parse_grid(v); }},
      {"run.seed", [](RunConfig& c, std::string_view v) { c.run.seed = to_int<std::uint64_t>(v); }},
      {"run.threads", [](RunConfig& c, std::string_view v) { c.run.threads = to_int<int>(v); }},
      {"run.format", [](RunConfig& c, std::string_view v) { c.run.format = to_format(v); }},
      {"run.out", [](RunConfig& c, std::string_view v) { c.run.out = std::string(v); }},
      {"run.timestamp", [](RunConfig& c, std::string_view v) { c.run.timestamp = to_bool(v); }},
      {"ed.method", [](RunConfig& c, std::string_view v) { c.ed.method = to_method(v); }},
      {"ed.dmu", [](RunConfig& c, std::string_view v) { c.ed.dmu = to_double(v); }},
      {"cycles.kind", [](RunConfig& c, std::string_view v) { c.cycles.kind = to_kind(v); }},
      {"cycles.gamma", [](RunConfig& c, std::string_view v) { c.cycles.gamma = to_double(v); }},
      {"cycles.cutoff", [](RunConfig& c, std::string_view v) { c.cycles.cutoff = to_double(v); }},
      {"cycles.method", [](RunConfig& c, std::string_view v) { c.cycles.method = to_method(v); }},
      {"cycles.sweeps", [](RunConfig& c, std::string_view v) { c.cycles.sweeps = to_int<long>(v); }},
      {"cycles.batches", [](RunConfig& c, std::string_view v) { c.cycles.batches = to_int<int>(v); }},
      {"cycles.n", [](RunConfig& c, std::string_view v) { c.cycles.n = to_ints(v); }},
      {"cycles.threshold",
       [](RunConfig& c, std::string_view v) { c.cycles.threshold = to_int<int>(v); }},
      {"polymer.r", [](RunConfig& c, std::string_view v) { c.polymer.r = to_double(v); }},
      {"polymer.size_cutoff",
       [](RunConfig& c, std::string_view v) { c.polymer.size_cutoff = to_int<int>(v); }},
      {"polymer.k_cutoff",
       [](RunConfig& c, std::string_view v) { c.polymer.k_cutoff = to_int<int>(v); }},
      {"worldline.samples",
       [](RunConfig& c, std::string_view v) { c.worldline.samples = to_int<long>(v); }},
      {"worldline.chains",
       [](RunConfig& c, std::string_view v) { c.worldline.chains = to_int<int>(v); }},
      {"worldline.particles",
       [](RunConfig& c, std::string_view v) { c.worldline.particles = to_int<int>(v); }},
      {"classical.max_sites",
       [](RunConfig& c, std::string_view v) { c.classical.max_sites = to_int<int>(v); }},
      {"contours.slices",
       [](RunConfig& c, std::string_view v) { c.contours.slices = to_int<int>(v); }},
      {"contours.samples",
       [](RunConfig& c, std::string_view v) { c.contours.samples = to_int<long>(v); }},
      {"contours.particles",
       [](RunConfig& c, std::string_view v) { c.contours.particles = to_int<int>(v); }},
  };
  return table;
}

const std::set<std::string> kSections = {"box",       "model",  "potential", "scan",
                                         "run",       "ed",     "cycles",    "polymer",
                                         "worldline", "classical", "contours"};

class Validator {
 public:
  Validator(const std::map<std::string, int>& lines, std::vector<ConfigError>& errors)
      : lines_(lines), errors_(errors) {}

  void fail(const std::string& key, const std::string& message) {
    auto it = lines_.find(key);
    errors_.push_back({it == lines_.end() ? 0 : it->second, key, message});
  }
  void require(bool ok, const std::string& key, const std::string& message) {
    if (!ok) fail(key, message);
  }

 private:
  const std::map<std::string, int>& lines_;
  std::vector<ConfigError>& errors_;
};

void validate(const RunConfig& c, const std::map<std::string, int>& lines,
              std::vector<ConfigError>& errors) {
  Validator v(lines, errors);
  v.require(lines.count("engine") > 0, "engine", "missing required key 'engine'");
  if (c.box.dims.empty()) {
    v.fail("box.dims", "missing required key 'dims' in [box]");
  } else {
    for (int d : c.box.dims) v.require(d >= 1, "box.dims", "every box dimension must be >= 1");
    v.require(c.box.periodic.size() == 1 || c.box.periodic.size() == c.box.dims.size(),
              "box.periodic", "periodic needs one flag or one flag per axis");
  }
  v.require(c.box.nmax >= 1, "box.nmax", "nmax must be >= 1");
  v.require(!c.model.families.empty(), "model.families", "at least one term family is required");

  try {
    make_potential(c).validate();
  } catch (const std::exception& e) {
    v.fail("potential.onsite", e.what());
  }
  if (std::isinf(c.potential.onsite)) {
    v.require(c.potential.onsite > 0 && c.box.nmax == 1, "potential.onsite",
              "a hard core (onsite = inf) requires nmax = 1");
  }

  for (const auto& [name, grid] : c.scan.grids) {
    v.require(!grid.empty(), "scan." + name, "grid is empty");
  }
  std::set<std::string> bad;
  for (const auto& p : grid_points(c)) {
    try {
      p.validate();
    } catch (const std::exception& e) {
      const std::string key = !(p.beta > 0) ? "beta" : "alpha";
      const std::string full = c.scan.grids.count(key) ? "scan." + key : "model." + key;
      if (bad.insert(full).second) v.fail(full, e.what());
    }
  }

  v.require(c.run.threads >= 1, "run.threads", "threads must be >= 1");
  if (is_stochastic(c.engine)) {
    v.require(c.run.seed.has_value(), "run.seed",
              std::string("missing required key 'seed' (engine '") + engine_name(c.engine) +
                  "' is stochastic; set [run] seed or pass --seed)");
  }

  const int sites = [&] {
    long s = 1;
    for (int d : c.box.dims) s *= std::max(d, 1);
    return static_cast<int>(std::min<long>(s, std::numeric_limits<int>::max()));
  }();
  switch (c.engine) {
    case Engine::kEd:
      v.require(c.ed.method == Method::kAuto || c.ed.method == Method::kFull ||
                    c.ed.method == Method::kSector,
                "ed.method", "ed method must be auto, full or sector");
      v.require(c.ed.dmu > 0, "ed.dmu", "dmu must be positive");
      break;
    case Engine::kCycles:
      v.require(c.cycles.method == Method::kAuto || c.cycles.method == Method::kExact ||
                    c.cycles.method == Method::kMcmc,
                "cycles.method", "cycles method must be auto, exact or mcmc");
      v.require(c.cycles.sweeps >= 1, "cycles.sweeps", "sweeps must be >= 1");
      v.require(c.cycles.batches >= 1, "cycles.batches", "batches must be >= 1");
      v.require(c.cycles.cutoff > 0, "cycles.cutoff", "cutoff must be positive");
      v.require(c.cycles.kind != XiKind::kPower || c.cycles.gamma >= 1, "cycles.gamma",
                "gamma must be >= 1");
      v.require(!c.cycles.n.empty(), "cycles.n", "at least one n is required");
      for (int n : c.cycles.n) v.require(n >= 1, "cycles.n", "every n must be >= 1");
      if (c.cycles.method == Method::kExact) {
        v.require(sites <= kBruteForceSites, "cycles.method",
                  "exact enumeration supports at most 9 sites");
      }
      break;
    case Engine::kPolymer:
      v.require(c.polymer.r >= 0, "polymer.r", "r must be >= 0");
      v.require(c.polymer.size_cutoff >= 2, "polymer.size_cutoff", "size_cutoff must be >= 2");
      v.require(c.polymer.k_cutoff >= 1, "polymer.k_cutoff", "k_cutoff must be >= 1");
      break;
    case Engine::kWorldline:
      v.require(c.worldline.samples >= 1, "worldline.samples", "samples must be >= 1");
      v.require(c.worldline.chains >= 1, "worldline.chains", "chains must be >= 1");
      if (c.worldline.particles) {
        v.require(*c.worldline.particles >= 0 && *c.worldline.particles <= sites,
                  "worldline.particles", "particles must lie in [0, number of sites]");
      }
      v.require(c.box.nmax == 1, "box.nmax", "the worldline engine requires nmax = 1");
      break;
    case Engine::kClassical:
      v.require(c.box.dims.size() == 2, "box.dims", "the classical engine requires a 2d box");
      v.require(c.classical.max_sites >= 1, "classical.max_sites", "max_sites must be >= 1");
      break;
    case Engine::kContours:
      v.require(c.contours.slices >= 0, "contours.slices", "slices must be >= 0 (0 = automatic)");
      v.require(c.contours.samples >= 1, "contours.samples", "samples must be >= 1");
      v.require(c.box.nmax == 1, "box.nmax", "the contours engine requires nmax = 1");
      if (c.contours.particles) {
        v.require(*c.contours.particles >= 0 && *c.contours.particles <= sites,
                  "contours.particles", "particles must lie in [0, number of sites]");
      }
      break;
  }
}

}  // namespace

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::kEd:
      return "ed";
    case Engine::kCycles:
      return "cycles";
    case Engine::kPolymer:
      return "polymer";
    case Engine::kWorldline:
      return "worldline";
    case Engine::kClassical:
      return "classical";
    case Engine::kContours:
      return "contours";
  }
  return "?";
}

const char* format_name(Format f) { return f == Format::kCsv ? "csv" : "json"; }

const char* method_name(Method m) {
  switch (m) {
    case Method::kAuto:
      return "auto";
    case Method::kFull:
      return "full";
    case Method::kSector:
      return "sector";
    case Method::kExact:
      return "exact";
    case Method::kMcmc:
      return "mcmc";
  }
  return "?";
}

bool is_stochastic(Engine e) {
  return e == Engine::kCycles || e == Engine::kWorldline || e == Engine::kContours;
}

std::string format_error(const ConfigError& e, std::string_view source) {
  std::ostringstream os;
  os << source;
  if (e.line > 0) os << ':' << e.line;
  os << ": " << e.message;
  return os.str();
}

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ValueError("empty grid");
  const auto parts = split(text, ':');
  std::vector<double> out;
  if (parts.size() == 3) {
    const double a = to_double(parts[0]);
    const double step = to_double(parts[1]);
    const double b = to_double(parts[2]);
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(step) || step == 0.0 ||
        (b - a) * step < 0) {
      throw ValueError("grid '" + std::string(text) + "' needs a finite step pointing from a to b");
    }
    const double count = std::round((b - a) / step) + 1;
    if (count > kMaxGridPoints) throw ValueError("grid '" + std::string(text) + "' is too large");
    for (long i = 0; i < static_cast<long>(count); ++i) out.push_back(a + static_cast<double>(i) * step);
  } else if (parts.size() == 1) {
    for (auto part : split(text, ',')) out.push_back(to_double(part));
  } else {
    throw ValueError("grid '" + std::string(text) + "' must be a:step:b or a comma list");
  }
  return out;
}

ParseResult parse_config(std::string_view text, const Overrides& overrides) {
  ParseResult res;
  RunConfig c;
  std::map<std::string, int> lines;
  std::string section;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        res.errors.push_back({lineno, "", "malformed section header"});
        continue;
      }
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (!kSections.count(section)) {
        res.errors.push_back({lineno, section, "unknown section [" + section + "]"});
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      res.errors.push_back({lineno, "", "expected 'key = value'"});
      continue;
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const std::string full = section.empty() ? key : section + "." + key;
    if (!kSections.count(section) && !section.empty()) continue;  // already reported
    if (lines.count(full)) {
      res.errors.push_back({lineno, full, "duplicate key '" + key + "'"});
      continue;
    }
    lines[full] = lineno;
    try {
      if (section == "potential" && key.rfind("tail.", 0) == 0) {
        const double d = to_double(key.substr(5));
        c.potential.tail[d] = to_double(value);
        continue;
      }
      auto it = setters().find(full);
      if (it == setters().end()) {
        res.errors.push_back({lineno, full,
                              "unknown key '" + key + "'" +
                                  (section.empty() ? "" : " in [" + section + "]")});
        continue;
      }
      it->second(c, value);
    } catch (const std::exception& e) {
      res.errors.push_back({lineno, full, "bad value for '" + key + "': " + e.what()});
    }
  }
  if (overrides.seed) c.run.seed = overrides.seed;
  if (overrides.threads) c.run.threads = *overrides.threads;
  if (overrides.format) c.run.format = *overrides.format;
  if (overrides.out) c.run.out = *overrides.out;
  if (overrides.seed) lines.emplace("run.seed", 0);
  std::set<std::string> broken;
  for (const auto& e : res.errors) broken.insert(e.key);
  std::vector<ConfigError> semantic;
  validate(c, lines, semantic);
  for (auto& e : semantic) {
    if (!broken.count(e.key)) res.errors.push_back(std::move(e));
  }
  std::stable_sort(res.errors.begin(), res.errors.end(),
                   [](const ConfigError& a, const ConfigError& b) { return a.line < b.line; });
  if (res.errors.empty()) res.config = std::move(c);
  return res;
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream os;
  auto join_doubles = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
    return s;
  };
  auto join_ints = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  auto b = [](bool x) { return x ? "true" : "false"; };

  os << "engine = " << engine_name(c.engine) << "\n\n[box]\ndims = ";
  for (std::size_t i = 0; i < c.box.dims.size(); ++i) os << (i ? "x" : "") << c.box.dims[i];
  os << "\nperiodic = ";
  for (std::size_t i = 0; i < c.box.periodic.size(); ++i) os << (i ? "," : "") << b(c.box.periodic[i]);
  os << "\nnmax = " << c.box.nmax << "\n\n[model]\n";
  os << "t = " << fmt(c.model.t) << "\nmu = " << fmt(c.model.mu) << "\nh = " << fmt(c.model.h)
     << "\nalpha = " << fmt(c.model.alpha) << "\nhq = " << fmt(c.model.hq)
     << "\nbeta = " << fmt(c.model.beta) << "\nfamilies = ";
  for (std::size_t i = 0; i < c.model.families.size(); ++i) {
    os << (i ? "," : "") << family_name(c.model.families[i]);
  }
  os << "\n\n[potential]\nonsite = " << fmt(c.potential.onsite) << "\nu1 = " << fmt(c.potential.u1)
     << "\nusqrt2 = " << fmt(c.potential.usqrt2) << "\ncutoff = " << fmt(c.potential.cutoff) << "\n";
  for (const auto& [d, u] : c.potential.tail) os << "tail." << fmt(d) << " = " << fmt(u) << "\n";
  os << "\n[scan]\n";
  for (const auto& [name, grid] : c.scan.grids) os << name << " = " << join_doubles(grid) << "\n";
  os << "\n[run]\n";
  if (c.run.seed) os << "seed = " << *c.run.seed << "\n";
  os << "threads = " << c.run.threads << "\nformat = " << format_name(c.run.format) << "\n";
  if (!c.run.out.empty()) os << "out = " << c.run.out << "\n";
  os << "timestamp = " << b(c.run.timestamp) << "\n";
  os << "\n[ed]\nmethod = " << method_name(c.ed.method) << "\ndmu = " << fmt(c.ed.dmu) << "\n";
  os << "\n[cycles]\nkind = " << xi_kind_name(c.cycles.kind) << "\ngamma = " << fmt(c.cycles.gamma)
     << "\ncutoff = " << fmt(c.cycles.cutoff) << "\nmethod = " << method_name(c.cycles.method)
     << "\nsweeps = " << c.cycles.sweeps << "\nbatches = " << c.cycles.batches
     << "\nn = " << join_ints(c.cycles.n) << "\nthreshold = " << c.cycles.threshold << "\n";
  os << "\n[polymer]\nr = " << fmt(c.polymer.r) << "\nsize_cutoff = " << c.polymer.size_cutoff
     << "\nk_cutoff = " << c.polymer.k_cutoff << "\n";
  os << "\n[worldline]\nsamples = " << c.worldline.samples << "\nchains = " << c.worldline.chains
     << "\n";
  if (c.worldline.particles) os << "particles = " << *c.worldline.particles << "\n";
  os << "\n[classical]\nmax_sites = " << c.classical.max_sites << "\n";
  os << "\n[contours]\nslices = " << c.contours.slices << "\nsamples = " << c.contours.samples
     << "\n";
  if (c.contours.particles) os << "particles = " << *c.contours.particles << "\n";
  return os.str();
}

std::vector<ModelParams> grid_points(const RunConfig& c) {
  auto grid = [&](const char* name, double fallback) {
    auto it = c.scan.grids.find(name);
    return it == c.scan.grids.end() || it->second.empty() ? std::vector<double>{fallback}
                                                          : it->second;
  };
  const auto betas = grid("beta", c.model.beta);
  const auto mus = grid("mu", c.model.mu);
  const auto hs = grid("h", c.model.h);
  const auto ts = grid("t", c.model.t);
  std::vector<ModelParams> out;
  for (double beta : betas) {
    for (double mu : mus) {
      for (double h : hs) {
        for (double t : ts) {
          ModelParams p;
          p.t = t;
          p.mu = mu;
          p.h = h;
          p.alpha = c.model.alpha;
          p.hq = c.model.hq;
          p.beta = beta;
          out.push_back(p);
        }
      }
    }
  }
  return out;
}

LatticeBox make_box(const RunConfig& c) {
  std::vector<bool> periodic = c.box.periodic;
  if (periodic.size() == 1) periodic.assign(c.box.dims.size(), periodic.front());
  return LatticeBox(c.box.dims, periodic);
}

PotentialSpec make_potential(const RunConfig& c) {
  PotentialSpec p;
  p.onsite = c.potential.onsite;
  p.u1 = c.potential.u1;
  p.usqrt2 = c.potential.usqrt2;
  p.cutoff = c.potential.cutoff;
  p.tail = c.potential.tail;
  return p;
}

FamilySet make_families(const RunConfig& c) {
  FamilySet s;
  for (Family f : c.model.families) s = s.with(f);
  return s;
}

}  // namespace bosonlab::cli
