// Copyright 2026 The privcontract Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privcontract/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "privcontract/errors.hpp"
#include "privcontract/report_io.hpp"

namespace privcontract {

namespace {

struct Entry {
  std::string value;
  int line;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"types", {"theta_low", "theta_high", "prior_high"}},
      {"interval", {"x_min", "x_max"}},
      {"utility", {"kind"}},
      {"cost", {"kind", "zeta"}},
      {"risk", {"kind", "m", "loss_low", "loss_high"}},
      {"run",
       {"tol", "feas_tol", "grid", "oracle_steps", "jobs", "validation_grid"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, int line, const std::string& field) {
  const std::string v = trim(text);
  if (v.empty()) throw ParseError("empty value for " + field, line, field);
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(d)) {
    throw ParseError("invalid number '" + v + "' for " + field, line, field);
  }
  return d;
}

int to_int(const std::string& text, int line, const std::string& field) {
  const std::string v = trim(text);
  char* end = nullptr;
  errno = 0;
  const long n = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE ||
      n < -1000000000L || n > 1000000000L) {
    throw ParseError("invalid integer '" + v + "' for " + field, line, field);
  }
  return static_cast<int>(n);
}

class Document {
 public:
  explicit Document(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::string current;
    while (std::getline(in, raw)) {
      ++line;
      const auto cut = raw.find_first_of("#;");
      const std::string s = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') {
          throw ParseError("malformed section header '" + s + "'", line);
        }
        current = trim(s.substr(1, s.size() - 2));
        if (!schema().count(current)) {
          throw ParseError("unknown section [" + current + "]", line, current);
        }
        if (sections_.count(current)) {
          throw ParseError("duplicate section [" + current + "]", line,
                           current);
        }
        sections_[current];
        section_line_[current] = line;
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos) {
        throw ParseError("expected 'key = value', got '" + s + "'", line);
      }
      const std::string key = trim(s.substr(0, eq));
      const std::string value = trim(s.substr(eq + 1));
      if (current.empty()) {
        throw ParseError("key '" + key + "' outside any section", line, key);
      }
      const std::string field = current + "." + key;
      if (!schema().at(current).count(key)) {
        throw ParseError("unknown key '" + key + "' in [" + current + "]",
                         line, field);
      }
      Section& sec = sections_[current];
      if (sec.count(key)) {
        throw ParseError("duplicate key '" + key + "' in [" + current + "]",
                         line, field);
      }
      sec[key] = {value, line};
    }
  }

  bool has_section(const std::string& name) const {
    return sections_.count(name) > 0;
  }

  int section_line(const std::string& name) const {
    auto it = section_line_.find(name);
    return it == section_line_.end() ? 0 : it->second;
  }

  const Entry* find(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto e = s->second.find(key);
    return e == s->second.end() ? nullptr : &e->second;
  }

  const Entry& require(const std::string& section,
                       const std::string& key) const {
    const std::string field = section + "." + key;
    if (!has_section(section)) {
      throw ParseError("missing required section [" + section + "]", 0,
                       section);
    }
    const Entry* e = find(section, key);
    if (!e) {
      throw ParseError("missing required key '" + key + "' in [" + section +
                           "]",
                       section_line(section), field);
    }
    return *e;
  }

  double number(const std::string& section, const std::string& key) const {
    const Entry& e = require(section, key);
    return to_double(e.value, e.line, section + "." + key);
  }

  // Rejects keys that are meaningless for the chosen kind.
  void forbid_except(const std::string& section,
                     const std::set<std::string>& allowed,
                     const std::string& kind) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return;
    for (const auto& [key, entry] : s->second) {
      if (!allowed.count(key)) {
        throw ParseError("key '" + key + "' is not used when kind = " + kind,
                         entry.line, section + "." + key);
      }
    }
  }

 private:
  std::map<std::string, Section> sections_;
  std::map<std::string, int> section_line_;
};

std::string kind_of(const Document& doc, const std::string& section,
                    const std::string& fallback) {
  const Entry* e = doc.find(section, "kind");
  return e ? e->value : fallback;
}

[[noreturn]] void bad_kind(const Document& doc, const std::string& section,
                           const std::string& kind) {
  const Entry* e = doc.find(section, "kind");
  std::string msg = "unsupported " + section + " kind '" + kind + "'";
  if (kind == "custom") msg += " (custom models need the library API)";
  throw ParseError(msg, e ? e->line : 0, section + ".kind");
}

}  // namespace

GridSpec parse_grid_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  if (parts.size() != 3) {
    throw ParseError("grid must be 'p_min,p_max,n', got '" + text + "'", 0,
                     "grid");
  }
  GridSpec g;
  g.p_min = to_double(parts[0], 0, "grid");
  g.p_max = to_double(parts[1], 0, "grid");
  g.n = to_int(parts[2], 0, "grid");
  if (g.n < 2) throw ParseError("grid needs n >= 2", 0, "grid");
  return g;
}

RunConfig parse_config(const std::string& text) {
  const Document doc(text);
  RunConfig cfg;
  ModelSpec& m = cfg.model;

  m.types.theta_low = doc.number("types", "theta_low");
  m.types.theta_high = doc.number("types", "theta_high");
  m.types.prior_high = doc.number("types", "prior_high");
  m.interval.x_min = doc.number("interval", "x_min");
  m.interval.x_max = doc.number("interval", "x_max");

  const std::string ukind = kind_of(doc, "utility", "linear_in_type");
  if (ukind != "linear_in_type") bad_kind(doc, "utility", ukind);
  m.utility = UtilityModel::linear_in_type();

  const std::string ckind = kind_of(doc, "cost", "quadratic");
  if (ckind != "quadratic") bad_kind(doc, "cost", ckind);
  m.cost = CostModel::quadratic(doc.number("cost", "zeta"));

  const std::string rkind = kind_of(doc, "risk", "none");
  if (rkind == "none") {
    doc.forbid_except("risk", {"kind"}, rkind);
    m.risk = RiskModel::none();
  } else if (rkind == "linear_breach") {
    const double slope = doc.number("risk", "m");
    const double loss_low = doc.number("risk", "loss_low");
    const double loss_high = doc.number("risk", "loss_high");
    m.risk = RiskModel::linear_breach(slope, loss_low, loss_high);
  } else {
    bad_kind(doc, "risk", rkind);
  }

  RunOptions& run = cfg.run;
  if (const Entry* e = doc.find("run", "tol")) {
    run.solver.tol = to_double(e->value, e->line, "run.tol");
    if (!(run.solver.tol > 0.0)) {
      throw ParseError("run.tol must be positive", e->line, "run.tol");
    }
  }
  if (const Entry* e = doc.find("run", "feas_tol")) {
    run.solver.feas_tol = to_double(e->value, e->line, "run.feas_tol");
    if (!(run.solver.feas_tol > 0.0)) {
      throw ParseError("run.feas_tol must be positive", e->line,
                       "run.feas_tol");
    }
  }
  if (const Entry* e = doc.find("run", "grid")) {
    try {
      run.grid = parse_grid_spec(e->value);
    } catch (const ParseError& err) {
      throw ParseError(err.what(), e->line, "run.grid");
    }
  }
  if (const Entry* e = doc.find("run", "oracle_steps")) {
    run.oracle_steps = to_int(e->value, e->line, "run.oracle_steps");
    if (run.oracle_steps < 2) {
      throw ParseError("run.oracle_steps must be >= 2", e->line,
                       "run.oracle_steps");
    }
  }
  if (const Entry* e = doc.find("run", "jobs")) {
    run.jobs = to_int(e->value, e->line, "run.jobs");
    if (run.jobs < 0) {
      throw ParseError("run.jobs must be >= 0", e->line, "run.jobs");
    }
  }
  if (const Entry* e = doc.find("run", "validation_grid")) {
    run.solver.validation.grid_points =
        to_int(e->value, e->line, "run.validation_grid");
    if (run.solver.validation.grid_points < 3) {
      throw ParseError("run.validation_grid must be >= 3", e->line,
                       "run.validation_grid");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  return parse_config(read_text_file(path));
}

}  // namespace privcontract
