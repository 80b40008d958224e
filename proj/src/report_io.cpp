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

#include "privcontract/report_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "privcontract/errors.hpp"

namespace privcontract {

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void kv(std::ostringstream& os, const char* key, double v) {
  os << key << " = " << format_fixed(v) << '\n';
}

void kv(std::ostringstream& os, const char* key, const char* v) {
  os << key << " = " << v << '\n';
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s, int line, const char* field) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw ParseError("invalid number '" + s + "'", line, field);
  }
  return v;
}

}  // namespace

std::string format_csv_number(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_fixed(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string format_report(const SolveReport& r, const std::string& title) {
  std::ostringstream os;
  os << '[' << title << "]\n";
  kv(os, "regime", to_string(r.menu.regime));
  kv(os, "risk", r.menu.risk_active ? "on" : "off");
  kv(os, "p", r.prior);
  kv(os, "x_L", r.menu.low.x);
  kv(os, "t_L", r.menu.low.t);
  kv(os, "x_H", r.menu.high.x);
  kv(os, "t_H", r.menu.high.t);
  kv(os, "boundary_L", to_string(r.boundary_low));
  kv(os, "boundary_H", to_string(r.boundary_high));
  kv(os, "information_rent", r.information_rent);
  kv(os, "profit", r.profit);
  kv(os, "welfare", r.welfare);
  kv(os, "ic_high", r.residuals.ic_high);
  kv(os, "ic_low", r.residuals.ic_low);
  kv(os, "ir_low", r.residuals.ir_low);
  kv(os, "ir_high", r.residuals.ir_high);
  kv(os, "feasible", yes_no(r.feasible));
  kv(os, "pooled", yes_no(r.pooled));
  if (r.menu.regime == Regime::SecondBest) {
    kv(os, "reduction_valid", yes_no(r.reduction_valid));
    if (!r.reduction_valid) {
      os << "note: U(x_L,theta_H) < U(x_L,theta_L); the reduced menu breaks "
            "IR-high, run compare --oracle for the full-constraint optimum\n";
    }
  } else {
    os << "note: first-best ignores the IC constraints; residuals are shown "
          "for reference\n";
  }
  return os.str();
}

std::string format_residuals(const ConstraintResiduals& r, double feas_tol) {
  std::ostringstream os;
  kv(os, "ic_high", r.ic_high);
  kv(os, "ic_low", r.ic_low);
  kv(os, "ir_low", r.ir_low);
  kv(os, "ir_high", r.ir_high);
  kv(os, "verdict", r.feasible(feas_tol) ? "feasible" : "infeasible");
  return os.str();
}

std::string format_thresholds(const Thresholds& t) {
  std::ostringstream os;
  if (t.p_bar) {
    kv(os, "p_bar", *t.p_bar);
  } else {
    kv(os, "p_bar", "absent");
  }
  kv(os, "p_star_norisk", t.p_star_norisk);
  kv(os, "p_star_risk", t.p_star_risk);
  return os.str();
}

std::string format_comparison(const ComparisonReport& report) {
  std::ostringstream os;
  os << format_report(report.no_risk, "second-best, risk off") << '\n'
     << format_report(report.with_risk, "second-best, risk on") << '\n'
     << "[thresholds]\n"
     << format_thresholds(report.thresholds) << '\n'
     << "[orderings]\n";
  for (const OrderingCheck& c : report.orderings) {
    os << "prop " << c.proposition;
    if (!c.clause.empty()) os << " (" << c.clause << ")";
    os << ": " << c.inequality << " -> " << to_string(c.verdict);
    if (c.verdict != Verdict::Skipped) {
      os << "  lhs = " << format_fixed(c.lhs) << ", rhs = "
         << format_fixed(c.rhs) << ", slack = " << format_csv_number(c.slack);
    }
    if (!c.note.empty()) os << "  [" << c.note << "]";
    os << '\n';
  }
  return os.str();
}

std::string comparison_csv(const ComparisonReport& report) {
  std::ostringstream os;
  os << "proposition,clause,inequality,lhs,rhs,slack,verdict\n";
  for (const OrderingCheck& c : report.orderings) {
    os << c.proposition << ',' << csv_field(c.clause) << ','
       << csv_field(c.inequality) << ',' << format_csv_number(c.lhs) << ','
       << format_csv_number(c.rhs) << ',' << format_csv_number(c.slack) << ','
       << to_string(c.verdict) << '\n';
  }
  return os.str();
}

std::string sweep_csv(const SweepTable& table) {
  std::ostringstream os;
  os << kSweepHeader << '\n';
  for (const SweepRow& row : table.rows) {
    const SolveReport& r = row.report;
    os << format_csv_number(row.p) << ',' << to_string(row.regime) << ','
       << (row.risk ? "on" : "off") << ','
       << format_csv_number(r.menu.low.x) << ','
       << format_csv_number(r.menu.high.x) << ','
       << format_csv_number(r.menu.low.t) << ','
       << format_csv_number(r.menu.high.t) << ','
       << format_csv_number(r.information_rent) << ','
       << format_csv_number(r.profit) << ','
       << format_csv_number(r.welfare) << ',' << to_string(r.boundary_low)
       << ',' << to_string(r.boundary_high) << '\n';
  }
  return os.str();
}

std::vector<SweepCsvRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) {
    throw ParseError("unexpected sweep CSV header", 1, "header");
  }
  std::vector<SweepCsvRow> rows;
  int n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 12) {
      throw ParseError("sweep CSV row needs 12 fields", n, "row");
    }
    SweepCsvRow r;
    r.p = parse_number(f[0], n, "p");
    r.regime = f[1];
    r.risk = f[2];
    r.x_low = parse_number(f[3], n, "x_L");
    r.x_high = parse_number(f[4], n, "x_H");
    r.t_low = parse_number(f[5], n, "t_L");
    r.t_high = parse_number(f[6], n, "t_H");
    r.rent = parse_number(f[7], n, "rent");
    r.profit = parse_number(f[8], n, "profit");
    r.welfare = parse_number(f[9], n, "welfare");
    r.boundary_low = f[10];
    r.boundary_high = f[11];
    rows.push_back(std::move(r));
  }
  return rows;
}

ContractMenu parse_menu(const std::string& text) {
  std::string cleaned;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    cleaned += line + ' ';
  }
  std::istringstream tokens(cleaned);
  std::vector<double> v;
  std::string tok;
  while (tokens >> tok) {
    if (v.size() == 4) {
      throw ParseError("menu file has more than four numbers", 0, "menu");
    }
    v.push_back(parse_number(tok, 0, "menu"));
  }
  if (v.size() != 4) {
    throw ParseError("menu file needs four numbers: x_L, t_L, x_H, t_H", 0,
                     "menu");
  }
  ContractMenu m;
  m.low = {v[0], v[1]};
  m.high = {v[2], v[3]};
  return m;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("error writing '" + path + "'");
}

}  // namespace privcontract
