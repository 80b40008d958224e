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

// Text reports, CSV tables and menu files.

#ifndef PRIVCONTRACT_REPORT_IO_HPP_
#define PRIVCONTRACT_REPORT_IO_HPP_

#include <string>
#include <vector>

#include "privcontract/risk_analysis.hpp"
#include "privcontract/screening.hpp"

namespace privcontract {

// 12 significant digits (%.12g); negative zero prints as "0".
std::string format_csv_number(double v);

// Fixed six decimals; negative zero prints as "0.000000".
std::string format_fixed(double v);

// "key = value" lines under a "[title]" header.
std::string format_report(const SolveReport& report, const std::string& title);

std::string format_residuals(const ConstraintResiduals& r, double feas_tol);

std::string format_thresholds(const Thresholds& t);

std::string format_comparison(const ComparisonReport& report);

// Columns: proposition,clause,inequality,lhs,rhs,slack,verdict.
std::string comparison_csv(const ComparisonReport& report);

inline constexpr const char* kSweepHeader =
    "p,regime,risk,x_L,x_H,t_L,t_H,rent,profit,welfare,boundary_L,boundary_H";

std::string sweep_csv(const SweepTable& table);

// A parsed sweep CSV row, numbers as printed.
struct SweepCsvRow {
  double p = 0.0;
  std::string regime;
  std::string risk;
  double x_low = 0.0, x_high = 0.0, t_low = 0.0, t_high = 0.0;
  double rent = 0.0, profit = 0.0, welfare = 0.0;
  std::string boundary_low, boundary_high;
};

// Throws ParseError on a wrong header or malformed row.
std::vector<SweepCsvRow> parse_sweep_csv(const std::string& text);

// Four numbers x_L, t_L, x_H, t_H separated by commas and/or whitespace;
// '#' starts a comment. Throws ParseError.
ContractMenu parse_menu(const std::string& text);

// Throw IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace privcontract

#endif  // PRIVCONTRACT_REPORT_IO_HPP_
