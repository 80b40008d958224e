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

// Comparative statics of the second-best menu with and without breach risk:
// critical priors, ordering checks and p-sweeps.

#ifndef PRIVCONTRACT_RISK_ANALYSIS_HPP_
#define PRIVCONTRACT_RISK_ANALYSIS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "privcontract/model.hpp"
#include "privcontract/screening.hpp"

namespace privcontract {

struct Thresholds {
  // l(th_L) / l(th_H); absent when the risk kind is None or l(th_H) = 0.
  std::optional<double> p_bar;
  // Smallest p at which x_L* reaches x_min, without and with risk.
  double p_star_norisk = 0.0;
  double p_star_risk = 0.0;
};

enum class Verdict { Pass, Fail, Equal, TieAtBoundary, Skipped };

const char* to_string(Verdict v);

// One tested inequality. slack > 0 means it holds strictly.
struct OrderingCheck {
  std::string proposition;  // "1" .. "5"
  std::string clause;       // distinguishes sub-cases, may be empty
  std::string inequality;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  Verdict verdict = Verdict::Skipped;
  std::string note;
};

struct ComparisonReport {
  SolveReport no_risk;
  SolveReport with_risk;
  Thresholds thresholds;
  std::vector<OrderingCheck> orderings;

  // nullptr when absent.
  const OrderingCheck* find(const std::string& proposition,
                            const std::string& clause = {}) const;
};

// Bisection on p of "x_L*(p) sits at x_min", to 1e-8 in p.
Thresholds thresholds(const ModelSpec& spec, const SolverOptions& options = {});

// Solves the second-best menu with the risk model stripped and kept, then
// evaluates the orderings. Verdicts use slack threshold 2 * tol; a pair of
// allocations pinned to the same bound is reported as TieAtBoundary.
//
// Throws ArgumentError when the risk kind is None or p is not in (0, 1).
ComparisonReport compare(const ModelSpec& spec,
                         const SolverOptions& options = {});

struct SweepRow {
  double p = 0.0;
  Regime regime = Regime::FirstBest;
  bool risk = false;
  SolveReport report;
};

// Rows ordered by (p, regime, risk) with first_best < second_best and
// off < on. "on" rows use the model's risk as given.
struct SweepTable {
  std::vector<SweepRow> rows;
};

// `grid` must be strictly increasing inside (0, 1). `jobs` <= 0 uses the
// hardware concurrency. Output does not depend on `jobs`.
SweepTable sweep_p(const ModelSpec& spec, const std::vector<double>& grid,
                   const SolverOptions& options = {}, int jobs = 1);

// n >= 2 points from a to b inclusive.
std::vector<double> linear_grid(double a, double b, int n);

}  // namespace privcontract

#endif  // PRIVCONTRACT_RISK_ANALYSIS_HPP_
