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

// Brute-force solver for the full screening problem with all four IC/IR
// constraints. It shares no code with the reduced solver beyond utility
// evaluation, so it can certify it.

#ifndef PRIVCONTRACT_ORACLE_HPP_
#define PRIVCONTRACT_ORACLE_HPP_

#include "privcontract/model.hpp"
#include "privcontract/screening.hpp"

namespace privcontract {

struct PriceOptimum {
  double t_low = 0.0;
  double t_high = 0.0;
  double profit = 0.0;
};

// Exact maximizer of expected profit over prices for fixed allocations. The
// constraints are four half-planes in (t_L, t_H); the optimum is a vertex
// formed by two of them. The two IC boundaries are parallel and never
// intersect. Throws ArgumentError when the two IC constraints are jointly
// infeasible, which happens only if x_L sorts above x_H.
PriceOptimum inner_price_optimum(const ModelSpec& spec, double x_low,
                                 double x_high);

struct ActiveConstraints {
  bool ic_high = false;
  bool ic_low = false;
  bool ir_low = false;
  bool ir_high = false;
};

struct OracleResult {
  ContractMenu menu;
  double profit = 0.0;
  double x_grid_step = 0.0;
  // The true optimum lies in [profit, profit + certified_gap_bound].
  double certified_gap_bound = 0.0;
  // False when the bound rests on difference quotients because the model has
  // no derivatives.
  bool certified = true;
  ConstraintResiduals residuals;
  // |residual| <= 1e-9.
  ActiveConstraints active;
};

constexpr int kDefaultOracleSteps = 2001;

// Scans every pair x_L <= x_H on an x_steps-point grid, solving prices
// exactly at each pair. The gap bound combines per-cell bounds on the excess
// of each vertex's profit over its chord (second order in the step) with the sign pattern of U(x,th_H) - U(x,th_L) that
// decides which vertices can be feasible in a cell.
//
// Throws ArgumentError for x_steps < 2 or p not in (0, 1), ValidationError
// for an invalid spec. Output does not depend on `jobs`.
OracleResult solve_p1_bruteforce(const ModelSpec& spec,
                                 int x_steps = kDefaultOracleSteps,
                                 int jobs = 1);

}  // namespace privcontract

#endif  // PRIVCONTRACT_ORACLE_HPP_
