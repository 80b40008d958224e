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

// First-best and second-best contract menus, and verification of arbitrary
// menus against the incentive-compatibility (IC) and individual-rationality
// (IR) constraints.
//
// All utilities are effective utilities U, so with an active risk model the
// constraints are the risk-adjusted ones without a separate code path.

#ifndef PRIVCONTRACT_SCREENING_HPP_
#define PRIVCONTRACT_SCREENING_HPP_

#include "privcontract/model.hpp"
#include "privcontract/scalar_opt.hpp"

namespace privcontract {

enum class Regime { FirstBest, SecondBest };

const char* to_string(Regime r);

struct Contract {
  double x = 0.0;
  double t = 0.0;
};

struct ContractMenu {
  Contract low;
  Contract high;
  Regime regime = Regime::SecondBest;
  bool risk_active = false;
};

// Each entry is LHS - RHS of its constraint; nonnegative iff satisfied.
//   ic_high: U(x_H,th_H) - t_H >= U(x_L,th_H) - t_L
//   ic_low:  U(x_L,th_L) - t_L >= U(x_H,th_L) - t_H
//   ir_low:  U(x_L,th_L) - t_L >= 0
//   ir_high: U(x_H,th_H) - t_H >= 0
struct ConstraintResiduals {
  double ic_high = 0.0;
  double ic_low = 0.0;
  double ir_low = 0.0;
  double ir_high = 0.0;

  bool feasible(double feas_tol) const {
    return ic_high >= -feas_tol && ic_low >= -feas_tol &&
           ir_low >= -feas_tol && ir_high >= -feas_tol;
  }
};

struct SolverOptions {
  // Optimizer tolerance in x.
  double tol = kDefaultTol;
  // Constraint tolerance in currency units.
  double feas_tol = 1e-8;
  ValidationOptions validation;
};

struct SolveReport {
  ContractMenu menu;
  ConstraintResiduals residuals;
  // U(x_L,th_H) - U(x_L,th_L) for second-best; 0 for first-best.
  double information_rent = 0.0;
  double profit = 0.0;
  double welfare = 0.0;
  Boundary boundary_low = Boundary::Interior;
  Boundary boundary_high = Boundary::Interior;
  // All four constraints hold within feas_tol. First-best menus usually
  // violate an IC constraint; the residuals show which.
  bool feasible = false;
  // Second-best only: false when U(x_L*,th_H) < U(x_L*,th_L), which happens
  // when effective utility is not increasing in type at x_L*. The reduced
  // problem then violates the high type's IR constraint and is not the
  // optimum over all four constraints; use solve_p1_bruteforce instead.
  bool reduction_valid = true;
  // |x_L - x_H| <= tol.
  bool pooled = false;
  double prior = 0.0;
};

// Maximizes U(x,th_i) - g(x) per type and charges t_i = U(x_i,th_i).
// Throws ValidationError for an invalid spec.
SolveReport solve_first_best(const ModelSpec& spec,
                             const SolverOptions& options = {});

// x_H maximizes U(x,th_H) - g(x); x_L maximizes
// U(x,th_L) - (1-p) g(x) - p U(x,th_H). Prices make IR-low and IC-high bind:
// t_L = U(x_L,th_L), t_H = t_L + U(x_H,th_H) - U(x_L,th_H).
//
// Throws ArgumentError unless 0 < p < 1, ValidationError for an invalid spec,
// and InternalError if the menu is infeasible although reduction_valid holds
// or if x_L exceeds x_H.
SolveReport solve_second_best(const ModelSpec& spec,
                              const SolverOptions& options = {});

// The two reduced allocation problems, without validation or pricing.
// high_allocation maximizes U(x,th_H) - g(x); low_allocation maximizes
// U(x,th_L) - (1-p) g(x) - p U(x,th_H) for any p in [0, 1].
OptResult high_allocation(const ModelSpec& spec, double tol = kDefaultTol);
OptResult low_allocation(const ModelSpec& spec, double p,
                         double tol = kDefaultTol);

// Throws DomainError when an allocation lies outside the interval.
ConstraintResiduals verify_menu(const ModelSpec& spec, const ContractMenu& menu);

// U(x_L,th_H) - U(x_L,th_L). Throws ArgumentError for a first-best report.
double information_rent(const ModelSpec& spec, const SolveReport& report);

// (1-p)(t_L - g(x_L)) + p (t_H - g(x_H)).
double profit(const ModelSpec& spec, const ContractMenu& menu);

// profit + p (U(x_H,th_H) - t_H) + (1-p)(U(x_L,th_L) - t_L).
double welfare(const ModelSpec& spec, const ContractMenu& menu);
double welfare(const ModelSpec& spec, const SolveReport& report);

}  // namespace privcontract

#endif  // PRIVCONTRACT_SCREENING_HPP_
