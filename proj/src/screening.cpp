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

#include "privcontract/screening.hpp"

#include <cmath>
#include <cstdio>

#include "privcontract/errors.hpp"

namespace privcontract {

const char* to_string(Regime r) {
  return r == Regime::FirstBest ? "first_best" : "second_best";
}

namespace {

double u_low(const ModelSpec& s, double x) {
  return effective_utility(s, x, TypeSel::Low);
}
double u_high(const ModelSpec& s, double x) {
  return effective_utility(s, x, TypeSel::High);
}

// argmax over the interval of a * U(x,th_L) + b * U(x,th_H) - c * g(x).
OptResult maximize_mix(const ModelSpec& s, double a, double b, double c,
                       double tol) {
  ScalarFn f = [&s, a, b, c](double x) {
    double v = -c * s.cost.value(x);
    if (a != 0.0) v += a * u_low(s, x);
    if (b != 0.0) v += b * u_high(s, x);
    return v;
  };
  ScalarFn slope;
  if (s.differentiable()) {
    slope = [&s, a, b, c](double x) {
      double v = -c * s.cost.slope(x);
      if (a != 0.0) v += a * effective_utility_slope(s, x, TypeSel::Low);
      if (b != 0.0) v += b * effective_utility_slope(s, x, TypeSel::High);
      return v;
    };
  }
  return maximize_concave(f, slope, s.interval, tol);
}

void fill_diagnostics(const ModelSpec& spec, const SolverOptions& options,
                      SolveReport& r) {
  r.prior = spec.prior();
  r.residuals = verify_menu(spec, r.menu);
  r.profit = profit(spec, r.menu);
  r.welfare = welfare(spec, r.menu);
  r.feasible = r.residuals.feasible(options.feas_tol);
  r.pooled = std::fabs(r.menu.low.x - r.menu.high.x) <= options.tol;
}

}  // namespace

SolveReport solve_first_best(const ModelSpec& spec,
                             const SolverOptions& options) {
  require_valid(spec, options.validation);
  const OptResult lo = maximize_mix(spec, 1.0, 0.0, 1.0, options.tol);
  const OptResult hi = maximize_mix(spec, 0.0, 1.0, 1.0, options.tol);

  SolveReport r;
  r.menu.regime = Regime::FirstBest;
  r.menu.risk_active = spec.risk.active();
  r.menu.low = {lo.argmax, u_low(spec, lo.argmax)};
  r.menu.high = {hi.argmax, u_high(spec, hi.argmax)};
  r.boundary_low = lo.at_boundary;
  r.boundary_high = hi.at_boundary;
  r.information_rent = 0.0;
  r.reduction_valid = true;
  fill_diagnostics(spec, options, r);
  return r;
}

SolveReport solve_second_best(const ModelSpec& spec,
                              const SolverOptions& options) {
  const double p = spec.prior();
  if (!(p > 0.0 && p < 1.0)) {
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "second-best needs prior_high in (0, 1), got %.12g", p);
    throw ArgumentError(buf);
  }
  require_valid(spec, options.validation);

  const OptResult hi = high_allocation(spec, options.tol);
  const OptResult lo = low_allocation(spec, p, options.tol);

  const double xl = lo.argmax, xh = hi.argmax;
  const double tl = u_low(spec, xl);
  const double th = tl + u_high(spec, xh) - u_high(spec, xl);

  SolveReport r;
  r.menu.regime = Regime::SecondBest;
  r.menu.risk_active = spec.risk.active();
  r.menu.low = {xl, tl};
  r.menu.high = {xh, th};
  r.boundary_low = lo.at_boundary;
  r.boundary_high = hi.at_boundary;
  r.information_rent = u_high(spec, xl) - u_low(spec, xl);
  r.reduction_valid = r.information_rent >= -options.feas_tol;
  fill_diagnostics(spec, options, r);

  if (xl > xh + 2.0 * options.tol) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "second-best allocation order violated: x_L = %.17g > x_H = "
                  "%.17g",
                  xl, xh);
    throw InternalError(buf);
  }
  if (r.reduction_valid && !r.feasible) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "second-best menu infeasible: ic_high=%.3g ic_low=%.3g "
                  "ir_low=%.3g ir_high=%.3g",
                  r.residuals.ic_high, r.residuals.ic_low, r.residuals.ir_low,
                  r.residuals.ir_high);
    throw InternalError(buf);
  }
  return r;
}

OptResult high_allocation(const ModelSpec& spec, double tol) {
  return maximize_mix(spec, 0.0, 1.0, 1.0, tol);
}

OptResult low_allocation(const ModelSpec& spec, double p, double tol) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError("low_allocation needs p in [0, 1]");
  }
  return maximize_mix(spec, 1.0, -p, 1.0 - p, tol);
}

ConstraintResiduals verify_menu(const ModelSpec& spec,
                                const ContractMenu& menu) {
  const double xl = menu.low.x, xh = menu.high.x;
  const double tl = menu.low.t, th = menu.high.t;
  const double ul_l = u_low(spec, xl), ul_h = u_low(spec, xh);
  const double uh_l = u_high(spec, xl), uh_h = u_high(spec, xh);
  ConstraintResiduals c;
  c.ic_high = (uh_h - th) - (uh_l - tl);
  c.ic_low = (ul_l - tl) - (ul_h - th);
  c.ir_low = ul_l - tl;
  c.ir_high = uh_h - th;
  return c;
}

double information_rent(const ModelSpec& spec, const SolveReport& report) {
  if (report.menu.regime != Regime::SecondBest) {
    throw ArgumentError("information rent is defined for second-best reports");
  }
  const double x = report.menu.low.x;
  return u_high(spec, x) - u_low(spec, x);
}

double profit(const ModelSpec& spec, const ContractMenu& menu) {
  const double p = spec.prior();
  return (1.0 - p) * (menu.low.t - spec.cost.value(menu.low.x)) +
         p * (menu.high.t - spec.cost.value(menu.high.x));
}

double welfare(const ModelSpec& spec, const ContractMenu& menu) {
  const double p = spec.prior();
  return profit(spec, menu) + p * (u_high(spec, menu.high.x) - menu.high.t) +
         (1.0 - p) * (u_low(spec, menu.low.x) - menu.low.t);
}

double welfare(const ModelSpec& spec, const SolveReport& report) {
  return welfare(spec, report.menu);
}

}  // namespace privcontract
