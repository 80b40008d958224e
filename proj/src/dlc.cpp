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

#include "privcontract/dlc.hpp"

#include <algorithm>

#include "privcontract/errors.hpp"

namespace privcontract {

ModelSpec to_model_spec(const DlcParams& params, bool with_risk) {
  ModelSpec s;
  s.types = {params.theta_low, params.theta_high, params.prior_high};
  s.interval = {0.0, 1.0};
  s.utility = UtilityModel::linear_in_type();
  s.cost = CostModel::quadratic(params.zeta);
  s.risk = with_risk ? RiskModel::linear_breach(params.m, params.loss_low,
                                                params.loss_high)
                     : RiskModel::none();
  return s;
}

namespace {

struct Coeffs {
  double slope_low;   // th_L + m l_L
  double slope_high;  // th_H + m l_H
  double m, loss_low, loss_high;
};

Coeffs coeffs(const DlcParams& p, bool risk) {
  if (!risk) return {p.theta_low, p.theta_high, 0.0, 0.0, 0.0};
  return {p.theta_low + p.m * p.loss_low, p.theta_high + p.m * p.loss_high,
          p.m, p.loss_low, p.loss_high};
}

double utility(const DlcParams& p, const Coeffs& c, double x, TypeSel type) {
  if (type == TypeSel::Low) {
    return x * p.theta_low - c.m * (1.0 - x) * c.loss_low;
  }
  return x * p.theta_high - c.m * (1.0 - x) * c.loss_high;
}

double clamp_unit(double x, bool& above) {
  above = x > 1.0;
  return std::clamp(x, 0.0, 1.0);
}

}  // namespace

ClosedFormMenu closed_form_second_best(const DlcParams& params, bool risk) {
  const double p = params.prior_high;
  if (!(p > 0.0 && p < 1.0)) {
    throw ArgumentError("closed-form second-best needs prior_high in (0, 1)");
  }
  const Coeffs c = coeffs(params, risk);
  ClosedFormMenu out;
  const double xh = clamp_unit(c.slope_high / params.zeta,
                               out.high_out_of_interval);
  const double raw_l =
      std::max(0.0, (c.slope_low - p * c.slope_high) / (1.0 - p)) /
      params.zeta;
  const double xl = clamp_unit(raw_l, out.low_out_of_interval);
  const double tl = utility(params, c, xl, TypeSel::Low);
  const double th = tl + c.slope_high * (xh - xl);
  out.menu = {{xl, tl}, {xh, th}, Regime::SecondBest,
              risk && c.m != 0.0 && (c.loss_low != 0.0 || c.loss_high != 0.0)};
  return out;
}

ClosedFormMenu closed_form_first_best(const DlcParams& params, bool risk) {
  const Coeffs c = coeffs(params, risk);
  ClosedFormMenu out;
  const double xl = clamp_unit(std::max(0.0, c.slope_low / params.zeta),
                               out.low_out_of_interval);
  const double xh = clamp_unit(std::max(0.0, c.slope_high / params.zeta),
                               out.high_out_of_interval);
  out.menu = {{xl, utility(params, c, xl, TypeSel::Low)},
              {xh, utility(params, c, xh, TypeSel::High)},
              Regime::FirstBest,
              risk && c.m != 0.0 && (c.loss_low != 0.0 || c.loss_high != 0.0)};
  return out;
}

Thresholds critical_probabilities(const DlcParams& params) {
  Thresholds t;
  if (params.loss_high > 0.0) t.p_bar = params.loss_low / params.loss_high;
  t.p_star_norisk = params.theta_low / params.theta_high;
  t.p_star_risk = (params.theta_low + params.m * params.loss_low) /
                  (params.theta_high + params.m * params.loss_high);
  return t;
}

}  // namespace privcontract
