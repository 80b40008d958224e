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

// Closed forms for the direct-load-control family: U^ = x th, g = zeta x^2/2,
// breach probability m (1 - x), x in [0, 1].

#ifndef PRIVCONTRACT_DLC_HPP_
#define PRIVCONTRACT_DLC_HPP_

#include "privcontract/model.hpp"
#include "privcontract/risk_analysis.hpp"
#include "privcontract/screening.hpp"

namespace privcontract {

struct DlcParams {
  double theta_low = 1.0;
  double theta_high = 2.0;
  double zeta = 3.0;
  double m = 0.0;
  double loss_low = 0.0;
  double loss_high = 0.0;
  double prior_high = 0.5;
};

// Risk kind is LinearBreach when `with_risk`, None otherwise.
ModelSpec to_model_spec(const DlcParams& params, bool with_risk);

struct ClosedFormMenu {
  ContractMenu menu;
  // The unclamped formula left [0, 1] above; the numeric solver governs.
  bool low_out_of_interval = false;
  bool high_out_of_interval = false;
};

// x_H = (th_H + m l_H) / zeta,
// x_L = [(th_L + m l_L - p (th_H + m l_H)) / (1 - p)]_+ / zeta,
// t_L = U(x_L, th_L), t_H = t_L + (th_H + m l_H)(x_H - x_L).
// Risk terms are dropped when !risk. Throws ArgumentError unless 0 < p < 1.
ClosedFormMenu closed_form_second_best(const DlcParams& params, bool risk);

// x_i = (th_i + m l_i) / zeta, t_i = U(x_i, th_i).
ClosedFormMenu closed_form_first_best(const DlcParams& params, bool risk);

// p_bar = l_L / l_H (absent when l_H = 0), p^* = th_L / th_H,
// p* = (th_L + m l_L) / (th_H + m l_H).
Thresholds critical_probabilities(const DlcParams& params);

}  // namespace privcontract

#endif  // PRIVCONTRACT_DLC_HPP_
