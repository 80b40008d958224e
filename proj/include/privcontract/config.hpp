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

// Run configuration files.
//
//   # comment (';' also starts one)
//   [types]     theta_low, theta_high, prior_high     (required)
//   [interval]  x_min, x_max                          (required)
//   [utility]   kind = linear_in_type                 (optional)
//   [cost]      kind = quadratic, zeta                (required)
//   [risk]      kind = none | linear_breach, m, loss_low, loss_high
//   [run]       tol, feas_tol, grid = a,b,n, oracle_steps, jobs,
//               validation_grid                       (all optional)
//
// Unknown sections or keys, duplicates and malformed values raise
// ParseError with the 1-based line and the "section.key" field. Semantic
// checks (e.g. theta_low < theta_high) are left to validate().

#ifndef PRIVCONTRACT_CONFIG_HPP_
#define PRIVCONTRACT_CONFIG_HPP_

#include <optional>
#include <string>

#include "privcontract/model.hpp"
#include "privcontract/oracle.hpp"
#include "privcontract/screening.hpp"

namespace privcontract {

struct GridSpec {
  double p_min = 0.0;
  double p_max = 0.0;
  int n = 0;
};

struct RunOptions {
  SolverOptions solver;
  std::optional<GridSpec> grid;
  int oracle_steps = kDefaultOracleSteps;
  // 0 selects the hardware concurrency.
  int jobs = 1;
};

struct RunConfig {
  ModelSpec model;
  RunOptions run;
};

RunConfig parse_config(const std::string& text);

// Throws IoError when the file cannot be read.
RunConfig load_config(const std::string& path);

// "a,b,n" with n >= 2. Throws ParseError.
GridSpec parse_grid_spec(const std::string& text);

}  // namespace privcontract

#endif  // PRIVCONTRACT_CONFIG_HPP_
