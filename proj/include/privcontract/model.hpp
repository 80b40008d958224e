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

// Problem instance for two-type privacy screening: consumer utility, the
// operator's cost of granting privacy, breach risk, the type pair and the
// admissible privacy interval.
//
// All types are immutable values. Evaluators held by Custom models are
// shared (std::function copies) and must themselves be pure.

#ifndef PRIVCONTRACT_MODEL_HPP_
#define PRIVCONTRACT_MODEL_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace privcontract {

enum class TypeSel { Low, High };

struct TypePair {
  double theta_low = 0.0;
  double theta_high = 0.0;
  // p = P(theta = theta_high).
  double prior_high = 0.5;
};

struct PrivacyInterval {
  double x_min = 0.0;
  double x_max = 1.0;

  bool contains(double x) const { return x >= x_min && x <= x_max; }
  double width() const { return x_max - x_min; }
};

// Base consumer utility U^(x, theta).
class UtilityModel {
 public:
  enum class Kind { LinearInType, Custom };
  // (x, theta) -> value
  using Fn = std::function<double(double, double)>;

  // U^(x, theta) = x * theta.
  static UtilityModel linear_in_type();
  // `slope` is dU^/dx; leave empty when unavailable.
  static UtilityModel custom(Fn value, Fn slope = {});

  Kind kind() const { return kind_; }
  double value(double x, double theta) const;
  bool has_slope() const;
  // Throws UnsupportedError when the model carries no derivative.
  double slope(double x, double theta) const;

 private:
  Kind kind_ = Kind::LinearInType;
  Fn value_;
  Fn slope_;
};

// Operator's cost g(x) of serving privacy level x.
class CostModel {
 public:
  enum class Kind { Quadratic, Custom };
  using Fn = std::function<double(double)>;

  // g(x) = zeta * x^2 / 2.
  static CostModel quadratic(double zeta);
  static CostModel custom(Fn value, Fn slope = {});

  Kind kind() const { return kind_; }
  double zeta() const { return zeta_; }
  double value(double x) const;
  bool has_slope() const;
  double slope(double x) const;

 private:
  Kind kind_ = Kind::Quadratic;
  double zeta_ = 1.0;
  Fn value_;
  Fn slope_;
};

// Privacy-breach risk. eta(x) is the probability of avoiding a breach; a
// breach costs a type-dependent loss.
class RiskModel {
 public:
  enum class Kind { None, LinearBreach, Custom };
  using Fn = std::function<double(double)>;

  static RiskModel none();
  // Breach probability 1 - eta(x) = m (1 - x).
  static RiskModel linear_breach(double m, double loss_low, double loss_high);
  // `eta` is the no-breach probability, `eta_slope` its derivative.
  static RiskModel custom(Fn eta, Fn eta_slope, double loss_low,
                          double loss_high);

  Kind kind() const { return kind_; }
  double m() const { return m_; }
  double loss_low() const { return loss_low_; }
  double loss_high() const { return loss_high_; }
  double loss(TypeSel type) const {
    return type == TypeSel::Low ? loss_low_ : loss_high_;
  }

  // 1 - eta(x); exactly 0 for Kind::None.
  double breach_probability(double x) const;
  bool has_slope() const;
  // eta'(x); 0 for Kind::None.
  double eta_slope(double x) const;

  // False when the risk terms vanish identically (kind None, m == 0, or both
  // losses zero), in which case the effective utility equals U^.
  bool active() const;

 private:
  Kind kind_ = Kind::None;
  double m_ = 0.0;
  double loss_low_ = 0.0;
  double loss_high_ = 0.0;
  Fn eta_;
  Fn eta_slope_;
};

struct ModelSpec {
  TypePair types;
  PrivacyInterval interval;
  UtilityModel utility = UtilityModel::linear_in_type();
  CostModel cost = CostModel::quadratic(1.0);
  RiskModel risk = RiskModel::none();

  double theta(TypeSel type) const {
    return type == TypeSel::Low ? types.theta_low : types.theta_high;
  }
  double prior() const { return types.prior_high; }

  ModelSpec without_risk() const;
  ModelSpec with_prior(double p) const;
  // True when every evaluator used by the solvers has a derivative.
  bool differentiable() const;
};

// U(x, theta) = U^(x, theta) - (1 - eta(x)) l(theta). Equals U^ bit for bit
// when the risk kind is None. Throws DomainError outside the interval.
double effective_utility(const ModelSpec& spec, double x, TypeSel type);

// dU/dx = dU^/dx + eta'(x) l(theta). Throws UnsupportedError for custom
// evaluators without a derivative.
double effective_utility_slope(const ModelSpec& spec, double x, TypeSel type);

double cost(const ModelSpec& spec, double x);
double cost_slope(const ModelSpec& spec, double x);

struct ValidationOptions {
  int grid_points = 257;
  double tolerance = 1e-9;
};

struct Violation {
  std::string assumption;  // e.g. "TypePair", "Assumption A (utility)"
  std::string message;
  std::optional<double> witness_x;
};

struct ValidationReport {
  // Violations make the model unusable by the solvers.
  std::vector<Violation> violations;
  // Warnings flag conditions under which some guarantees weaken (see
  // SolveReport::reduction_valid) without rejecting the model.
  std::vector<Violation> warnings;

  bool valid() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate(const ModelSpec& spec,
                          const ValidationOptions& options = {});

// Throws ValidationError carrying the report summary when `spec` is invalid.
void require_valid(const ModelSpec& spec,
                   const ValidationOptions& options = {});

}  // namespace privcontract

#endif  // PRIVCONTRACT_MODEL_HPP_
