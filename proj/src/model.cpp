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

#include "privcontract/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

#include "privcontract/errors.hpp"

namespace privcontract {

UtilityModel UtilityModel::linear_in_type() { return UtilityModel(); }

UtilityModel UtilityModel::custom(Fn value, Fn slope) {
  if (!value) throw ArgumentError("custom utility requires a value evaluator");
  UtilityModel u;
  u.kind_ = Kind::Custom;
  u.value_ = std::move(value);
  u.slope_ = std::move(slope);
  return u;
}

double UtilityModel::value(double x, double theta) const {
  if (kind_ == Kind::LinearInType) return x * theta;
  return value_(x, theta);
}

bool UtilityModel::has_slope() const {
  return kind_ == Kind::LinearInType || static_cast<bool>(slope_);
}

double UtilityModel::slope(double x, double theta) const {
  if (kind_ == Kind::LinearInType) return theta;
  if (!slope_) {
    throw UnsupportedError("custom utility model has no derivative evaluator");
  }
  return slope_(x, theta);
}

CostModel CostModel::quadratic(double zeta) {
  CostModel c;
  c.zeta_ = zeta;
  return c;
}

CostModel CostModel::custom(Fn value, Fn slope) {
  if (!value) throw ArgumentError("custom cost requires a value evaluator");
  CostModel c;
  c.kind_ = Kind::Custom;
  c.value_ = std::move(value);
  c.slope_ = std::move(slope);
  return c;
}

double CostModel::value(double x) const {
  if (kind_ == Kind::Quadratic) return 0.5 * zeta_ * x * x;
  return value_(x);
}

bool CostModel::has_slope() const {
  return kind_ == Kind::Quadratic || static_cast<bool>(slope_);
}

double CostModel::slope(double x) const {
  if (kind_ == Kind::Quadratic) return zeta_ * x;
  if (!slope_) {
    throw UnsupportedError("custom cost model has no derivative evaluator");
  }
  return slope_(x);
}

RiskModel RiskModel::none() { return RiskModel(); }

RiskModel RiskModel::linear_breach(double m, double loss_low,
                                   double loss_high) {
  RiskModel r;
  r.kind_ = Kind::LinearBreach;
  r.m_ = m;
  r.loss_low_ = loss_low;
  r.loss_high_ = loss_high;
  return r;
}

RiskModel RiskModel::custom(Fn eta, Fn eta_slope, double loss_low,
                            double loss_high) {
  if (!eta) throw ArgumentError("custom risk requires an eta evaluator");
  RiskModel r;
  r.kind_ = Kind::Custom;
  r.eta_ = std::move(eta);
  r.eta_slope_ = std::move(eta_slope);
  r.loss_low_ = loss_low;
  r.loss_high_ = loss_high;
  return r;
}

double RiskModel::breach_probability(double x) const {
  switch (kind_) {
    case Kind::None:
      return 0.0;
    case Kind::LinearBreach:
      return m_ * (1.0 - x);
    case Kind::Custom:
      return 1.0 - eta_(x);
  }
  return 0.0;
}

bool RiskModel::has_slope() const {
  return kind_ != Kind::Custom || static_cast<bool>(eta_slope_);
}

double RiskModel::eta_slope(double x) const {
  switch (kind_) {
    case Kind::None:
      return 0.0;
    case Kind::LinearBreach:
      return m_;
    case Kind::Custom:
      if (!eta_slope_) {
        throw UnsupportedError("custom risk model has no derivative evaluator");
      }
      return eta_slope_(x);
  }
  return 0.0;
}

bool RiskModel::active() const {
  switch (kind_) {
    case Kind::None:
      return false;
    case Kind::LinearBreach:
      return m_ != 0.0 && (loss_low_ != 0.0 || loss_high_ != 0.0);
    case Kind::Custom:
      return loss_low_ != 0.0 || loss_high_ != 0.0;
  }
  return false;
}

ModelSpec ModelSpec::without_risk() const {
  ModelSpec s = *this;
  s.risk = RiskModel::none();
  return s;
}

ModelSpec ModelSpec::with_prior(double p) const {
  ModelSpec s = *this;
  s.types.prior_high = p;
  return s;
}

bool ModelSpec::differentiable() const {
  return utility.has_slope() && cost.has_slope() &&
         (risk.kind() == RiskModel::Kind::None || risk.has_slope());
}

namespace {

void check_domain(const ModelSpec& spec, double x) {
  if (!spec.interval.contains(x)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "privacy level x = %.17g outside interval [%.17g, %.17g]", x,
                  spec.interval.x_min, spec.interval.x_max);
    throw DomainError(buf);
  }
}

}  // namespace

double effective_utility(const ModelSpec& spec, double x, TypeSel type) {
  check_domain(spec, x);
  const double base = spec.utility.value(x, spec.theta(type));
  if (spec.risk.kind() == RiskModel::Kind::None) return base;
  return base - spec.risk.breach_probability(x) * spec.risk.loss(type);
}

double effective_utility_slope(const ModelSpec& spec, double x, TypeSel type) {
  check_domain(spec, x);
  const double base = spec.utility.slope(x, spec.theta(type));
  if (spec.risk.kind() == RiskModel::Kind::None) return base;
  return base + spec.risk.eta_slope(x) * spec.risk.loss(type);
}

double cost(const ModelSpec& spec, double x) {
  check_domain(spec, x);
  return spec.cost.value(x);
}

double cost_slope(const ModelSpec& spec, double x) {
  check_domain(spec, x);
  return spec.cost.slope(x);
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string fmt(const char* pattern, double a) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

class GridChecker {
 public:
  GridChecker(ValidationReport& report, const PrivacyInterval& interval,
              int points, double tol)
      : report_(report), tol_(tol) {
    const int n = points < 3 ? 3 : points;
    xs_.resize(n);
    for (int k = 0; k < n; ++k) {
      xs_[k] = interval.x_min +
               interval.width() * (static_cast<double>(k) / (n - 1));
    }
    xs_.back() = interval.x_max;
  }

  // Samples f on the grid. Returns false (and records a violation) when an
  // evaluator produces a non-finite value or throws.
  bool sample(const std::string& assumption,
              const std::function<double(double)>& f,
              std::vector<double>& out) {
    out.resize(xs_.size());
    for (std::size_t k = 0; k < xs_.size(); ++k) {
      double v;
      try {
        v = f(xs_[k]);
      } catch (const std::exception& e) {
        add(false, assumption, std::string("evaluator threw: ") + e.what(),
            xs_[k]);
        return false;
      }
      if (!std::isfinite(v)) {
        add(false, assumption, "evaluator returned a non-finite value", xs_[k]);
        return false;
      }
      out[k] = v;
    }
    return true;
  }

  void increasing(const std::string& assumption, const std::string& what,
                  const std::vector<double>& f, bool warning = false) {
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
      if (f[k + 1] - f[k] < -tol_) {
        add(warning, assumption, what + " is not increasing in x", xs_[k]);
        return;
      }
    }
  }

  void concave(const std::string& assumption, const std::string& what,
               const std::vector<double>& f, double sign = 1.0) {
    for (std::size_t k = 1; k + 1 < f.size(); ++k) {
      const double second = f[k - 1] - 2.0 * f[k] + f[k + 1];
      if (sign * second > tol_) {
        add(false, assumption,
            what + (sign > 0 ? " is not concave in x" : " is not convex in x"),
            xs_[k]);
        return;
      }
    }
  }

  // hi(x) >= lo(x) everywhere.
  void dominates(const std::string& assumption, const std::string& what,
                 const std::vector<double>& hi, const std::vector<double>& lo,
                 bool warning) {
    for (std::size_t k = 0; k < hi.size(); ++k) {
      if (hi[k] - lo[k] < -tol_) {
        add(warning, assumption, what, xs_[k]);
        return;
      }
    }
  }

  // hi(x) - lo(x) nondecreasing in x.
  void sorting(const std::string& assumption, const std::vector<double>& hi,
               const std::vector<double>& lo) {
    for (std::size_t k = 0; k + 1 < hi.size(); ++k) {
      const double d0 = hi[k] - lo[k];
      const double d1 = hi[k + 1] - lo[k + 1];
      if (d1 - d0 < -tol_) {
        add(false, assumption,
            "sorting condition fails: U(x,theta_H) - U(x,theta_L) decreases "
            "in x",
            xs_[k]);
        return;
      }
    }
  }

  void add(bool warning, const std::string& assumption, std::string message,
           std::optional<double> x) {
    auto& list = warning ? report_.warnings : report_.violations;
    list.push_back({assumption, std::move(message), x});
  }

 private:
  ValidationReport& report_;
  double tol_;
  std::vector<double> xs_;
};

void check_utility_family(GridChecker& grid, const std::string& assumption,
                          const std::function<double(double, double)>& u,
                          double theta_low, double theta_high,
                          bool type_monotone_is_warning) {
  std::vector<double> low, high;
  if (!grid.sample(assumption, [&](double x) { return u(x, theta_low); }, low))
    return;
  if (!grid.sample(assumption, [&](double x) { return u(x, theta_high); },
                   high))
    return;
  grid.increasing(assumption, "utility of the low type", low);
  grid.increasing(assumption, "utility of the high type", high);
  grid.concave(assumption, "utility of the low type", low);
  grid.concave(assumption, "utility of the high type", high);
  grid.dominates(assumption, "utility is not increasing in type", high, low,
                 type_monotone_is_warning);
  grid.sorting(assumption, high, low);
}

}  // namespace

ValidationReport validate(const ModelSpec& spec,
                          const ValidationOptions& options) {
  ValidationReport report;
  auto violation = [&](const std::string& assumption, std::string message,
                       std::optional<double> x = std::nullopt) {
    report.violations.push_back({assumption, std::move(message), x});
  };

  const TypePair& t = spec.types;
  if (!std::isfinite(t.theta_low) || !std::isfinite(t.theta_high)) {
    violation("TypePair", "type values must be finite");
  } else if (!(t.theta_low < t.theta_high)) {
    violation("TypePair",
              fmt("theta_low must be less than theta_high (got %.12g >= %.12g)",
                  t.theta_low, t.theta_high));
  }
  if (!(t.prior_high >= 0.0 && t.prior_high <= 1.0)) {
    violation("TypePair",
              fmt("prior_high must lie in [0, 1] (got %.12g)", t.prior_high));
  }

  const PrivacyInterval& iv = spec.interval;
  const bool interval_ok = std::isfinite(iv.x_min) &&
                           std::isfinite(iv.x_max) && iv.x_min < iv.x_max;
  if (!interval_ok) {
    violation("PrivacyInterval",
              fmt("x_min must be less than x_max, both finite (got [%.12g, "
                  "%.12g])",
                  iv.x_min, iv.x_max));
  }

  if (spec.cost.kind() == CostModel::Kind::Quadratic) {
    const double zeta = spec.cost.zeta();
    if (!std::isfinite(zeta) || !(zeta > 0.0)) {
      violation("Assumption C (cost)",
                fmt("quadratic cost needs zeta > 0 (got %.12g)", zeta));
    }
    if (interval_ok && iv.x_min < 0.0) {
      violation("Assumption C (cost)",
                "quadratic cost is not increasing on intervals containing "
                "negative x",
                iv.x_min);
    }
  }

  const RiskModel& risk = spec.risk;
  if (risk.kind() != RiskModel::Kind::None) {
    const double ll = risk.loss_low(), lh = risk.loss_high();
    if (!std::isfinite(ll) || !std::isfinite(lh) || ll < 0.0 || lh < 0.0) {
      violation("Assumption D (risk)",
                fmt("losses must be finite and nonnegative (got %.12g, %.12g)",
                    ll, lh));
    } else if (ll > lh) {
      violation("Assumption D (risk)",
                fmt("loss is not increasing in type: loss_low = %.12g > "
                    "loss_high = %.12g",
                    ll, lh));
    }
  }
  if (risk.kind() == RiskModel::Kind::LinearBreach) {
    const double m = risk.m();
    if (!std::isfinite(m) || m < 0.0) {
      violation("Assumption D (risk)",
                fmt("breach slope m must be finite and >= 0 (got %.12g)", m));
    } else if (interval_ok) {
      // 1 - eta is affine, so the endpoints bound it.
      const double at_min = risk.breach_probability(iv.x_min);
      const double at_max = risk.breach_probability(iv.x_max);
      if (at_min > 1.0 + options.tolerance) {
        violation("Assumption D (risk)",
                  fmt("breach probability 1-eta(x) = %.12g is not a "
                      "probability",
                      at_min),
                  iv.x_min);
      } else if (at_max < -options.tolerance) {
        violation("Assumption D (risk)",
                  fmt("breach probability 1-eta(x) = %.12g is not a "
                      "probability",
                      at_max),
                  iv.x_max);
      }
    }
  }

  if (!interval_ok || !std::isfinite(t.theta_low) ||
      !std::isfinite(t.theta_high)) {
    return report;
  }

  GridChecker grid(report, iv, options.grid_points, options.tolerance);

  check_utility_family(
      grid, "Assumption A/B (utility)",
      [&](double x, double theta) { return spec.utility.value(x, theta); },
      t.theta_low, t.theta_high, /*type_monotone_is_warning=*/false);

  if (spec.cost.kind() == CostModel::Kind::Custom) {
    std::vector<double> g;
    if (grid.sample("Assumption C (cost)",
                    [&](double x) { return spec.cost.value(x); }, g)) {
      grid.increasing("Assumption C (cost)", "cost", g);
      grid.concave("Assumption C (cost)", "cost", g, -1.0);
    }
  }

  if (risk.kind() == RiskModel::Kind::Custom) {
    std::vector<double> eta;
    if (grid.sample("Assumption D (risk)",
                    [&](double x) { return 1.0 - risk.breach_probability(x); },
                    eta)) {
      for (std::size_t k = 0; k < eta.size(); ++k) {
        if (eta[k] < -options.tolerance || eta[k] > 1.0 + options.tolerance) {
          violation("Assumption D (risk)",
                    fmt("eta(x) = %.12g is not a probability", eta[k]));
          break;
        }
      }
      grid.increasing("Assumption D (risk)", "eta", eta);
      if (!(eta.back() - eta.front() > options.tolerance)) {
        violation("Assumption D (risk)", "eta is not strictly increasing");
      }
    }
  }

  if (risk.kind() != RiskModel::Kind::None) {
    // The effective utility must itself be increasing and concave in x and
    // satisfy sorting. Failing monotonicity in type is only a warning: the
    // linear-breach family with loss_low < loss_high fails it near x_min.
    const double ll = risk.loss_low(), lh = risk.loss_high();
    check_utility_family(
        grid, "Assumption A (effective utility)",
        [&](double x, double theta) {
          const double l = theta == t.theta_low ? ll : lh;
          return spec.utility.value(x, theta) - risk.breach_probability(x) * l;
        },
        t.theta_low, t.theta_high, /*type_monotone_is_warning=*/true);
  }

  return report;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << (valid() ? "valid" : "invalid");
  auto dump = [&](const char* tag, const std::vector<Violation>& list) {
    for (const Violation& v : list) {
      os << "\n  " << tag << " [" << v.assumption << "] " << v.message;
      if (v.witness_x) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " (at x = %.12g)", *v.witness_x);
        os << buf;
      }
    }
  };
  dump("violation", violations);
  dump("warning", warnings);
  return os.str();
}

void require_valid(const ModelSpec& spec, const ValidationOptions& options) {
  ValidationReport report = validate(spec, options);
  if (!report.valid()) throw ValidationError(report.summary());
}

}  // namespace privcontract
