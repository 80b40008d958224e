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

#include "privcontract/risk_analysis.hpp"

#include <cmath>
#include <cstdio>

#include "parallel.hpp"
#include "privcontract/errors.hpp"

namespace privcontract {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Equal:
      return "EQUAL";
    case Verdict::TieAtBoundary:
      return "TIE-AT-BOUNDARY";
    case Verdict::Skipped:
      return "SKIPPED";
  }
  return "SKIPPED";
}

const OrderingCheck* ComparisonReport::find(const std::string& proposition,
                                            const std::string& clause) const {
  for (const OrderingCheck& c : orderings) {
    if (c.proposition == proposition && c.clause == clause) return &c;
  }
  return nullptr;
}

namespace {

constexpr double kThresholdTol = 1e-8;
constexpr int kThresholdMaxIter = 60;

double critical_prior(const ModelSpec& spec, double tol) {
  auto at_min = [&](double p) {
    return low_allocation(spec, p, tol).at_boundary == Boundary::LowerBound;
  };
  if (at_min(0.0)) return 0.0;
  if (!at_min(1.0)) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < kThresholdMaxIter && hi - lo > kThresholdTol; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (at_min(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<double> loss_ratio(const RiskModel& risk) {
  if (risk.kind() == RiskModel::Kind::None || !(risk.loss_high() > 0.0)) {
    return std::nullopt;
  }
  return risk.loss_low() / risk.loss_high();
}

// Position of p relative to p_bar via the sign of l(th_L) - p l(th_H), so it
// stays meaningful when l(th_H) = 0.
enum class Side { Below, At, Above };

Side side_of_pbar(const RiskModel& risk, double p) {
  const double s = risk.loss_low() - p * risk.loss_high();
  const double band = 1e-12 * std::max(1.0, risk.loss_high());
  if (std::fabs(s) <= band) return Side::At;
  return s > 0.0 ? Side::Below : Side::Above;
}

class Checker {
 public:
  Checker(std::vector<OrderingCheck>& out, double tol)
      : out_(out), band_(2.0 * tol) {}

  // Records "greater - lesser >= 0".
  void order(const std::string& prop, const std::string& clause,
             const std::string& text, double lhs, double rhs, double slack,
             bool tie, std::string note = {}) {
    OrderingCheck c{prop, clause, text, lhs, rhs, slack, Verdict::Pass,
                    std::move(note)};
    if (tie) {
      c.verdict = Verdict::TieAtBoundary;
    } else if (std::fabs(slack) <= band_) {
      c.verdict = Verdict::Equal;
    } else {
      c.verdict = slack > 0.0 ? Verdict::Pass : Verdict::Fail;
    }
    out_.push_back(std::move(c));
  }

  // Records "lhs = rhs".
  void equal(const std::string& prop, const std::string& clause,
             const std::string& text, double lhs, double rhs, bool tie,
             std::string note = {}) {
    const double slack = -std::fabs(lhs - rhs);
    OrderingCheck c{prop, clause, text, lhs, rhs, slack, Verdict::Equal,
                    std::move(note)};
    if (tie) {
      c.verdict = Verdict::TieAtBoundary;
    } else if (slack < -band_) {
      c.verdict = Verdict::Fail;
    }
    out_.push_back(std::move(c));
  }

  void skip(const std::string& prop, const std::string& clause,
            const std::string& text, std::string note) {
    out_.push_back(
        {prop, clause, text, 0.0, 0.0, 0.0, Verdict::Skipped, std::move(note)});
  }

 private:
  std::vector<OrderingCheck>& out_;
  double band_;
};

bool both_at(Boundary a, Boundary b) {
  return a == b && a != Boundary::Interior;
}

}  // namespace

Thresholds thresholds(const ModelSpec& spec, const SolverOptions& options) {
  require_valid(spec, options.validation);
  Thresholds t;
  t.p_bar = loss_ratio(spec.risk);
  t.p_star_norisk = critical_prior(spec.without_risk(), options.tol);
  t.p_star_risk = spec.risk.kind() == RiskModel::Kind::None
                      ? t.p_star_norisk
                      : critical_prior(spec, options.tol);
  return t;
}

ComparisonReport compare(const ModelSpec& spec, const SolverOptions& options) {
  if (spec.risk.kind() == RiskModel::Kind::None) {
    throw ArgumentError("compare requires a risk model (risk kind is none)");
  }
  const double p = spec.prior();
  if (!(p > 0.0 && p < 1.0)) {
    throw ArgumentError("compare needs prior_high in (0, 1)");
  }

  const ModelSpec plain = spec.without_risk();
  ComparisonReport r;
  r.no_risk = solve_second_best(plain, options);
  r.with_risk = solve_second_best(spec, options);
  r.thresholds = thresholds(spec, options);

  const SolveReport& nr = r.no_risk;
  const SolveReport& wr = r.with_risk;
  const RiskModel& risk = spec.risk;
  const Side side = side_of_pbar(risk, p);
  const double tol = options.tol;
  Checker check(r.orderings, tol);

  // Proposition 1: the high type's privacy rises with risk.
  check.order("1", "", "x_H* >= x^_H*", wr.menu.high.x, nr.menu.high.x,
              wr.menu.high.x - nr.menu.high.x,
              both_at(wr.boundary_high, nr.boundary_high));

  // Proposition 2: the low type's privacy moves with the sign of p - p_bar.
  {
    const double a = wr.menu.low.x, b = nr.menu.low.x;
    const bool tie = both_at(wr.boundary_low, nr.boundary_low);
    switch (side) {
      case Side::Below:
        check.order("2", "p<p_bar", "x_L* >= x^_L*", a, b, a - b, tie);
        break;
      case Side::Above:
        check.order("2", "p>p_bar", "x_L* <= x^_L*", a, b, b - a, tie);
        break;
      case Side::At:
        check.equal("2", "p=p_bar", "x_L* = x^_L*", a, b, tie);
        break;
    }
  }

  // Proposition 3: x_L* is nonincreasing in p, with and without risk.
  {
    const double p2 = p + 0.5 * (1.0 - p);
    char note[64];
    std::snprintf(note, sizeof note, "p1 = %.6g, p2 = %.6g", p, p2);
    for (int with = 0; with < 2; ++with) {
      const ModelSpec& s = with ? spec : plain;
      const OptResult a = low_allocation(s, p, tol);
      const OptResult b = low_allocation(s, p2, tol);
      check.order("3", with ? "risk" : "no-risk", "x_L*(p1) >= x_L*(p2)",
                  a.argmax, b.argmax, a.argmax - b.argmax,
                  both_at(a.at_boundary, b.at_boundary), note);
    }
  }

  // Proposition 4: prices, checked with their side conditions.
  {
    const char* text_a = "t_L* > t^_L* - (1-eta(x^_L*)) l(th_L)";
    if (side == Side::Below) {
      const double rhs = nr.menu.low.t - risk.breach_probability(
                                             nr.menu.low.x) * risk.loss_low();
      check.order("4", "a", text_a, wr.menu.low.t, rhs, wr.menu.low.t - rhs,
                  both_at(wr.boundary_low, nr.boundary_low));
    } else {
      check.skip("4", "a", text_a, "side condition p < p_bar fails");
    }

    const char* text_b = "t_L* < t^_L*";
    if (side == Side::Above) {
      check.order("4", "b", text_b, wr.menu.low.t, nr.menu.low.t,
                  nr.menu.low.t - wr.menu.low.t,
                  both_at(wr.boundary_low, nr.boundary_low));
    } else {
      check.skip("4", "b", text_b, "side condition p > p_bar fails");
    }

    const char* text_c = "t_H* > t^_H*";
    const double bl = risk.breach_probability(wr.menu.low.x);
    const double bh = risk.breach_probability(wr.menu.high.x);
    if (side != Side::Above) {
      check.skip("4", "c", text_c, "side condition p > p_bar fails");
    } else if (!(bl > 0.0)) {
      check.skip("4", "c", text_c,
                 "side condition undefined: 1-eta(x_L*) = 0");
    } else if (!(1.0 - bh / bl > r.thresholds.p_bar.value_or(0.0))) {
      check.skip("4", "c", text_c,
                 "side condition 1 - (1-eta(x_H*))/(1-eta(x_L*)) > p_bar "
                 "fails");
    } else {
      check.order("4", "c", text_c, wr.menu.high.t, nr.menu.high.t,
                  wr.menu.high.t - nr.menu.high.t, false);
    }
  }

  // Proposition 5: information rent falls with risk when p > p_bar.
  {
    const char* text =
        "U^(x^_L*,th_H) - U^(x^_L*,th_L) > U(x_L*,th_H) - U(x_L*,th_L)";
    if (side != Side::Above) {
      check.skip("5", "", text, "side condition p > p_bar fails");
    } else if (wr.boundary_low != Boundary::Interior ||
               nr.boundary_low != Boundary::Interior) {
      if (both_at(wr.boundary_low, nr.boundary_low)) {
        check.order("5", "", text, nr.information_rent, wr.information_rent,
                    nr.information_rent - wr.information_rent, true,
                    "both low allocations at the same bound");
      } else {
        check.skip("5", "", text, "a low allocation is not interior");
      }
    } else {
      check.order("5", "", text, nr.information_rent, wr.information_rent,
                  nr.information_rent - wr.information_rent, false);
    }
  }
  return r;
}

SweepTable sweep_p(const ModelSpec& spec, const std::vector<double>& grid,
                   const SolverOptions& options, int jobs) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double p = grid[k];
    if (!(p > 0.0 && p < 1.0)) {
      throw ArgumentError("sweep grid values must lie strictly inside (0, 1)");
    }
    if (k > 0 && !(grid[k - 1] < p)) {
      throw ArgumentError("sweep grid must be strictly increasing");
    }
  }
  require_valid(spec, options.validation);
  const ModelSpec plain = spec.without_risk();

  SweepTable table;
  table.rows.resize(4 * grid.size());
  internal::parallel_for(grid.size(), jobs, [&](int, std::size_t k) {
    const double p = grid[k];
    const ModelSpec on = spec.with_prior(p);
    const ModelSpec off = plain.with_prior(p);
    SweepRow* row = &table.rows[4 * k];
    row[0] = {p, Regime::FirstBest, false, solve_first_best(off, options)};
    row[1] = {p, Regime::FirstBest, true, solve_first_best(on, options)};
    row[2] = {p, Regime::SecondBest, false, solve_second_best(off, options)};
    row[3] = {p, Regime::SecondBest, true, solve_second_best(on, options)};
  });
  return table;
}

std::vector<double> linear_grid(double a, double b, int n) {
  if (n < 2) throw ArgumentError("grid needs at least 2 points");
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw ArgumentError("grid bounds must be finite");
  }
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) {
    g[k] = a + (b - a) * (static_cast<double>(k) / (n - 1));
  }
  g.back() = b;
  return g;
}

}  // namespace privcontract
