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

#include "privcontract/privcontract.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "privcontract/config.hpp"
#include "privcontract/dlc.hpp"
#include "privcontract/errors.hpp"
#include "privcontract/model.hpp"
#include "privcontract/oracle.hpp"
#include "privcontract/report_io.hpp"
#include "privcontract/risk_analysis.hpp"
#include "privcontract/screening.hpp"

namespace pc = privcontract;

struct pc_config {
  pc::RunConfig value;
};
struct pc_model {
  pc::ModelSpec value;
};
struct pc_sweep {
  pc::SweepTable value;
};
struct pc_comparison {
  pc::ComparisonReport value;
};

namespace {

struct LastError {
  std::string message;
  int line = 0;
  std::string field;
};

thread_local LastError g_error;

void set_error(const char* message, int line = 0, const std::string& field = {}) {
  g_error.message = message;
  g_error.line = line;
  g_error.field = field;
}

template <typename Fn>
pc_status guard(Fn&& fn) noexcept {
  try {
    g_error = LastError{};
    fn();
    return PC_OK;
  } catch (const pc::ParseError& e) {
    set_error(e.what(), e.line(), e.field());
    return PC_ERR_PARSE;
  } catch (const pc::ArgumentError& e) {
    set_error(e.what());
    return PC_ERR_ARGUMENT;
  } catch (const pc::DomainError& e) {
    set_error(e.what());
    return PC_ERR_DOMAIN;
  } catch (const pc::NumericError& e) {
    set_error(e.what());
    return PC_ERR_NUMERIC;
  } catch (const pc::ValidationError& e) {
    set_error(e.what());
    return PC_ERR_VALIDATION;
  } catch (const pc::UnsupportedError& e) {
    set_error(e.what());
    return PC_ERR_UNSUPPORTED;
  } catch (const pc::IoError& e) {
    set_error(e.what());
    return PC_ERR_IO;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return PC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return PC_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return PC_ERR_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) {
    throw pc::ArgumentError(std::string(name) + " must not be NULL");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pc::SolverOptions solver_options(const pc_solver_options* o) {
  pc::SolverOptions s;
  if (o != nullptr) {
    s.tol = o->tol;
    s.feas_tol = o->feas_tol;
    s.validation.grid_points = o->validation_grid;
    if (!(s.tol > 0.0) || !(s.feas_tol > 0.0) ||
        s.validation.grid_points < 3) {
      throw pc::ArgumentError(
          "solver options need tol > 0, feas_tol > 0, validation_grid >= 3");
    }
  }
  return s;
}

pc_menu to_c(const pc::ContractMenu& m) {
  return {m.low.x, m.low.t, m.high.x, m.high.t,
          m.regime == pc::Regime::FirstBest ? PC_REGIME_FIRST_BEST
                                            : PC_REGIME_SECOND_BEST,
          m.risk_active ? 1 : 0};
}

pc::ContractMenu from_c(const pc_menu& m) {
  pc::ContractMenu out;
  out.low = {m.x_low, m.t_low};
  out.high = {m.x_high, m.t_high};
  out.regime = m.regime == PC_REGIME_FIRST_BEST ? pc::Regime::FirstBest
                                                : pc::Regime::SecondBest;
  out.risk_active = m.risk_active != 0;
  return out;
}

pc_residuals to_c(const pc::ConstraintResiduals& r) {
  return {r.ic_high, r.ic_low, r.ir_low, r.ir_high};
}

pc::ConstraintResiduals from_c(const pc_residuals& r) {
  return {r.ic_high, r.ic_low, r.ir_low, r.ir_high};
}

int to_c(pc::Boundary b) {
  switch (b) {
    case pc::Boundary::LowerBound:
      return PC_BOUNDARY_LOWER;
    case pc::Boundary::UpperBound:
      return PC_BOUNDARY_UPPER;
    default:
      return PC_BOUNDARY_INTERIOR;
  }
}

pc::Boundary boundary_from_c(int b) {
  switch (b) {
    case PC_BOUNDARY_LOWER:
      return pc::Boundary::LowerBound;
    case PC_BOUNDARY_UPPER:
      return pc::Boundary::UpperBound;
    default:
      return pc::Boundary::Interior;
  }
}

pc_report to_c(const pc::SolveReport& r) {
  pc_report out;
  out.menu = to_c(r.menu);
  out.residuals = to_c(r.residuals);
  out.information_rent = r.information_rent;
  out.profit = r.profit;
  out.welfare = r.welfare;
  out.prior = r.prior;
  out.boundary_low = to_c(r.boundary_low);
  out.boundary_high = to_c(r.boundary_high);
  out.feasible = r.feasible ? 1 : 0;
  out.reduction_valid = r.reduction_valid ? 1 : 0;
  out.pooled = r.pooled ? 1 : 0;
  return out;
}

pc::SolveReport from_c(const pc_report& r) {
  pc::SolveReport out;
  out.menu = from_c(r.menu);
  out.residuals = from_c(r.residuals);
  out.information_rent = r.information_rent;
  out.profit = r.profit;
  out.welfare = r.welfare;
  out.prior = r.prior;
  out.boundary_low = boundary_from_c(r.boundary_low);
  out.boundary_high = boundary_from_c(r.boundary_high);
  out.feasible = r.feasible != 0;
  out.reduction_valid = r.reduction_valid != 0;
  out.pooled = r.pooled != 0;
  return out;
}

pc_thresholds to_c(const pc::Thresholds& t) {
  return {t.p_bar ? 1 : 0, t.p_bar.value_or(0.0), t.p_star_norisk,
          t.p_star_risk};
}

pc::DlcParams from_c(const pc_dlc_params& p) {
  return {p.theta_low, p.theta_high, p.zeta,      p.m,
          p.loss_low,  p.loss_high,  p.prior_high};
}

pc::TypeSel type_from_c(pc_type t) {
  if (t != PC_TYPE_LOW && t != PC_TYPE_HIGH) {
    throw pc::ArgumentError("type selector must be PC_TYPE_LOW or PC_TYPE_HIGH");
  }
  return t == PC_TYPE_LOW ? pc::TypeSel::Low : pc::TypeSel::High;
}

void closed_form_out(const pc::ClosedFormMenu& m, pc_menu* out, int* low_oob,
                     int* high_oob) {
  *out = to_c(m.menu);
  if (low_oob) *low_oob = m.low_out_of_interval ? 1 : 0;
  if (high_oob) *high_oob = m.high_out_of_interval ? 1 : 0;
}

}  // namespace

extern "C" {

const char* pc_version(void) { return "0.1.0"; }

const char* pc_status_name(pc_status status) {
  switch (status) {
    case PC_OK:
      return "ok";
    case PC_ERR_ARGUMENT:
      return "argument error";
    case PC_ERR_DOMAIN:
      return "domain error";
    case PC_ERR_NUMERIC:
      return "numeric error";
    case PC_ERR_VALIDATION:
      return "validation error";
    case PC_ERR_UNSUPPORTED:
      return "unsupported operation";
    case PC_ERR_PARSE:
      return "parse error";
    case PC_ERR_IO:
      return "i/o error";
    case PC_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* pc_last_error(void) { return g_error.message.c_str(); }
int pc_last_error_line(void) { return g_error.line; }
const char* pc_last_error_field(void) { return g_error.field.c_str(); }
void pc_string_free(char* s) { std::free(s); }

void pc_solver_options_default(pc_solver_options* out) {
  if (out == nullptr) return;
  const pc::SolverOptions d;
  *out = {d.tol, d.feas_tol, d.validation.grid_points};
}

pc_status pc_config_parse_file(const char* path, pc_config** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new pc_config{pc::load_config(path)};
  });
}

pc_status pc_config_parse_string(const char* text, pc_config** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new pc_config{pc::parse_config(text)};
  });
}

void pc_config_free(pc_config* config) { delete config; }

pc_status pc_config_model(const pc_config* config, pc_model** out) {
  return guard([&] {
    require(config, "config");
    require(out, "out");
    *out = new pc_model{config->value.model};
  });
}

pc_status pc_config_run_options(const pc_config* config, pc_run_options* out) {
  return guard([&] {
    require(config, "config");
    require(out, "out");
    const pc::RunOptions& r = config->value.run;
    out->solver = {r.solver.tol, r.solver.feas_tol,
                   r.solver.validation.grid_points};
    out->has_grid = r.grid ? 1 : 0;
    out->grid_min = r.grid ? r.grid->p_min : 0.0;
    out->grid_max = r.grid ? r.grid->p_max : 0.0;
    out->grid_n = r.grid ? r.grid->n : 0;
    out->oracle_steps = r.oracle_steps;
    out->jobs = r.jobs;
  });
}

pc_status pc_parse_grid_spec(const char* text, double* p_min, double* p_max,
                             int* n) {
  return guard([&] {
    require(text, "text");
    require(p_min, "p_min");
    require(p_max, "p_max");
    require(n, "n");
    const pc::GridSpec g = pc::parse_grid_spec(text);
    *p_min = g.p_min;
    *p_max = g.p_max;
    *n = g.n;
  });
}

pc_status pc_model_create(const pc_model_desc* desc, pc_model** out) {
  return guard([&] {
    require(desc, "desc");
    require(out, "out");
    pc::ModelSpec s;
    s.types = {desc->theta_low, desc->theta_high, desc->prior_high};
    s.interval = {desc->x_min, desc->x_max};
    if (desc->utility) {
      auto fn = desc->utility;
      auto slope = desc->utility_slope;
      void* ctx = desc->utility_ctx;
      pc::UtilityModel::Fn d;
      if (slope) d = [slope, ctx](double x, double th) { return slope(ctx, x, th); };
      s.utility = pc::UtilityModel::custom(
          [fn, ctx](double x, double th) { return fn(ctx, x, th); }, d);
    }
    if (desc->cost) {
      auto fn = desc->cost;
      auto slope = desc->cost_slope;
      void* ctx = desc->cost_ctx;
      pc::CostModel::Fn d;
      if (slope) d = [slope, ctx](double x) { return slope(ctx, x); };
      s.cost = pc::CostModel::custom([fn, ctx](double x) { return fn(ctx, x); },
                                     d);
    } else {
      s.cost = pc::CostModel::quadratic(desc->zeta);
    }
    switch (desc->risk_kind) {
      case PC_RISK_NONE:
        s.risk = pc::RiskModel::none();
        break;
      case PC_RISK_LINEAR_BREACH:
        s.risk = pc::RiskModel::linear_breach(desc->m, desc->loss_low,
                                              desc->loss_high);
        break;
      case PC_RISK_CUSTOM: {
        require(reinterpret_cast<const void*>(desc->eta), "desc->eta");
        auto fn = desc->eta;
        auto slope = desc->eta_slope;
        void* ctx = desc->risk_ctx;
        pc::RiskModel::Fn d;
        if (slope) d = [slope, ctx](double x) { return slope(ctx, x); };
        s.risk = pc::RiskModel::custom(
            [fn, ctx](double x) { return fn(ctx, x); }, d, desc->loss_low,
            desc->loss_high);
        break;
      }
      default:
        throw pc::ArgumentError("unknown risk kind");
    }
    *out = new pc_model{std::move(s)};
  });
}

pc_status pc_model_create_dlc(const pc_dlc_params* params, int with_risk,
                              pc_model** out) {
  return guard([&] {
    require(params, "params");
    require(out, "out");
    *out = new pc_model{pc::to_model_spec(from_c(*params), with_risk != 0)};
  });
}

void pc_model_free(pc_model* model) { delete model; }

pc_status pc_model_with_prior(const pc_model* model, double p,
                              pc_model** out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    *out = new pc_model{model->value.with_prior(p)};
  });
}

pc_status pc_model_without_risk(const pc_model* model, pc_model** out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    *out = new pc_model{model->value.without_risk()};
  });
}

int pc_model_risk_kind(const pc_model* model) {
  if (model == nullptr) return -1;
  switch (model->value.risk.kind()) {
    case pc::RiskModel::Kind::None:
      return PC_RISK_NONE;
    case pc::RiskModel::Kind::LinearBreach:
      return PC_RISK_LINEAR_BREACH;
    case pc::RiskModel::Kind::Custom:
      return PC_RISK_CUSTOM;
  }
  return -1;
}

double pc_model_prior(const pc_model* model) {
  return model == nullptr ? 0.0 : model->value.prior();
}

pc_status pc_model_validate(const pc_model* model, int grid_points,
                            int* valid, char** summary) {
  return guard([&] {
    require(model, "model");
    require(valid, "valid");
    pc::ValidationOptions opts;
    if (grid_points > 0) opts.grid_points = grid_points;
    const pc::ValidationReport r = pc::validate(model->value, opts);
    *valid = r.valid() ? 1 : 0;
    if (summary) *summary = dup_string(r.summary());
  });
}

pc_status pc_effective_utility(const pc_model* model, double x, pc_type type,
                               double* out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    *out = pc::effective_utility(model->value, x, type_from_c(type));
  });
}

pc_status pc_effective_utility_slope(const pc_model* model, double x,
                                     pc_type type, double* out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    *out = pc::effective_utility_slope(model->value, x, type_from_c(type));
  });
}

pc_status pc_solve_first_best(const pc_model* model,
                              const pc_solver_options* options,
                              pc_report* out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    *out = to_c(pc::solve_first_best(model->value, solver_options(options)));
  });
}

pc_status pc_solve_second_best(const pc_model* model,
                               const pc_solver_options* options,
                               pc_report* out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    *out = to_c(pc::solve_second_best(model->value, solver_options(options)));
  });
}

pc_status pc_report_format(const pc_report* report, const char* title,
                           char** out) {
  return guard([&] {
    require(report, "report");
    require(out, "out");
    *out = dup_string(pc::format_report(from_c(*report), title ? title : ""));
  });
}

pc_status pc_verify_menu(const pc_model* model, const pc_menu* menu,
                         pc_residuals* out) {
  return guard([&] {
    require(model, "model");
    require(menu, "menu");
    require(out, "out");
    *out = to_c(pc::verify_menu(model->value, from_c(*menu)));
  });
}

int pc_residuals_feasible(const pc_residuals* residuals, double feas_tol) {
  return residuals != nullptr && from_c(*residuals).feasible(feas_tol) ? 1 : 0;
}

pc_status pc_residuals_format(const pc_residuals* residuals, double feas_tol,
                              char** out) {
  return guard([&] {
    require(residuals, "residuals");
    require(out, "out");
    *out = dup_string(pc::format_residuals(from_c(*residuals), feas_tol));
  });
}

pc_status pc_menu_parse_file(const char* path, pc_menu* out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = to_c(pc::parse_menu(pc::read_text_file(path)));
  });
}

pc_status pc_linear_grid(double a, double b, int n, double* out) {
  return guard([&] {
    require(out, "out");
    const std::vector<double> g = pc::linear_grid(a, b, n);
    std::memcpy(out, g.data(), g.size() * sizeof(double));
  });
}

pc_status pc_sweep_run(const pc_model* model, const double* grid, size_t n,
                       const pc_solver_options* options, int jobs,
                       pc_sweep** out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    if (n > 0) require(grid, "grid");
    const std::vector<double> g(grid, grid + n);
    *out = new pc_sweep{
        pc::sweep_p(model->value, g, solver_options(options), jobs)};
  });
}

void pc_sweep_free(pc_sweep* sweep) { delete sweep; }

size_t pc_sweep_row_count(const pc_sweep* sweep) {
  return sweep == nullptr ? 0 : sweep->value.rows.size();
}

pc_status pc_sweep_row(const pc_sweep* sweep, size_t index, double* p,
                       int* regime, int* risk, pc_report* report) {
  return guard([&] {
    require(sweep, "sweep");
    if (index >= sweep->value.rows.size()) {
      throw pc::ArgumentError("sweep row index out of range");
    }
    const pc::SweepRow& row = sweep->value.rows[index];
    if (p) *p = row.p;
    if (regime) {
      *regime = row.regime == pc::Regime::FirstBest ? PC_REGIME_FIRST_BEST
                                                    : PC_REGIME_SECOND_BEST;
    }
    if (risk) *risk = row.risk ? 1 : 0;
    if (report) *report = to_c(row.report);
  });
}

pc_status pc_sweep_csv(const pc_sweep* sweep, char** out) {
  return guard([&] {
    require(sweep, "sweep");
    require(out, "out");
    *out = dup_string(pc::sweep_csv(sweep->value));
  });
}

pc_status pc_sweep_write_csv(const pc_sweep* sweep, const char* path) {
  return guard([&] {
    require(sweep, "sweep");
    require(path, "path");
    pc::write_text_file(path, pc::sweep_csv(sweep->value));
  });
}

pc_status pc_compare(const pc_model* model, const pc_solver_options* options,
                     pc_comparison** out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    *out = new pc_comparison{
        pc::compare(model->value, solver_options(options))};
  });
}

void pc_comparison_free(pc_comparison* comparison) { delete comparison; }

pc_status pc_comparison_format(const pc_comparison* comparison, char** out) {
  return guard([&] {
    require(comparison, "comparison");
    require(out, "out");
    *out = dup_string(pc::format_comparison(comparison->value));
  });
}

pc_status pc_comparison_csv(const pc_comparison* comparison, char** out) {
  return guard([&] {
    require(comparison, "comparison");
    require(out, "out");
    *out = dup_string(pc::comparison_csv(comparison->value));
  });
}

pc_status pc_comparison_thresholds(const pc_comparison* comparison,
                                   pc_thresholds* out) {
  return guard([&] {
    require(comparison, "comparison");
    require(out, "out");
    *out = to_c(comparison->value.thresholds);
  });
}

pc_status pc_comparison_reports(const pc_comparison* comparison,
                                pc_report* no_risk, pc_report* with_risk) {
  return guard([&] {
    require(comparison, "comparison");
    if (no_risk) *no_risk = to_c(comparison->value.no_risk);
    if (with_risk) *with_risk = to_c(comparison->value.with_risk);
  });
}

size_t pc_comparison_failures(const pc_comparison* comparison) {
  if (comparison == nullptr) return 0;
  size_t n = 0;
  for (const pc::OrderingCheck& c : comparison->value.orderings) {
    if (c.verdict == pc::Verdict::Fail) ++n;
  }
  return n;
}

pc_status pc_thresholds_compute(const pc_model* model,
                                const pc_solver_options* options,
                                pc_thresholds* out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    *out = to_c(pc::thresholds(model->value, solver_options(options)));
  });
}

pc_status pc_dlc_second_best(const pc_dlc_params* params, int with_risk,
                             pc_menu* out, int* low_out_of_interval,
                             int* high_out_of_interval) {
  return guard([&] {
    require(params, "params");
    require(out, "out");
    closed_form_out(pc::closed_form_second_best(from_c(*params), with_risk != 0),
                    out, low_out_of_interval, high_out_of_interval);
  });
}

pc_status pc_dlc_first_best(const pc_dlc_params* params, int with_risk,
                            pc_menu* out, int* low_out_of_interval,
                            int* high_out_of_interval) {
  return guard([&] {
    require(params, "params");
    require(out, "out");
    closed_form_out(pc::closed_form_first_best(from_c(*params), with_risk != 0),
                    out, low_out_of_interval, high_out_of_interval);
  });
}

pc_status pc_dlc_critical_probabilities(const pc_dlc_params* params,
                                        pc_thresholds* out) {
  return guard([&] {
    require(params, "params");
    require(out, "out");
    *out = to_c(pc::critical_probabilities(from_c(*params)));
  });
}

pc_status pc_oracle_solve(const pc_model* model, int x_steps, int jobs,
                          pc_oracle_result* out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    const pc::OracleResult r =
        pc::solve_p1_bruteforce(model->value, x_steps, jobs);
    out->menu = to_c(r.menu);
    out->profit = r.profit;
    out->x_grid_step = r.x_grid_step;
    out->certified_gap_bound = r.certified_gap_bound;
    out->certified = r.certified ? 1 : 0;
    out->residuals = to_c(r.residuals);
    out->active_ic_high = r.active.ic_high ? 1 : 0;
    out->active_ic_low = r.active.ic_low ? 1 : 0;
    out->active_ir_low = r.active.ir_low ? 1 : 0;
    out->active_ir_high = r.active.ir_high ? 1 : 0;
  });
}

pc_status pc_inner_price_optimum(const pc_model* model, double x_low,
                                 double x_high, double* t_low, double* t_high,
                                 double* profit) {
  return guard([&] {
    require(model, "model");
    const pc::PriceOptimum o =
        pc::inner_price_optimum(model->value, x_low, x_high);
    if (t_low) *t_low = o.t_low;
    if (t_high) *t_high = o.t_high;
    if (profit) *profit = o.profit;
  });
}

}  // extern "C"
