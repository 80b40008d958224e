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

// privcontract command-line tool.
//
// Exit codes: 0 success, 1 usage/parse/I-O/runtime error, 2 model rejected
// (validation failure, prior outside (0,1), compare without risk),
// 3 verify found an infeasible menu.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "privcontract/privcontract.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRejected = 2;
constexpr int kExitInfeasible = 3;

struct Failure {
  int code;
};

int exit_code(pc_status s) {
  switch (s) {
    case PC_OK:
      return kExitOk;
    case PC_ERR_VALIDATION:
    case PC_ERR_ARGUMENT:
      return kExitRejected;
    default:
      return kExitError;
  }
}

void report(pc_status s, const std::string& context) {
  std::cerr << "privcontract: " << pc_status_name(s);
  if (!context.empty()) std::cerr << " in " << context;
  if (s == PC_ERR_PARSE && pc_last_error_line() > 0) {
    std::cerr << " at line " << pc_last_error_line();
  }
  const std::string field = pc_last_error_field();
  if (s == PC_ERR_PARSE && !field.empty()) std::cerr << " (field " << field << ")";
  std::cerr << ": " << pc_last_error() << '\n';
}

void check(pc_status s, const std::string& context = {}) {
  if (s != PC_OK) {
    report(s, context);
    throw Failure{exit_code(s)};
  }
}

[[noreturn]] void usage_error(const std::string& msg) {
  std::cerr << "privcontract: " << msg << '\n';
  throw Failure{kExitError};
}

struct ModelDeleter {
  void operator()(pc_model* m) const { pc_model_free(m); }
};
struct ConfigDeleter {
  void operator()(pc_config* c) const { pc_config_free(c); }
};
struct SweepDeleter {
  void operator()(pc_sweep* s) const { pc_sweep_free(s); }
};
struct ComparisonDeleter {
  void operator()(pc_comparison* c) const { pc_comparison_free(c); }
};
struct StringDeleter {
  void operator()(char* s) const { pc_string_free(s); }
};

using ModelPtr = std::unique_ptr<pc_model, ModelDeleter>;
using ConfigPtr = std::unique_ptr<pc_config, ConfigDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Loaded {
  ConfigPtr config;
  ModelPtr model;
  pc_run_options run;
};

Loaded load(const std::string& path) {
  Loaded l;
  pc_config* cfg = nullptr;
  check(pc_config_parse_file(path.c_str(), &cfg), path);
  l.config.reset(cfg);
  pc_model* model = nullptr;
  check(pc_config_model(cfg, &model));
  l.model.reset(model);
  check(pc_config_run_options(cfg, &l.run));
  return l;
}

// Exits 2 with the validation summary when the model is invalid.
void require_valid(const Loaded& l) {
  int valid = 0;
  char* summary = nullptr;
  check(pc_model_validate(l.model.get(), l.run.solver.validation_grid, &valid,
                          &summary));
  StringPtr text(summary);
  if (!valid) {
    std::cerr << "privcontract: model failed validation: " << text.get()
              << '\n';
    throw Failure{kExitRejected};
  }
}

std::string format(const pc_report& r, const std::string& title) {
  char* out = nullptr;
  check(pc_report_format(&r, title.c_str(), &out));
  return StringPtr(out).get();
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) usage_error("cannot write '" + path + "'");
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int cmd_solve(const std::string& config_path) {
  Loaded l = load(config_path);
  require_valid(l);
  const pc_solver_options* opts = &l.run.solver;

  ModelPtr plain;
  {
    pc_model* m = nullptr;
    check(pc_model_without_risk(l.model.get(), &m));
    plain.reset(m);
  }
  const bool has_risk = pc_model_risk_kind(l.model.get()) != PC_RISK_NONE;

  pc_report r;
  check(pc_solve_first_best(plain.get(), opts, &r));
  std::cout << format(r, "first-best, risk off") << '\n';
  check(pc_solve_second_best(plain.get(), opts, &r));
  std::cout << format(r, "second-best, risk off");
  if (has_risk) {
    check(pc_solve_first_best(l.model.get(), opts, &r));
    std::cout << '\n' << format(r, "first-best, risk on") << '\n';
    check(pc_solve_second_best(l.model.get(), opts, &r));
    std::cout << format(r, "second-best, risk on");
  }
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              const std::string& grid_text, int jobs_flag) {
  Loaded l = load(config_path);
  double a = 0.0, b = 0.0;
  int n = 0;
  if (!grid_text.empty()) {
    check(pc_parse_grid_spec(grid_text.c_str(), &a, &b, &n), "--grid");
  } else if (l.run.has_grid) {
    a = l.run.grid_min;
    b = l.run.grid_max;
    n = l.run.grid_n;
  } else {
    usage_error("sweep needs --grid a,b,n or [run] grid in the config");
  }
  if (!(a > 0.0 && b < 1.0 && a < b)) {
    usage_error("grid must satisfy 0 < p_min < p_max < 1");
  }
  require_valid(l);

  std::vector<double> grid(n);
  check(pc_linear_grid(a, b, n, grid.data()));
  const int jobs = jobs_flag >= 0 ? jobs_flag : l.run.jobs;

  pc_sweep* raw = nullptr;
  check(pc_sweep_run(l.model.get(), grid.data(), grid.size(), &l.run.solver,
                     jobs, &raw));
  std::unique_ptr<pc_sweep, SweepDeleter> sweep(raw);

  if (out_path.empty()) {
    char* csv = nullptr;
    check(pc_sweep_csv(sweep.get(), &csv));
    std::cout << StringPtr(csv).get();
    return kExitOk;
  }
  check(pc_sweep_write_csv(sweep.get(), out_path.c_str()), out_path);

  nlohmann::json meta = {
      {"tool", "privcontract"},
      {"version", pc_version()},
      {"command", "sweep"},
      {"config", config_path},
      {"grid", {{"p_min", a}, {"p_max", b}, {"n", n}}},
      {"rows", pc_sweep_row_count(sweep.get())},
      {"jobs", jobs},
      {"tol", l.run.solver.tol},
      {"feas_tol", l.run.solver.feas_tol},
      {"created_utc", utc_now()},
  };
  write_output(out_path + ".meta.json", meta.dump(2) + "\n");
  return kExitOk;
}

int cmd_verify(const std::string& config_path, const std::string& menu_path) {
  Loaded l = load(config_path);
  require_valid(l);
  pc_menu menu{};
  check(pc_menu_parse_file(menu_path.c_str(), &menu), menu_path);
  pc_residuals res{};
  check(pc_verify_menu(l.model.get(), &menu, &res), "verify");
  char* text = nullptr;
  check(pc_residuals_format(&res, l.run.solver.feas_tol, &text));
  std::cout << StringPtr(text).get();
  return pc_residuals_feasible(&res, l.run.solver.feas_tol) ? kExitOk
                                                            : kExitInfeasible;
}

void print_oracle(const pc_model* model, const pc_report& solver,
                  const std::string& title, int steps, int jobs,
                  double feas_tol) {
  pc_oracle_result o{};
  check(pc_oracle_solve(model, steps, jobs, &o), "oracle");
  const double diff = std::fabs(solver.profit - o.profit);
  const bool certified = diff <= o.certified_gap_bound + feas_tol;
  std::printf("[oracle, %s]\n", title.c_str());
  std::printf("x_steps = %d\n", steps);
  std::printf("oracle_x_L = %.6f\noracle_x_H = %.6f\n", o.menu.x_low,
              o.menu.x_high);
  std::printf("oracle_profit = %.6f\nsolver_profit = %.6f\n", o.profit,
              solver.profit);
  std::printf("profit_difference = %.3e\ncertified_gap = %.3e\n", diff,
              o.certified_gap_bound);
  std::string binding;
  auto add = [&binding](bool on, const char* name) {
    if (!on) return;
    if (!binding.empty()) binding += ", ";
    binding += name;
  };
  add(o.active_ir_low, "IR-low");
  add(o.active_ic_high, "IC-high");
  add(o.active_ic_low, "IC-low");
  add(o.active_ir_high, "IR-high");
  std::printf("binding = %s\n", binding.empty() ? "none" : binding.c_str());
  std::printf("solver_certified = %s%s\n", certified ? "yes" : "no",
              o.certified ? "" : " (gap from difference quotients)");
  if (!solver.reduction_valid) {
    std::printf(
        "note: reduced menu violates IR-high; the oracle menu is the "
        "full-constraint optimum\n");
  }
}

int cmd_compare(const std::string& config_path, const std::string& out_path,
                bool oracle, int steps_flag, int jobs_flag) {
  Loaded l = load(config_path);
  require_valid(l);
  if (pc_model_risk_kind(l.model.get()) == PC_RISK_NONE) {
    std::cerr << "privcontract: compare needs a risk model; [risk] kind is "
                 "none\n";
    return kExitRejected;
  }
  pc_comparison* raw = nullptr;
  check(pc_compare(l.model.get(), &l.run.solver, &raw), "compare");
  std::unique_ptr<pc_comparison, ComparisonDeleter> cmp(raw);

  char* text = nullptr;
  check(pc_comparison_format(cmp.get(), &text));
  std::cout << StringPtr(text).get();

  if (!out_path.empty()) {
    char* csv = nullptr;
    check(pc_comparison_csv(cmp.get(), &csv));
    write_output(out_path, StringPtr(csv).get());
  }

  if (oracle) {
    const int steps = steps_flag > 0 ? steps_flag : l.run.oracle_steps;
    const int jobs = jobs_flag >= 0 ? jobs_flag : l.run.jobs;
    pc_report no_risk, with_risk;
    check(pc_comparison_reports(cmp.get(), &no_risk, &with_risk));
    ModelPtr plain;
    {
      pc_model* m = nullptr;
      check(pc_model_without_risk(l.model.get(), &m));
      plain.reset(m);
    }
    std::cout << '\n';
    print_oracle(plain.get(), no_risk, "risk off", steps, jobs,
                 l.run.solver.feas_tol);
    std::cout << '\n';
    print_oracle(l.model.get(), with_risk, "risk on", steps, jobs,
                 l.run.solver.feas_tol);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-type privacy contract solver"};
  app.set_version_flag("--version", std::string(pc_version()));
  app.require_subcommand(1);

  std::string config, out, grid, menu;
  int jobs = -1;
  int oracle_steps = 0;
  bool oracle = false;

  auto* solve = app.add_subcommand("solve", "Print first- and second-best menus");
  solve->add_option("--config", config, "Model config file")->required();

  auto* sweep = app.add_subcommand("sweep", "Solve over a grid of priors, write CSV");
  sweep->add_option("--config", config, "Model config file")->required();
  sweep->add_option("--out", out, "CSV output path (stdout when omitted)");
  sweep->add_option("--grid", grid, "Prior grid p_min,p_max,n");
  sweep->add_option("--jobs", jobs, "Worker threads, 0 for all cores")
      ->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Check a menu against IC/IR constraints");
  verify->add_option("--config", config, "Model config file")->required();
  verify->add_option("--menu", menu, "File with x_L, t_L, x_H, t_H")->required();

  auto* compare = app.add_subcommand("compare", "Compare menus with and without risk");
  compare->add_option("--config", config, "Model config file")->required();
  compare->add_option("--out", out, "Ordering CSV output path");
  compare->add_flag("--oracle", oracle, "Certify with the brute-force solver");
  compare->add_option("--oracle-steps", oracle_steps, "Oracle grid points per axis")
      ->check(CLI::Range(2, 1000000));
  compare->add_option("--jobs", jobs, "Worker threads, 0 for all cores")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*solve) return cmd_solve(config);
    if (*sweep) return cmd_sweep(config, out, grid, jobs);
    if (*verify) return cmd_verify(config, menu);
    if (*compare) return cmd_compare(config, out, oracle, oracle_steps, jobs);
  } catch (const Failure& f) {
    return f.code;
  }
  return kExitError;
}
