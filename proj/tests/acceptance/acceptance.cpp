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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.
//
// usage: acceptance <path-to-privcontract-cli> <tests-source-dir>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
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
#include "support/test_specs.hpp"

namespace pc = privcontract;
namespace fs = std::filesystem;
using pc::testing::Rng;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

std::string g_cli;
std::string g_src;
fs::path g_tmp;

// Runs the CLI with output discarded; returns its exit status.
int RunCli(const std::string& args) {
  const std::string cmd = "'" + g_cli + "' " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string Tmp(const std::string& name) { return (g_tmp / name).string(); }

std::string WriteTmp(const std::string& name, const std::string& text) {
  const std::string path = Tmp(name);
  pc::write_text_file(path, text);
  return path;
}

// Independent closed form for the linear model with quadratic cost.
struct Closed {
  double xl, xh, tl, th;
};

Closed ClosedForm(const pc::DlcParams& d, bool risk) {
  const double m = risk ? d.m : 0.0;
  const double ll = risk ? d.loss_low : 0.0, lh = risk ? d.loss_high : 0.0;
  const double p = d.prior_high;
  const double xh = (d.theta_high + m * lh) / d.zeta;
  const double xl =
      std::max(0.0, (m * ll - p * m * lh - p * d.theta_high + d.theta_low) /
                        (1.0 - p)) /
      d.zeta;
  const double tl = d.theta_low * xl - m * (1.0 - xl) * ll;
  const double th = tl + (d.theta_high + m * lh) * (xh - xl);
  return {xl, xh, tl, th};
}

// 1. Closed-form agreement.
Outcome Criterion1() {
  Rng rng(1001);
  const std::vector<double> grid = pc::linear_grid(0.01, 0.99, 99);
  double worst = 0.0;
  int compared = 0, redraws = 0, module_mismatch = 0;
  for (int draw = 0; draw < 200; ++draw) {
    pc::DlcParams d;
    for (;;) {
      d = pc::testing::random_dlc(rng);
      if ((d.theta_high + d.m * d.loss_high) / d.zeta < 1.0) break;
      ++redraws;
    }
    for (bool risk : {false, true}) {
      const pc::ModelSpec base = pc::to_model_spec(d, risk);
      for (double p : grid) {
        pc::DlcParams dp = d;
        dp.prior_high = p;
        const Closed c = ClosedForm(dp, risk);
        const pc::SolveReport r = pc::solve_second_best(base.with_prior(p));
        const double err = std::max(
            {std::fabs(r.menu.low.x - c.xl), std::fabs(r.menu.high.x - c.xh),
             std::fabs(r.menu.low.t - c.tl), std::fabs(r.menu.high.t - c.th)});
        worst = std::max(worst, err);
        const pc::ClosedFormMenu lib = pc::closed_form_second_best(dp, risk);
        if (std::fabs(lib.menu.low.t - c.tl) > 1e-12 ||
            std::fabs(lib.menu.high.t - c.th) > 1e-12) {
          ++module_mismatch;
        }
        ++compared;
      }
    }
  }
  return {worst <= 1e-6 && module_mismatch == 0,
          Fmt("%d points (200 draws x 99 p x risk off/on, %d redraws for "
              "interior x_H), max field error %.3g (limit 1e-6), dlc module "
              "mismatches %d",
              compared, redraws, worst, module_mismatch)};
}

// 2 and 3. Oracle certification and binding pattern, sharing oracle runs.
struct OracleRun {
  pc::SolveReport solver;
  pc::OracleResult oracle;
  bool risk;
};

std::vector<OracleRun> g_oracle_runs;

Outcome Criterion2() {
  Rng rng(2002);
  double worst_excess = -INFINITY, worst_gap = 0.0;
  int bad = 0, risk_on = 0;
  for (int k = 0; k < 50; ++k) {
    const pc::ModelSpec s = pc::testing::random_type_monotone_spec(rng);
    OracleRun run{pc::solve_second_best(s), pc::solve_p1_bruteforce(s, 2001, 0),
                  s.risk.kind() != pc::RiskModel::Kind::None};
    risk_on += run.risk;
    const double diff = std::fabs(run.solver.profit - run.oracle.profit);
    const double gap = run.oracle.certified_gap_bound;
    worst_excess = std::max(worst_excess, diff - gap);
    worst_gap = std::max(worst_gap, gap);
    if (!(diff <= gap) || gap > 1e-3 || !run.oracle.certified) ++bad;
    g_oracle_runs.push_back(run);
  }
  return {bad == 0,
          Fmt("50 specs (%d risk on, %d off), 2001 steps; max gap %.3g (limit "
              "1e-3), max |solver - oracle| - gap = %.3g, violations %d",
              risk_on, 50 - risk_on, worst_gap, worst_excess, bad)};
}

Outcome Criterion3() {
  int exact = 0, degenerate = 0, bad = 0;
  for (const OracleRun& r : g_oracle_runs) {
    const pc::ActiveConstraints& a = r.oracle.active;
    // IR-high's slack is the information rent; it is zero, and IR-high
    // weakly binding, exactly when the types are indistinguishable at x_L.
    const double rent = r.oracle.residuals.ir_high;
    const bool core = a.ir_low && a.ic_high && !a.ic_low;
    if (core && !a.ir_high) {
      ++exact;
    } else if (core && a.ir_high && std::fabs(rent) <= 1e-9) {
      ++degenerate;
    } else {
      ++bad;
    }
  }
  const bool ran = g_oracle_runs.size() == 50;
  return {ran && bad == 0,
          Fmt("%zu oracle runs: %d with exactly {IR-low, IC-high} active, %d "
              "with zero rent where IR-high also binds weakly, %d other "
              "patterns",
              g_oracle_runs.size(), exact, degenerate, bad)};
}

// 4. No distortion at the top.
Outcome Criterion4() {
  Rng rng(4004);
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const pc::ModelSpec s = pc::testing::random_spec(rng, rng.coin());
    const double sb = pc::solve_second_best(s).menu.high.x;
    const double fb = pc::solve_first_best(s).menu.high.x;
    worst = std::max(worst, std::fabs(sb - fb));
  }
  return {worst <= 2e-10,
          Fmt("500 specs, max |x_H* - x_H_fb| = %.3g (limit 2e-10)", worst)};
}

// 5. Propositions.
Outcome Criterion5() {
  Rng rng(5005);
  double worst = INFINITY;
  int evaluated = 0, ties = 0, equal = 0, skipped_other = 0;
  int p4_clauses = 0, p4_skipped = 0, p4_fail = 0, p4c_applicable = 0,
      p4c_skipped = 0;
  for (int k = 0; k < 500; ++k) {
    const pc::ComparisonReport r = pc::compare(pc::testing::random_spec(rng, true));
    for (const pc::OrderingCheck& c : r.orderings) {
      if (c.proposition == "4") continue;
      switch (c.verdict) {
        case pc::Verdict::TieAtBoundary:
          ++ties;
          break;
        case pc::Verdict::Skipped:
          ++skipped_other;
          break;
        default:
          ++evaluated;
          equal += c.verdict == pc::Verdict::Equal;
          worst = std::min(worst, c.slack);
      }
    }
    // Clauses a and b are the two sides of one price statement; exactly one
    // applies unless p = p_bar. Clause c is conditional.
    const pc::OrderingCheck* a = r.find("4", "a");
    const pc::OrderingCheck* b = r.find("4", "b");
    const pc::OrderingCheck* c = r.find("4", "c");
    ++p4_clauses;
    if (a->verdict == pc::Verdict::Skipped && b->verdict == pc::Verdict::Skipped) {
      ++p4_skipped;
    }
    ++p4_clauses;
    if (c->verdict == pc::Verdict::Skipped) ++p4_skipped;
    if (c->note != "side condition p > p_bar fails") {
      ++p4c_applicable;
      if (c->verdict == pc::Verdict::Skipped) ++p4c_skipped;
    }
    for (const auto* x : {a, b, c}) p4_fail += x->verdict == pc::Verdict::Fail;
  }
  const double skip_rate = static_cast<double>(p4_skipped) / p4_clauses;
  return {worst >= -2e-10 && skip_rate < 0.5,
          Fmt("500 risk specs: Props 1/2/3/5 evaluated %d (equal %d), "
              "boundary ties %d, skipped %d, min slack %.3g (limit -2e-10); "
              "Prop 4 side-condition skips %d/%d = %.1f%% (limit 50%%), "
              "clause c ratio-condition skips %d/%d, Prop 4 FAIL verdicts %d",
              evaluated, equal, ties, skipped_other, worst, p4_skipped,
              p4_clauses, 100.0 * skip_rate, p4c_skipped, p4c_applicable,
              p4_fail)};
}

// 6. Thresholds.
Outcome Criterion6() {
  Rng rng(6006);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const pc::DlcParams d = pc::testing::random_dlc(rng);
    const pc::Thresholds t = pc::thresholds(pc::to_model_spec(d, true));
    const double hat = d.theta_low / d.theta_high;
    const double star = (d.theta_low + d.m * d.loss_low) /
                        (d.theta_high + d.m * d.loss_high);
    worst = std::max({worst, std::fabs(t.p_star_norisk - hat),
                      std::fabs(t.p_star_risk - star)});
  }
  return {worst <= 1e-6,
          Fmt("100 draws, max threshold error %.3g (limit 1e-6)", worst)};
}

// 7. Sweep shape on the reference config.
struct Series {
  std::vector<pc::SweepCsvRow> fb, sb;
};

Series Select(const std::vector<pc::SweepCsvRow>& rows, const char* risk) {
  Series s;
  for (const auto& r : rows) {
    if (r.risk != risk) continue;
    (r.regime == "first_best" ? s.fb : s.sb).push_back(r);
  }
  return s;
}

std::string CheckShape(const Series& s, const pc::DlcParams& d, bool risk) {
  const std::size_t n = s.sb.size();
  if (n != 99 || s.fb.size() != 99) return "wrong row count";
  const double step = s.sb[1].p - s.sb[0].p;
  const double m = risk ? d.m : 0.0;
  const double a = d.theta_low + m * d.loss_low;
  const double b = d.theta_high + m * d.loss_high;
  const double crit = a / b;

  for (std::size_t k = 0; k < n; ++k) {
    const auto& r = s.sb[k];
    if (std::fabs(r.x_high - s.sb[0].x_high) > 1e-12) return "x_H not constant";
    if (std::fabs(r.x_high - s.fb[k].x_high) > 1e-12) return "x_H distorted";
    pc::DlcParams dp = d;
    dp.prior_high = r.p;
    const Closed c = ClosedForm(dp, risk);
    if (std::fabs(r.x_low - c.xl) > 1e-9) return "x_L off closed form";
    if (std::fabs(r.rent - (s.fb[k].t_high - r.t_high)) > 1e-9) {
      return "rent differs from first-best minus second-best t_H";
    }
    if (std::fabs(r.welfare - (r.profit + r.p * r.rent)) > 1e-9) {
      return "W != profit + p rent";
    }
    if (r.p >= crit) {
      if (r.x_low != 0.0 || r.boundary_low != "lower") return "x_L not at x_min";
      if (std::fabs(r.rent) > 1e-12) return "rent not zero beyond critical p";
    } else if (!(r.x_low > 0.0 && r.rent > 0.0)) {
      return "x_L or rent not positive before critical p";
    }
  }
  // Continuity: |dx_L/dp| = (b - a) / ((1 - p)^2 zeta) is largest at crit.
  const double lip = (b - a) / ((1 - crit) * (1 - crit) * d.zeta);
  for (std::size_t k = 1; k < n; ++k) {
    if (std::fabs(s.sb[k].x_low - s.sb[k - 1].x_low) > lip * step * (1 + 1e-9)) {
      return "x_L jumps";
    }
  }
  // First grid point at x_min, and the start of the linear tail of profit.
  std::size_t first_zero = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (s.sb[k].x_low == 0.0) {
      first_zero = k;
      break;
    }
  }
  std::size_t linear_from = n - 2;
  while (linear_from > 0) {
    const std::size_t j = linear_from;  // second difference centered at j
    const double d2 =
        s.sb[j - 1].profit - 2 * s.sb[j].profit + s.sb[j + 1].profit;
    if (std::fabs(d2) > 1e-9) break;
    --linear_from;
  }
  // Second differences centered at linear_from + 1 .. n - 2 vanish.
  const double kink = s.sb[linear_from].p;
  if (first_zero == n) return "x_L never reaches x_min";
  const double zero_at = s.sb[first_zero].p;
  if (!(zero_at >= crit && zero_at - crit < step + 1e-12)) {
    return Fmt("x_L reaches x_min at p = %.4f, critical %.6f", zero_at, crit);
  }
  if (!(kink >= crit - 1e-12 && kink - crit < step + 1e-12)) {
    return Fmt("profit becomes linear at p = %.4f, critical %.6f", kink, crit);
  }
  for (std::size_t j = 1; j < linear_from; ++j) {
    const double d2 =
        s.sb[j - 1].profit - 2 * s.sb[j].profit + s.sb[j + 1].profit;
    if (!(d2 > 1e-9)) return "profit not strictly convex before critical p";
  }
  return Fmt("ok (critical p %.6f, x_L hits x_min at %.2f, profit linear "
             "from %.2f)",
             crit, zero_at, kink);
}

Outcome Criterion7() {
  const std::string config = g_src + "/data/reference.ini";
  const std::string out = Tmp("shape.csv");
  const int rc = RunCli("sweep --config '" + config +
                        "' --grid 0.01,0.99,99 --out '" + out + "'");
  if (rc != 0) return {false, Fmt("sweep exited %d", rc)};
  const auto rows = pc::parse_sweep_csv(pc::read_text_file(out));
  const pc::RunConfig cfg = pc::load_config(config);
  pc::DlcParams d;
  d.theta_low = cfg.model.types.theta_low;
  d.theta_high = cfg.model.types.theta_high;
  d.zeta = cfg.model.cost.zeta();
  d.m = cfg.model.risk.m();
  d.loss_low = cfg.model.risk.loss_low();
  d.loss_high = cfg.model.risk.loss_high();
  const std::string off = CheckShape(Select(rows, "off"), d, false);
  const std::string on = CheckShape(Select(rows, "on"), d, true);

  // Unequal losses: the rent can be negative, which the reference config
  // avoids. Reported for information.
  int negative = 0;
  const int rc2 = RunCli("sweep --config '" + g_src +
                         "/../configs/dlc_risk.ini' --grid 0.01,0.99,99 --out '" +
                         Tmp("risk.csv") + "'");
  if (rc2 == 0) {
    for (const auto& r : pc::parse_sweep_csv(pc::read_text_file(Tmp("risk.csv")))) {
      negative += r.regime == "second_best" && r.rent < -1e-12;
    }
  }
  const bool pass = off.rfind("ok", 0) == 0 && on.rfind("ok", 0) == 0;
  return {pass, Fmt("reference sweep 0.01..0.99 x 99: risk off %s; risk on "
                    "%s; [dlc_risk.ini: %d second-best rows with negative rent]",
                    off.c_str(), on.c_str(), negative)};
}

// 8. Finite differences.
Outcome Criterion8() {
  Rng rng(8008);
  const double h = 1e-5;
  double worst = 0.0;
  int points = 0;
  for (int k = 0; k < 100; ++k) {
    const bool risk = k % 2 == 1;
    const pc::ModelSpec s = pc::testing::random_spec(rng, risk);
    for (int i = 0; i < 100; ++i) {
      const double x = h + (1.0 - 2 * h) * i / 99.0;
      for (pc::TypeSel t : {pc::TypeSel::Low, pc::TypeSel::High}) {
        const double fd = (pc::effective_utility(s, x + h, t) -
                           pc::effective_utility(s, x - h, t)) /
                          (2 * h);
        worst = std::max(worst,
                         std::fabs(pc::effective_utility_slope(s, x, t) - fd));
        ++points;
      }
      const double gfd = (pc::cost(s, x + h) - pc::cost(s, x - h)) / (2 * h);
      worst = std::max(worst, std::fabs(pc::cost_slope(s, x) - gfd));
    }
  }
  return {worst <= 1e-6,
          Fmt("linear-in-type utility with risk none and linear breach, "
              "quadratic cost: %d utility points, max |slope - central "
              "difference| %.3g (limit 1e-6)",
              points, worst)};
}

// 9. CLI contract.
Outcome Criterion9() {
  std::vector<std::string> failures;
  auto expect = [&](const std::string& label, const std::string& args,
                    int want) {
    const int got = RunCli(args);
    if (got != want) failures.push_back(Fmt("%s: exit %d, want %d",
                                            label.c_str(), got, want));
  };
  const std::string ref = "'" + g_src + "/data/reference.ini'";

  // Golden file.
  const std::string golden = pc::read_text_file(g_src + "/golden/reference_sweep.csv");
  const std::string out1 = Tmp("golden1.csv"), out4 = Tmp("golden4.csv");
  expect("sweep golden", "sweep --config " + ref +
                             " --grid 0.05,0.95,19 --jobs 1 --out '" + out1 + "'",
         0);
  expect("sweep golden jobs 4", "sweep --config " + ref +
                                    " --grid 0.05,0.95,19 --jobs 4 --out '" +
                                    out4 + "'",
         0);
  bool golden_ok = false;
  try {
    golden_ok = pc::read_text_file(out1) == golden &&
                pc::read_text_file(out4) == golden;
    if (!fs::exists(out1 + ".meta.json")) failures.push_back("no sidecar");
  } catch (const pc::Error& e) {
    failures.push_back(e.what());
  }
  if (!golden_ok) failures.push_back("sweep CSV differs from golden file");

  std::string base = pc::read_text_file(g_src + "/data/reference.ini");
  const std::string bad_types = WriteTmp(
      "bad_types.ini",
      [&] {
        std::string t = base;
        t.replace(t.find("theta_low = 1"), 13, "theta_low = 3");
        return t;
      }());
  const std::string malformed = WriteTmp("malformed.ini", base + "bogus = 1\n");
  const std::string no_risk =
      "'" + g_src + "/../configs/dlc_norisk.ini'";
  const std::string missing = "'" + Tmp("does_not_exist.ini") + "'";

  for (const char* cmd : {"solve", "sweep", "compare"}) {
    const std::string c = cmd;
    const std::string extra =
        c == "sweep" ? " --grid 0.1,0.9,9 --out '" + Tmp("m.csv") + "'" : "";
    expect(c + " ok", c + " --config " + ref + extra, 0);
    expect(c + " invalid model", c + " --config '" + bad_types + "'" + extra, 2);
    expect(c + " malformed", c + " --config '" + malformed + "'" + extra, 1);
    expect(c + " missing file", c + " --config " + missing + extra, 1);
  }
  expect("solve no risk", "solve --config " + no_risk, 0);
  expect("sweep n < 2", "sweep --config " + ref + " --grid 0.1,0.9,1", 1);
  expect("sweep bad grid", "sweep --config " + ref + " --grid 0,0.9,5", 1);
  expect("compare risk none", "compare --config " + no_risk, 2);
  expect("compare oracle", "compare --config " + ref + " --oracle --oracle-steps 201", 0);
  expect("no subcommand", "", 1);
  expect("unknown option", "solve --config " + ref + " --bogus", 1);

  const std::string feasible = WriteTmp("feasible.txt", "0.2,0.2,0.6,1.0\n");
  const std::string infeasible = WriteTmp("infeasible.txt", "0.2,0.2,0.6,1.1\n");
  const std::string outside = WriteTmp("outside.txt", "0.2,0.2,1.6,1.0\n");
  const std::string zero = WriteTmp("zero.txt", "0 0 0 0\n");
  expect("verify feasible",
         "verify --config " + no_risk + " --menu '" + feasible + "'", 0);
  expect("verify zero menu",
         "verify --config " + no_risk + " --menu '" + zero + "'", 0);
  expect("verify infeasible",
         "verify --config " + no_risk + " --menu '" + infeasible + "'", 3);
  expect("verify outside interval",
         "verify --config " + no_risk + " --menu '" + outside + "'", 1);
  expect("verify missing menu",
         "verify --config " + no_risk + " --menu " + missing, 1);
  expect("verify no menu option", "verify --config " + no_risk, 1);
  expect("verify invalid model",
         "verify --config '" + bad_types + "' --menu '" + feasible + "'", 2);
  expect("verify malformed",
         "verify --config '" + malformed + "' --menu '" + feasible + "'", 1);

  std::string detail = Fmt("golden %s (76 rows, jobs 1 and 4); exit-code "
                           "matrix over solve/sweep/verify/compare",
                           golden_ok ? "byte-identical" : "MISMATCH");
  for (const std::string& f : failures) detail += "; " + f;
  return {failures.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <privcontract-cli> <tests-dir>\n", argv[0]);
    return 2;
  }
  g_cli = argv[1];
  g_src = argv[2];
  g_tmp = fs::temp_directory_path() /
          ("privcontract_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(g_tmp);

  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"closed-form agreement", Criterion1},
      {"oracle certification", Criterion2},
      {"constraint reduction", Criterion3},
      {"no distortion at top", Criterion4},
      {"propositions", Criterion5},
      {"thresholds", Criterion6},
      {"sweep shape", Criterion7},
      {"finite differences", Criterion8},
      {"cli contract", Criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    failed += !o.pass;
    std::printf("AC%zu %s %s [%.2fs]: %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  fs::remove_all(g_tmp);
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
