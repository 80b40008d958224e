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

#include "privcontract/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "parallel.hpp"
#include "privcontract/errors.hpp"

namespace privcontract {

namespace {

constexpr double kVertexFeasTol = 1e-12;
constexpr double kActiveTol = 1e-9;
constexpr int kVertices = 5;

// Utilities and costs at a fixed allocation pair.
struct PairValues {
  double ul_l;  // U(x_L, th_L)
  double uh_l;  // U(x_L, th_H)
  double ul_h;  // U(x_H, th_L)
  double uh_h;  // U(x_H, th_H)
  double g_l;
  double g_h;
};

struct Vertex {
  double t_low;
  double t_high;
  double profit;
};

// Vertices, in order: IR-low/IC-high, IR-low/IR-high, IR-low/IC-low,
// IR-high/IC-high, IR-high/IC-low. The first feasible vertex of maximal
// profit wins.
bool best_vertex(const PairValues& q, double p, Vertex& out) {
  const double a = q.ul_l;
  const double b = q.uh_h;
  const double c = q.uh_h - q.uh_l;
  const double d = q.ul_h - q.ul_l;
  const std::array<std::array<double, 2>, kVertices> cand = {{
      {a, a + c},
      {a, b},
      {a, a + d},
      {b - c, b},
      {b - d, b},
  }};
  bool found = false;
  for (const auto& v : cand) {
    const double tl = v[0], th = v[1];
    const double ic_high = (q.uh_h - th) - (q.uh_l - tl);
    const double ic_low = (q.ul_l - tl) - (q.ul_h - th);
    const double ir_low = q.ul_l - tl;
    const double ir_high = q.uh_h - th;
    if (ic_high < -kVertexFeasTol || ic_low < -kVertexFeasTol ||
        ir_low < -kVertexFeasTol || ir_high < -kVertexFeasTol) {
      continue;
    }
    const double pr = (1.0 - p) * (tl - q.g_l) + p * (th - q.g_h);
    if (!found || pr > out.profit) {
      out = {tl, th, pr};
      found = true;
    }
  }
  return found;
}

// Vertex profit splits as A(x_L) + B(x_H); each half is a linear combination
// of U(.,th_L), U(.,th_H) and g.
struct Combo {
  double low, high, cost;
};

struct VertexForm {
  Combo a;
  Combo b;
};

std::array<VertexForm, kVertices> vertex_forms(double p) {
  const double q = 1.0 - p;
  return {{
      {{1.0, -p, -q}, {0.0, p, -p}},
      {{q, 0.0, -q}, {0.0, p, -p}},
      {{q, 0.0, -q}, {p, 0.0, -p}},
      {{0.0, q, -q}, {0.0, p, -p}},
      {{q, 0.0, -q}, {-q, 1.0, -p}},
  }};
}

// Can vertex v be feasible somewhere in the cell [x_i, x_i+1] x [x_j, x_j+1]?
// Uses that D = U(.,th_H) - U(.,th_L) is nondecreasing.
bool vertex_possible(int v, const std::vector<double>& D, std::size_t i,
                     std::size_t j) {
  constexpr double e = kVertexFeasTol;
  switch (v) {
    case 0:
      return D[i + 1] >= -e;
    case 1:
      return D[i] <= e && D[j + 1] >= -e;
    case 2:
      return D[j + 1] >= -e;
    case 3:
      return D[i] <= e;
    case 4:
      return D[j] <= e;
  }
  return false;
}

struct Samples {
  std::vector<double> x, ul, uh, g;
  std::vector<double> dul, duh, dg;
};

// Upper bound of a combination f on each cell [a, b] of width h. By the mean
// value theorem the chord slope lies in the range of f', so f minus its chord
// has a derivative with zero mean and oscillation at most V, which bounds
// the excess over the chord by V h / 4. Each ingredient's derivative is
// monotone (concave U, convex g), so V is the weighted sum of endpoint
// derivative differences.
std::vector<double> cell_upper_bounds(const Samples& s, const Combo& c) {
  const std::size_t cells = s.x.size() - 1;
  std::vector<double> ub(cells);
  auto val = [&](std::size_t k) {
    return c.low * s.ul[k] + c.high * s.uh[k] + c.cost * s.g[k];
  };
  for (std::size_t k = 0; k < cells; ++k) {
    const double variation =
        std::fabs(c.low) * std::fabs(s.dul[k + 1] - s.dul[k]) +
        std::fabs(c.high) * std::fabs(s.duh[k + 1] - s.duh[k]) +
        std::fabs(c.cost) * std::fabs(s.dg[k + 1] - s.dg[k]);
    const double h = s.x[k + 1] - s.x[k];
    // Pads for rounding in the sampled values.
    const double scale = std::fabs(c.low) * std::fabs(s.ul[k]) +
                         std::fabs(c.high) * std::fabs(s.uh[k]) +
                         std::fabs(c.cost) * std::fabs(s.g[k]) + 1.0;
    ub[k] = std::max(val(k), val(k + 1)) + 0.25 * h * variation +
            16.0 * std::numeric_limits<double>::epsilon() * scale;
  }
  return ub;
}

// As cell_upper_bounds, restricted to the part of each cell where
// D = U(.,th_H) - U(.,th_L) <= kVertexFeasTol. On a cell where D crosses
// that level, D' >= U'(b,th_H) - U'(a,th_L) > 0 confines the feasible part
// to [a, a + w], on which f <= f(a) + w max(0, f'(a) + V).
std::vector<double> restricted_upper_bounds(const Samples& s, const Combo& c,
                                            const std::vector<double>& D,
                                            const std::vector<double>& full) {
  std::vector<double> ub = full;
  for (std::size_t k = 0; k + 1 < s.x.size(); ++k) {
    if (!(D[k] <= kVertexFeasTol && D[k + 1] > kVertexFeasTol)) continue;
    const double slope_floor = s.duh[k + 1] - s.dul[k];
    if (!(slope_floor > 0.0)) continue;
    const double h = s.x[k + 1] - s.x[k];
    const double w = std::min(h, (kVertexFeasTol - D[k]) / slope_floor);
    const double f = c.low * s.ul[k] + c.high * s.uh[k] + c.cost * s.g[k];
    const double df = c.low * s.dul[k] + c.high * s.duh[k] + c.cost * s.dg[k];
    const double variation =
        std::fabs(c.low) * std::fabs(s.dul[k + 1] - s.dul[k]) +
        std::fabs(c.high) * std::fabs(s.duh[k + 1] - s.duh[k]) +
        std::fabs(c.cost) * std::fabs(s.dg[k + 1] - s.dg[k]);
    const double scale = std::fabs(c.low) * std::fabs(s.ul[k]) +
                         std::fabs(c.high) * std::fabs(s.uh[k]) +
                         std::fabs(c.cost) * std::fabs(s.g[k]) + 1.0;
    const double local = f + w * std::max(0.0, df + variation) +
                         16.0 * std::numeric_limits<double>::epsilon() * scale;
    ub[k] = std::min(ub[k], local);
  }
  return ub;
}

std::vector<double> difference_quotients(const std::vector<double>& x,
                                         const std::vector<double>& f) {
  const std::size_t n = x.size();
  std::vector<double> d(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t lo = k == 0 ? 0 : k - 1;
    const std::size_t hi = k + 1 == n ? k : k + 1;
    d[k] = (f[hi] - f[lo]) / (x[hi] - x[lo]);
  }
  return d;
}

struct Best {
  bool found = false;
  double profit = 0.0;
  std::size_t i = 0, j = 0;
  double t_low = 0.0, t_high = 0.0;
};

bool better(const Best& a, const Best& b) {
  if (!b.found) return a.found;
  if (!a.found) return false;
  if (a.profit != b.profit) return a.profit > b.profit;
  return a.i != b.i ? a.i < b.i : a.j < b.j;
}

}  // namespace

PriceOptimum inner_price_optimum(const ModelSpec& spec, double x_low,
                                 double x_high) {
  const PairValues q{effective_utility(spec, x_low, TypeSel::Low),
                     effective_utility(spec, x_low, TypeSel::High),
                     effective_utility(spec, x_high, TypeSel::Low),
                     effective_utility(spec, x_high, TypeSel::High),
                     spec.cost.value(x_low), spec.cost.value(x_high)};
  Vertex v{};
  if (!best_vertex(q, spec.prior(), v)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "no incentive-compatible prices at x_L = %.17g, x_H = %.17g "
                  "(needs U(x_H,th_H) - U(x_H,th_L) >= U(x_L,th_H) - "
                  "U(x_L,th_L))",
                  x_low, x_high);
    throw ArgumentError(buf);
  }
  return {v.t_low, v.t_high, v.profit};
}

OracleResult solve_p1_bruteforce(const ModelSpec& spec, int x_steps,
                                 int jobs) {
  if (x_steps < 2) throw ArgumentError("oracle needs x_steps >= 2");
  const double p = spec.prior();
  if (!(p > 0.0 && p < 1.0)) {
    throw ArgumentError("oracle needs prior_high in (0, 1)");
  }
  require_valid(spec);

  const std::size_t n = static_cast<std::size_t>(x_steps);
  const PrivacyInterval& iv = spec.interval;
  Samples s;
  s.x.resize(n);
  s.ul.resize(n);
  s.uh.resize(n);
  s.g.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.x[k] = iv.x_min + iv.width() * (static_cast<double>(k) / (n - 1));
  }
  s.x.back() = iv.x_max;
  for (std::size_t k = 0; k < n; ++k) {
    s.ul[k] = effective_utility(spec, s.x[k], TypeSel::Low);
    s.uh[k] = effective_utility(spec, s.x[k], TypeSel::High);
    s.g[k] = spec.cost.value(s.x[k]);
  }
  const bool exact_slopes = spec.differentiable();
  if (exact_slopes) {
    s.dul.resize(n);
    s.duh.resize(n);
    s.dg.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      s.dul[k] = effective_utility_slope(spec, s.x[k], TypeSel::Low);
      s.duh[k] = effective_utility_slope(spec, s.x[k], TypeSel::High);
      s.dg[k] = spec.cost.slope(s.x[k]);
    }
  } else {
    s.dul = difference_quotients(s.x, s.ul);
    s.duh = difference_quotients(s.x, s.uh);
    s.dg = difference_quotients(s.x, s.g);
  }

  std::vector<double> D(n);
  for (std::size_t k = 0; k < n; ++k) D[k] = s.uh[k] - s.ul[k];

  const auto forms = vertex_forms(p);
  std::array<std::vector<double>, kVertices> ub_a, ub_b;
  for (int v = 0; v < kVertices; ++v) {
    ub_a[v] = cell_upper_bounds(s, forms[v].a);
    ub_b[v] = cell_upper_bounds(s, forms[v].b);
  }
  // Vertices 2 and 4 need D(x_L) <= 0; vertex 5 needs D(x_H) <= 0.
  ub_a[1] = restricted_upper_bounds(s, forms[1].a, D, ub_a[1]);
  ub_a[3] = restricted_upper_bounds(s, forms[3].a, D, ub_a[3]);
  ub_b[4] = restricted_upper_bounds(s, forms[4].b, D, ub_b[4]);

  const int workers = internal::resolve_jobs(jobs, n);
  std::vector<Best> per_worker(workers);
  std::vector<double> upper_per_worker(workers, -INFINITY);
  internal::parallel_for(n, workers, [&](int w, std::size_t i) {
    Best& best = per_worker[w];
    double& upper = upper_per_worker[w];
    for (std::size_t j = i; j < n; ++j) {
      const PairValues q{s.ul[i], s.uh[i], s.ul[j], s.uh[j], s.g[i], s.g[j]};
      Vertex v{};
      if (!best_vertex(q, p, v)) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "price polytope empty at x_L = %.17g, x_H = %.17g",
                      s.x[i], s.x[j]);
        throw InternalError(buf);
      }
      Best cand;
      cand.found = true;
      cand.profit = v.profit;
      cand.i = i;
      cand.j = j;
      cand.t_low = v.t_low;
      cand.t_high = v.t_high;
      if (better(cand, best)) best = cand;
    }
    if (i + 1 < n) {
      for (std::size_t j = i; j + 1 < n; ++j) {
        for (int v = 0; v < kVertices; ++v) {
          if (!vertex_possible(v, D, i, j)) continue;
          upper = std::max(upper, ub_a[v][i] + ub_b[v][j]);
        }
      }
    }
  });

  Best best;
  for (const Best& b : per_worker) {
    if (better(b, best)) best = b;
  }
  const double upper =
      *std::max_element(upper_per_worker.begin(), upper_per_worker.end());
  if (!best.found) throw InternalError("oracle found no feasible menu");

  OracleResult r;
  r.menu.low = {s.x[best.i], best.t_low};
  r.menu.high = {s.x[best.j], best.t_high};
  r.menu.regime = Regime::SecondBest;
  r.menu.risk_active = spec.risk.active();
  r.profit = best.profit;
  r.x_grid_step = iv.width() / static_cast<double>(n - 1);
  r.certified_gap_bound = std::max(0.0, upper - best.profit);
  r.certified = exact_slopes;
  r.residuals = verify_menu(spec, r.menu);
  r.active = {std::fabs(r.residuals.ic_high) <= kActiveTol,
              std::fabs(r.residuals.ic_low) <= kActiveTol,
              std::fabs(r.residuals.ir_low) <= kActiveTol,
              std::fabs(r.residuals.ir_high) <= kActiveTol};
  return r;
}

}  // namespace privcontract
