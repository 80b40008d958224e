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

#include "privcontract/scalar_opt.hpp"

#include <cmath>
#include <cstdio>

#include "privcontract/errors.hpp"

namespace privcontract {

const char* to_string(Boundary b) {
  switch (b) {
    case Boundary::Interior:
      return "interior";
    case Boundary::LowerBound:
      return "lower";
    case Boundary::UpperBound:
      return "upper";
  }
  return "interior";
}

namespace {

constexpr int kMaxBisect = 200;
constexpr int kMaxGolden = 400;

double checked(const ScalarFn& fn, double x, const char* what) {
  const double v = fn(x);
  if (std::isnan(v)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s returned NaN at x = %.17g", what, x);
    throw NumericError(buf, x);
  }
  return v;
}

// Finds the boundary between a region where pred holds (at `in`) and where it
// does not (at `out`), to floating resolution.
template <typename Pred>
double edge(double in, double out, Pred pred, int& iterations) {
  for (int k = 0; k < kMaxBisect; ++k) {
    const double mid = 0.5 * (in + out);
    if (mid == in || mid == out) break;
    ++iterations;
    if (pred(mid)) {
      in = mid;
    } else {
      out = mid;
    }
  }
  return in;
}

OptResult bisect(const ScalarFn& f, const ScalarFn& slope,
                 const PrivacyInterval& iv, double tol) {
  OptResult r;
  const double s_lo = checked(slope, iv.x_min, "slope");
  if (s_lo <= 0.0) {
    r.argmax = iv.x_min;
    r.at_boundary = Boundary::LowerBound;
    r.max_value = checked(f, r.argmax, "objective");
    return r;
  }
  const double s_hi = checked(slope, iv.x_max, "slope");
  if (s_hi >= 0.0) {
    r.argmax = iv.x_max;
    r.at_boundary = Boundary::UpperBound;
    r.max_value = checked(f, r.argmax, "objective");
    return r;
  }

  double lo = iv.x_min, hi = iv.x_max;
  double mid = 0.5 * (lo + hi);
  double s_mid = 0.0;
  bool plateau = false;
  for (int k = 0; k < kMaxBisect; ++k) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++r.iterations;
    s_mid = checked(slope, mid, "slope");
    if (s_mid == 0.0) {
      plateau = true;
      break;
    }
    if (s_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= tol && std::fabs(s_mid) <= tol) break;
  }

  if (plateau) {
    auto zero = [&](double x) { return checked(slope, x, "slope") == 0.0; };
    const double left = edge(mid, lo, zero, r.iterations);
    const double right = edge(mid, hi, zero, r.iterations);
    r.argmax = 0.5 * (left + right);
  } else if (r.iterations > 0) {
    // The last probe is a bracket end and the point where |f'| was measured.
    r.argmax = mid;
  } else {
    r.argmax = 0.5 * (lo + hi);
  }
  r.at_boundary = Boundary::Interior;
  r.residual = std::fabs(checked(slope, r.argmax, "slope"));
  r.max_value = checked(f, r.argmax, "objective");
  return r;
}

OptResult golden(const ScalarFn& f, const PrivacyInterval& iv, double tol) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  OptResult r;
  double a = iv.x_min, b = iv.x_max;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = checked(f, c, "objective");
  double fd = checked(f, d, "objective");
  while (b - a > tol && r.iterations < kMaxGolden) {
    ++r.iterations;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = checked(f, c, "objective");
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = checked(f, d, "objective");
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = checked(f, x, "objective");
  if (x - iv.x_min <= tol) {
    const double f_end = checked(f, iv.x_min, "objective");
    if (f_end >= fx) {
      r.argmax = iv.x_min;
      r.at_boundary = Boundary::LowerBound;
      r.max_value = f_end;
      return r;
    }
  }
  if (iv.x_max - x <= tol) {
    const double f_end = checked(f, iv.x_max, "objective");
    if (f_end >= fx) {
      r.argmax = iv.x_max;
      r.at_boundary = Boundary::UpperBound;
      r.max_value = f_end;
      return r;
    }
  }
  r.argmax = x;
  r.max_value = fx;
  r.at_boundary = Boundary::Interior;
  r.residual = b - a;
  return r;
}

}  // namespace

OptResult maximize_concave(const ScalarFn& f, const ScalarFn& slope,
                           const PrivacyInterval& interval, double tol) {
  if (!f) throw ArgumentError("maximize_concave: objective is empty");
  if (!(tol > 0.0)) {
    throw ArgumentError("maximize_concave: tolerance must be positive");
  }
  if (!std::isfinite(interval.x_min) || !std::isfinite(interval.x_max) ||
      !(interval.x_min < interval.x_max)) {
    throw ArgumentError("maximize_concave: interval must satisfy x_min < x_max");
  }
  return slope ? bisect(f, slope, interval, tol) : golden(f, interval, tol);
}

}  // namespace privcontract
