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

// One-dimensional concave maximization over a closed interval.

#ifndef PRIVCONTRACT_SCALAR_OPT_HPP_
#define PRIVCONTRACT_SCALAR_OPT_HPP_

#include <functional>

#include "privcontract/model.hpp"

namespace privcontract {

enum class Boundary { Interior, LowerBound, UpperBound };

const char* to_string(Boundary b);

struct OptResult {
  double argmax = 0.0;
  // f(argmax), evaluated once more at the returned point.
  double max_value = 0.0;
  Boundary at_boundary = Boundary::Interior;
  int iterations = 0;
  // |f'(argmax)| for derivative bisection, the final bracket width for
  // golden-section search, 0 at a boundary.
  double residual = 0.0;
};

using ScalarFn = std::function<double(double)>;

constexpr double kDefaultTol = 1e-10;

// Maximizes a concave `f` on `interval`.
//
// With `slope`, bisects on the sign of f'. Returns LowerBound when
// f'(x_min) <= 0 and UpperBound when f'(x_max) >= 0. Otherwise the bracket is
// narrowed to width `tol` and further while |f'| > tol, down to floating
// resolution. A region where f' is exactly zero resolves to the midpoint of
// that region.
//
// Without `slope`, runs golden-section search to bracket width `tol`. Its
// accuracy in x is limited to about sqrt(machine epsilon) relative, because
// it compares function values.
//
// Throws ArgumentError for tol <= 0 or a degenerate interval, NumericError
// (carrying x) when an evaluator returns NaN.
OptResult maximize_concave(const ScalarFn& f, const ScalarFn& slope,
                           const PrivacyInterval& interval,
                           double tol = kDefaultTol);

}  // namespace privcontract

#endif  // PRIVCONTRACT_SCALAR_OPT_HPP_
