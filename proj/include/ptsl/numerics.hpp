/* Copyright 2026 The ptsl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "ptsl/common.hpp"

namespace ptsl {

/// Eigenvalues of a dense complex square matrix (Hessenberg reduction plus
/// shifted complex QR). Throws ValidationError for non-square or non-finite
/// input.
ComplexVector eig_complex(const ComplexMatrix& m);

/// Right-hand side f(t, y) of dy/dt = f; writes into dydt (pre-sized).
using OdeRhs = std::function<void(double t, const ComplexVector& y, ComplexVector& dydt)>;

struct OdeOptions {
  /// Must lie in [1e-13, 1e-3].
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  /// Zero selects an initial step from the local derivative scale.
  double initial_step = 0.0;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 50'000'000;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexVector> states;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

/**
 * Integrates dy/dt = f(t, y) from t = 0 with the Dormand-Prince 5(4)
 * embedded pair (local extrapolation, FSAL) and returns y at each sample
 * time. Steps are shortened to land exactly on sample times. A step is
 * accepted when the embedded error estimate satisfies
 *
 *   ||err||_2 <= rel_tol * max(||y_n||, ||y_{n+1}||) + abs_tol.
 *
 * sample_times must be non-negative and non-decreasing. Throws
 * NumericalError on step-size underflow or a non-finite derivative; the
 * message carries the time reached.
 */
Trajectory integrate_ode(const OdeRhs& rhs, const ComplexVector& y0,
                         std::span<const double> sample_times, const OdeOptions& options = {});

}  // namespace ptsl
