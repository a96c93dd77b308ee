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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "ptsl/numerics.hpp"

namespace ptsl {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
// Fifth- minus fourth-order weights.
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

std::string at_time(const char* what, double t) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at t = " << t;
  return os.str();
}

void eval(const OdeRhs& rhs, double t, const ComplexVector& y, ComplexVector& k) {
  rhs(t, y, k);
  if (!k.allFinite()) throw NumericalError(at_time("non-finite derivative", t));
}

}  // namespace

Trajectory integrate_ode(const OdeRhs& rhs, const ComplexVector& y0,
                         std::span<const double> sample_times, const OdeOptions& options) {
  if (!(options.rel_tol >= 1e-13 && options.rel_tol <= 1e-3)) {
    throw ValidationError("rel_tol must lie in [1e-13, 1e-3]");
  }
  if (!(options.abs_tol >= 0.0)) throw ValidationError("abs_tol must be >= 0");
  if (!y0.allFinite()) throw ValidationError("initial state is not finite");
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    if (!std::isfinite(sample_times[i]) || sample_times[i] < 0.0 ||
        (i > 0 && sample_times[i] < sample_times[i - 1])) {
      throw ValidationError("sample times must be finite, non-negative and non-decreasing");
    }
  }

  Trajectory out;
  out.times.assign(sample_times.begin(), sample_times.end());
  out.states.reserve(sample_times.size());

  const Eigen::Index dim = y0.size();
  ComplexVector y = y0;
  ComplexVector k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  ComplexVector stage(dim), y_new(dim), err(dim);
  double t = 0.0;

  std::size_t next = 0;
  while (next < sample_times.size() && sample_times[next] <= t) {
    out.states.push_back(y);
    ++next;
  }
  if (next == sample_times.size()) return out;

  eval(rhs, t, y, k1);
  double h = options.initial_step;
  if (!(h > 0.0)) {
    const double d0 = y.norm();
    const double d1 = k1.norm();
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  }
  h = std::min(h, options.max_step);

  std::size_t steps = 0;
  while (next < sample_times.size()) {
    const double target = sample_times[next];
    bool hits = false;
    double step = h;
    if (t + step >= target) {
      step = target - t;
      hits = true;
    }
    if (step < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      throw NumericalError(at_time("step size underflow", t));
    }
    if (++steps > options.max_steps) throw NumericalError(at_time("step budget exhausted", t));

    stage = y + step * kA21 * k1;
    eval(rhs, t + kC[1] * step, stage, k2);
    stage = y + step * (kA31 * k1 + kA32 * k2);
    eval(rhs, t + kC[2] * step, stage, k3);
    stage = y + step * (kA41 * k1 + kA42 * k2 + kA43 * k3);
    eval(rhs, t + kC[3] * step, stage, k4);
    stage = y + step * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4);
    eval(rhs, t + kC[4] * step, stage, k5);
    stage = y + step * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5);
    eval(rhs, t + kC[5] * step, stage, k6);
    y_new = y + step * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    const double t_new = hits ? target : t + step;
    eval(rhs, t_new, y_new, k7);
    err = step * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);

    const double tol = options.rel_tol * std::max(y.norm(), y_new.norm()) + options.abs_tol;
    const double err_norm = err.norm();
    const double ratio = tol > 0.0 ? err_norm / tol : (err_norm > 0.0 ? 2.0 : 0.0);

    if (ratio <= 1.0) {
      ++out.accepted_steps;
      t = t_new;
      y.swap(y_new);
      k1.swap(k7);
      while (next < sample_times.size() && sample_times[next] <= t) {
        out.states.push_back(y);
        ++next;
      }
      // A step clipped onto a sample time does not shrink the next one.
      const double grow = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
      h = std::min(options.max_step, hits ? std::max(h, step * grow) : step * grow);
    } else {
      ++out.rejected_steps;
      h = step * std::max(0.2, 0.9 * std::pow(ratio, -0.2));
    }
  }
  return out;
}

}  // namespace ptsl
