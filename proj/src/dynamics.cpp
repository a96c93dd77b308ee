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

#include "ptsl/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "ptsl/numerics.hpp"

namespace ptsl {

int default_site_count(const SuperlatticeSpec& spec, double t_max) {
  double kmax = 0.0;
  for (double k : spec.hopping_values()) kmax = std::max(kmax, std::abs(k));
  return static_cast<int>(std::ceil(2.0 * kmax * t_max)) + 4 * spec.period();
}

PropagationResult propagate_chain(const ComplexVector& onsite, const Eigen::VectorXd& couplings,
                                  const ComplexVector& psi0, double t_max, double rel_tol,
                                  int num_samples, int boundary_width) {
  const Eigen::Index n = onsite.size();
  if (n < 1) throw ValidationError("chain needs at least one site");
  if (couplings.size() != n - 1) throw ValidationError("chain needs N - 1 couplings");
  if (psi0.size() != n) throw ValidationError("initial state size must equal the site count");
  if (!(psi0.norm() > 0.0)) throw ValidationError("initial state must have nonzero norm");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("t_max must be positive");
  if (num_samples < 2) throw ValidationError("need at least two samples");

  const Complex minus_i(0.0, -1.0);
  const OdeRhs rhs = [&](double, const ComplexVector& y, ComplexVector& dy) {
    dy = onsite.cwiseProduct(y);
    if (n > 1) {
      dy.head(n - 1) += couplings.cwiseProduct(y.tail(n - 1));
      dy.tail(n - 1) += couplings.cwiseProduct(y.head(n - 1));
    }
    dy *= minus_i;
  };

  PropagationResult out;
  out.sample_times.resize(static_cast<std::size_t>(num_samples));
  for (int j = 0; j < num_samples; ++j) {
    out.sample_times[static_cast<std::size_t>(j)] = t_max * j / (num_samples - 1);
  }
  out.sample_times.back() = t_max;

  OdeOptions ode;
  ode.rel_tol = rel_tol;
  const Trajectory traj = integrate_ode(rhs, psi0, out.sample_times, ode);

  out.intensities.resize(num_samples, n);
  out.total_norm.resize(num_samples);
  const Eigen::Index width = std::clamp<Eigen::Index>(boundary_width, 0, n);
  for (int j = 0; j < num_samples; ++j) {
    out.intensities.row(j) = traj.states[static_cast<std::size_t>(j)].cwiseAbs2().transpose();
    out.total_norm(j) = out.intensities.row(j).sum();
    if (width > 0 && out.intensities.row(j).tail(width).sum() > 1e-6 * out.total_norm(j)) {
      out.boundary_reach_flag = true;
    }
  }
  return out;
}

PropagationResult propagate(const SuperlatticeSpec& spec, const ComplexVector& psi0,
                            const PropagationOptions& options) {
  const int q = spec.period();
  const int n = options.sites > 0 ? options.sites : default_site_count(spec, options.t_max);
  if (n < 2 * q) throw ValidationError("lattice size must be at least two periods");
  if (options.hopping_sign != 1.0 && options.hopping_sign != -1.0) {
    throw ValidationError("hopping sign must be +1 or -1");
  }
  ComplexVector onsite(n);
  Eigen::VectorXd couplings(n - 1);
  for (int s = 1; s <= n; ++s) onsite(s - 1) = spec.onsite(s);
  for (int s = 1; s < n; ++s) couplings(s - 1) = options.hopping_sign * spec.hopping(s);
  return propagate_chain(onsite, couplings, psi0, options.t_max, options.rel_tol,
                         options.num_samples, q);
}

PropagationResult propagate_from_site(const SuperlatticeSpec& spec, int excite,
                                      const PropagationOptions& options) {
  const int n = options.sites > 0 ? options.sites : default_site_count(spec, options.t_max);
  if (excite < 1 || excite > n) throw ValidationError("excited site must lie in 1..N");
  ComplexVector psi0 = ComplexVector::Zero(n);
  psi0(excite - 1) = 1.0;
  PropagationOptions resolved = options;
  resolved.sites = n;
  return propagate(spec, psi0, resolved);
}

double growth_rate_estimate(const PropagationResult& result, double t1, double t2,
                            GrowthObservable observable, int edge_sites) {
  if (!(t2 > t1)) throw ValidationError("fit window needs t2 > t1");
  const auto& t = result.sample_times;
  if (t.empty() || t1 < t.front() || t2 > t.back() + 1e-12 * std::max(1.0, t.back())) {
    throw ValidationError("fit window lies outside the sampled range");
  }
  if (observable == GrowthObservable::EdgeRegion &&
      (edge_sites < 1 || edge_sites > result.sites())) {
    throw ValidationError("edge region must cover 1..N sites");
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (t[j] < t1 || t[j] > t2) continue;
    const auto row = static_cast<Eigen::Index>(j);
    const double value = observable == GrowthObservable::TotalNorm
                             ? result.total_norm(row)
                             : result.intensities.row(row).head(edge_sites).sum();
    if (!(value > 0.0)) throw ValidationError("observable must stay positive over the fit window");
    const double y = std::log(value);
    sx += t[j];
    sy += y;
    sxx += t[j] * t[j];
    sxy += t[j] * y;
    ++count;
  }
  if (count < 2) throw ValidationError("fit window holds fewer than two samples");
  const double denom = count * sxx - sx * sx;
  return (count * sxy - sx * sy) / denom;
}

}  // namespace ptsl
