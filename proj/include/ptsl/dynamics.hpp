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

#include <vector>

#include "ptsl/common.hpp"
#include "ptsl/lattice.hpp"

namespace ptsl {

struct PropagationOptions {
  /// Lattice size N; 0 selects default_site_count().
  int sites = 0;
  double t_max = 30.0;
  double rel_tol = 1e-9;
  /// Uniform sample times t_j = j t_max / (num_samples - 1).
  int num_samples = 200;
  /// -1 keeps the -kappa hopping of the lattice Hamiltonian; +1 flips it,
  /// which is the staggered gauge psi_n -> (-1)^n psi_n.
  double hopping_sign = -1.0;
};

struct PropagationResult {
  std::vector<double> sample_times;
  /// intensities(j, n-1) = |psi_n(t_j)|^2.
  Eigen::MatrixXd intensities;
  Eigen::VectorXd total_norm;
  /// The last `boundary_width` sites ever held more than 1e-6 of the total.
  bool boundary_reach_flag = false;

  int sites() const { return static_cast<int>(intensities.cols()); }
};

/// ceil(2 max|kappa| t_max) + 4q: the ballistic front stays clear of site N.
int default_site_count(const SuperlatticeSpec& spec, double t_max);

/// Open chain with explicit couplings: i dpsi_n/dt = V_n psi_n + c_{n-1} psi_{n-1} + c_n psi_{n+1},
/// where c_n couples sites n and n+1 (couplings.size() == onsite.size() - 1).
PropagationResult propagate_chain(const ComplexVector& onsite, const Eigen::VectorXd& couplings,
                                  const ComplexVector& psi0, double t_max, double rel_tol,
                                  int num_samples, int boundary_width);

/// i dpsi/dt = H psi on sites 1..N of the semi-infinite lattice with
/// psi_0 = psi_{N+1} = 0. Requires N >= 2q and psi0 of size N with nonzero norm.
PropagationResult propagate(const SuperlatticeSpec& spec, const ComplexVector& psi0,
                            const PropagationOptions& options);

/// Single-site excitation psi_n(0) = delta_{n, excite}.
PropagationResult propagate_from_site(const SuperlatticeSpec& spec, int excite,
                                      const PropagationOptions& options);

enum class GrowthObservable {
  TotalNorm,
  /// Intensity summed over sites 1..edge_sites.
  EdgeRegion,
};

/// Least-squares slope of ln(observable) over samples with t in [t1, t2].
/// Throws ValidationError when the window has fewer than two samples, lies
/// outside the sampled range, or the observable is not positive.
double growth_rate_estimate(const PropagationResult& result, double t1, double t2,
                            GrowthObservable observable = GrowthObservable::TotalNorm,
                            int edge_sites = 1);

}  // namespace ptsl
