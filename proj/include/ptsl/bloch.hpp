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
#include <vector>

#include "ptsl/common.hpp"
#include "ptsl/lattice.hpp"

namespace ptsl {

/// Bloch matrix R(k) of the infinite lattice: tridiagonal V / -kappa with
/// corners -kappa_q e^{-ikq} at (1,q) and -kappa_q e^{+ikq} at (q,1). The
/// corners add onto existing entries for q <= 2.
ComplexMatrix build_bloch_matrix(const SuperlatticeSpec& spec, double k);

/// Energies sampled over k in [-pi/q, pi/q). Row j of `energies` holds the
/// q eigenvalues at k_values[j], ordered by real part then imaginary part.
struct BandStructure {
  std::vector<double> k_values;
  ComplexMatrix energies;

  int band_count() const { return static_cast<int>(energies.cols()); }
  double max_abs_imag() const;
};

/// Uniform grid k_j = -pi/q + j (2 pi / q) / num_k, j < num_k. num_k >= 2.
BandStructure band_structure(const SuperlatticeSpec& spec, int num_k);

/// Spectral gap between sorted bands `lower_band` and `lower_band + 1`.
struct Gap {
  int lower_band = 0;
  double lower = 0.0;
  double upper = 0.0;
  double width() const { return upper - lower; }
};

/// Gaps in the real parts of the sampled bands wider than min_width.
std::vector<Gap> find_gaps(const BandStructure& bands, double min_width = 1e-8);

struct PhaseDiagnosis {
  bool unbroken = true;
  double max_abs_imag = 0.0;
  double witness_k = 0.0;
  /// Guard scan results; only meaningful when guard_points > 0.
  bool guard_violation = false;
  double guard_max_abs_imag = 0.0;
  double guard_witness_k = 0.0;
};

/**
 * Reality test on R(0) and R(-pi/q). With guard_points > 0 the full k grid is
 * scanned as well and guard_violation is set when an interior k carries
 * |Im E| > tol although both endpoints pass. `unbroken` reflects the
 * endpoint test only.
 */
PhaseDiagnosis theorem1_is_unbroken(const SuperlatticeSpec& spec, double tol = 1e-9,
                                    int guard_points = 0);

struct ThresholdOptions {
  int coarse_samples = 64;
  double reality_tol = 1e-9;
};

struct ThresholdResult {
  double lambda_c = 0.0;
  /// lambda_c reported as lambda_max: no breaking found up to lambda_max.
  bool never_broken = false;
  /// The coarse scan saw the spectrum become real again after breaking.
  bool multiple_transitions = false;
  /// Final bisection bracket.
  double lower = 0.0;
  double upper = 0.0;
};

/// First unbroken -> broken transition of a lambda family in [0, lambda_max],
/// refined by bisection to bracket width <= tol_lambda; lambda_c is the
/// bracket midpoint. Throws ValidationError when the family is broken at 0.
ThresholdResult breaking_threshold(const ParametricLattice& family, double lambda_max,
                                   double tol_lambda, const ThresholdOptions& options = {});

/// max over the k grid of the largest Im E; values <= tol are reported as 0.
double max_growth_rate(const SuperlatticeSpec& spec, int num_k, double tol = 1e-9);

/// One row of a Harper sweep over q (fixed p) or over p (fixed q).
struct SweepRow {
  int param = 0;
  double lambda_c = 0.0;
  bool never_broken = false;
  double sigma = 0.0;
};

struct SweepOptions {
  double delta = 0.3;
  /// Non-Hermitian strength at which sigma is evaluated.
  double sigma_lambda = 0.3;
  double lambda_max = 1.0;
  double tol_lambda = 1e-6;
  int num_k = 256;
  /// Worker threads; 0 or 1 runs inline.
  std::size_t threads = 1;
};

/// Rows for q in [q_first, q_last] at fixed p; q not coprime with p skipped.
std::vector<SweepRow> sweep_period(int p, int q_first, int q_last, const SweepOptions& options);
/// Rows for p in [p_first, p_last] at fixed q; p not coprime with q skipped.
std::vector<SweepRow> sweep_numerator(int q, int p_first, int p_last, const SweepOptions& options);

}  // namespace ptsl
