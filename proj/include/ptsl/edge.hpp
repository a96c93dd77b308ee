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

#include <optional>
#include <string_view>
#include <vector>

#include "ptsl/bloch.hpp"
#include "ptsl/common.hpp"
#include "ptsl/lattice.hpp"

namespace ptsl {

enum class StateClass { Edge, Extended, NotInSpectrum };

std::string_view to_string(StateClass c);

/// Root E_l of S21(E) = 0 for the lattice truncated at site n = 1.
struct EdgeStateRecord {
  Complex energy;
  double s11_abs = 0.0;
  StateClass classification = StateClass::NotInSpectrum;
  /// L = -q / ln|S11|^2, present iff classification == Edge.
  std::optional<double> localization_length;
};

/// (q-1) x (q-1) tridiagonal matrix with diagonal V_1..V_{q-1} and
/// off-diagonals -kappa_1..-kappa_{q-2}; empty for q = 1.
ComplexMatrix build_truncation_matrix(const SuperlatticeSpec& spec);

struct EdgeOptions {
  /// Half-width of the |S11| = 1 band that counts as Extended.
  double classification_eps = 1e-6;
  /// Maximum distance between matched eigenvalue and root multisets.
  double cross_check_tol = 1e-6;
};

/// Carries both candidate multisets when the two routes disagree.
class CrossCheckError : public NumericalError {
 public:
  CrossCheckError(std::vector<Complex> eigenvalues, std::vector<Complex> roots, double distance);
  const std::vector<Complex>& eigenvalues() const { return eigenvalues_; }
  const std::vector<Complex>& roots() const { return roots_; }
  double distance() const { return distance_; }

 private:
  std::vector<Complex> eigenvalues_;
  std::vector<Complex> roots_;
  double distance_;
};

/// Largest distance of the greedy nearest-neighbour pairing of two multisets
/// of equal size (infinity when sizes differ).
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b);

/**
 * Classifies the q - 1 candidate energies of the semi-infinite lattice.
 *
 * Candidates are the eigenvalues of the truncation matrix; they are checked
 * against the roots of the symbolic S21 polynomial and a CrossCheckError is
 * thrown when the two multisets differ by more than cross_check_tol. Records
 * are sorted by real part. Returns an empty list for q = 1.
 */
std::vector<EdgeStateRecord> edge_spectrum(const SuperlatticeSpec& spec,
                                           const EdgeOptions& options = {});

/// -q / ln(s11_abs^2); requires 0 < s11_abs < 1.
double localization_length(double s11_abs, int period);
/// Rejects records that are not classified Edge.
double localization_length(const EdgeStateRecord& record, int period);

/**
 * psi_0 .. psi_{num_sites} of the recurrence
 *   E psi_n = -kappa_{n-1} psi_{n-1} - kappa_n psi_{n+1} + V_n psi_n
 * started from psi_0 = 0, psi_1 = 1.
 */
std::vector<Complex> boundary_witness(const SuperlatticeSpec& spec, Complex energy, int num_sites);

struct SemiInfiniteDiagnosis {
  bool real = true;
  PhaseDiagnosis bulk;
  std::vector<Complex> offending;
  std::vector<EdgeStateRecord> records;
};

/// Real iff the bulk passes theorem1_is_unbroken and every Edge energy has
/// |Im E| <= tol.
SemiInfiniteDiagnosis theorem2_is_real(const SuperlatticeSpec& spec, double tol = 1e-9,
                                       const EdgeOptions& options = {});

}  // namespace ptsl
