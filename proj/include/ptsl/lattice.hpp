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
#include <span>
#include <vector>

#include "ptsl/common.hpp"

namespace ptsl {

/**
 * One-dimensional tight-binding superlattice with period q.
 *
 * Sites are labelled n = 1, 2, ... and both sequences extend periodically,
 * V_{n+q} = V_n and kappa_{n+q} = kappa_n. kappa_n is the real hopping rate
 * between sites n and n+1; the Hamiltonian is
 *
 *   H_{n,m} = -kappa_{n-1} delta_{n,m+1} - kappa_n delta_{n,m-1} + V_n delta_{n,m}.
 */
class SuperlatticeSpec {
 public:
  /// Throws ValidationError on length mismatch, empty period, zero or
  /// non-finite hoppings, or non-finite energies.
  SuperlatticeSpec(std::vector<Complex> onsite, std::vector<double> hopping);

  int period() const { return static_cast<int>(onsite_.size()); }

  /// V_n for any integer n (periodic extension).
  Complex onsite(long n) const;
  /// kappa_n for any integer n; kappa_0 resolves to kappa_q.
  double hopping(long n) const;

  std::span<const Complex> onsite_values() const { return onsite_; }
  std::span<const double> hopping_values() const { return hopping_; }

  /// All |Im V_n| <= tol.
  bool is_hermitian(double tol = 0.0) const;

 private:
  std::size_t wrap(long n) const;

  std::vector<Complex> onsite_;
  std::vector<double> hopping_;
};

/// V_n = V^(R)_n + i lambda V^(I)_n with scalable non-Hermiticity lambda.
class ParametricLattice {
 public:
  ParametricLattice(std::vector<double> onsite_real,
                    std::vector<double> onsite_imag,
                    std::vector<double> hopping);

  int period() const { return static_cast<int>(onsite_real_.size()); }
  std::span<const double> onsite_real() const { return onsite_real_; }
  std::span<const double> onsite_imag() const { return onsite_imag_; }
  std::span<const double> hopping() const { return hopping_; }

  /// Rejects lambda < 0.
  SuperlatticeSpec at(double lambda) const;

 private:
  std::vector<double> onsite_real_;
  std::vector<double> onsite_imag_;
  std::vector<double> hopping_;
};

/// V_n = delta cos[2 pi (p/q)(n - n0)] + i lambda sin[2 pi (p/q)(n - n0)], kappa = 1.
struct HarperParams {
  double delta = 0.0;
  double lambda = 0.0;
  int p = 1;
  int q = 1;
  long n0 = 0;
};

SuperlatticeSpec build_harper(const HarperParams& params);

/// Harper lattice as a lambda family; onsite_imag holds the bare sine.
ParametricLattice harper_family(double delta, int p, int q, long n0 = 0);

struct PtReport {
  bool symmetric = false;
  /// Smallest parity center c in {0, 1/2, ..., q - 1/2}.
  std::optional<double> center;
};

/// Scans all 2q integer and half-integer parity centers c and accepts the
/// first one with V_{2c-n} = conj(V_n) and kappa_{2c-n-1} = kappa_n.
PtReport check_pt_symmetry(const SuperlatticeSpec& spec, double tol = 1e-12);

}  // namespace ptsl
