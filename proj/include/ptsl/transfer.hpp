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

#include "ptsl/common.hpp"
#include "ptsl/lattice.hpp"
#include "ptsl/polynomial.hpp"

namespace ptsl {

using Matrix2c = Eigen::Matrix2cd;

/// Single-site transfer matrix mapping (psi_n, psi_{n-1}) to (psi_{n+1}, psi_n):
///   [[(V_n - E)/kappa_n, -kappa_{n-1}/kappa_n], [1, 0]].
/// n is reduced periodically; kappa_0 is kappa_q.
Matrix2c build_site_transfer(const SuperlatticeSpec& spec, long n, Complex energy);

/// One-period transfer matrix S(E) = M_q ... M_1, unimodular.
struct TransferMatrix {
  Matrix2c entries;
  Complex energy;

  Complex s11() const { return entries(0, 0); }
  Complex s12() const { return entries(0, 1); }
  Complex s21() const { return entries(1, 0); }
  Complex s22() const { return entries(1, 1); }
  Complex trace() const { return entries.trace(); }
  Complex determinant() const { return entries.determinant(); }
  /// Principal complex arccos of tr S / 2; eigenvalues of S are e^{+-i theta}.
  Complex theta() const;
};

/// Throws NumericalError if the product loses unimodularity beyond rounding.
TransferMatrix build_period_transfer(const SuperlatticeSpec& spec, Complex energy);

/// |det S - 1| <= tol * max(1, ||S||_F^2).
bool is_unimodular(const Matrix2c& s, double tol = 1e-10);

/// Below this |sin theta| the power is formed by repeated squaring.
inline constexpr double kDegenerateSinTheta = 1e-8;

/**
 * S^M for unimodular S via the Chebyshev closed form
 *
 *   S^M = [ sin(M theta) S - sin((M-1) theta) I ] / sin(theta),
 *   cos(theta) = (S11 + S22) / 2,
 *
 * switching to exact repeated squaring when |sin theta| < 1e-8 (band edges,
 * theta in {0, pi}). Throws ValidationError for non-unimodular S or M < 0.
 */
Matrix2c transfer_power(const Matrix2c& s, long power);

/// Closed form evaluated with an explicit angle; both +theta and -theta are
/// valid branches and give the same result.
Matrix2c transfer_power_with_angle(const Matrix2c& s, long power, Complex theta);

/// |Im tr S| <= tol and |Re tr S| <= 2 + tol: E lies in the band spectrum
/// of the infinite lattice.
bool in_continuous_spectrum(const SuperlatticeSpec& spec, Complex energy, double tol = 1e-9);

/// Entries of S(E) as polynomials in E, of degrees q, q-1, q-1 and q-2.
struct SymbolicTransfer {
  ComplexPolynomial s11, s12, s21, s22;

  Matrix2c evaluate(Complex energy) const;
  ComplexPolynomial determinant() const { return s11 * s22 - s12 * s21; }
};

SymbolicTransfer symbolic_transfer(const SuperlatticeSpec& spec);

}  // namespace ptsl
