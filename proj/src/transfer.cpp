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

#include "ptsl/transfer.hpp"

#include <cmath>

namespace ptsl {

Matrix2c build_site_transfer(const SuperlatticeSpec& spec, long n, Complex energy) {
  const double kappa = spec.hopping(n);
  Matrix2c m;
  m << (spec.onsite(n) - energy) / kappa, -spec.hopping(n - 1) / kappa, 1.0, 0.0;
  return m;
}

Complex TransferMatrix::theta() const { return std::acos(0.5 * trace()); }

bool is_unimodular(const Matrix2c& s, double tol) {
  return std::abs(s.determinant() - 1.0) <= tol * std::max(1.0, s.squaredNorm());
}

TransferMatrix build_period_transfer(const SuperlatticeSpec& spec, Complex energy) {
  Matrix2c s = Matrix2c::Identity();
  for (int n = 1; n <= spec.period(); ++n) s = build_site_transfer(spec, n, energy) * s;
  if (!is_unimodular(s, 1e-8)) {
    throw NumericalError("period transfer matrix lost unimodularity");
  }
  return {s, energy};
}

Matrix2c transfer_power_with_angle(const Matrix2c& s, long power, Complex theta) {
  const double m = static_cast<double>(power);
  const Complex sin_m = std::sin(m * theta);
  const Complex sin_m1 = std::sin((m - 1.0) * theta);
  return (sin_m * s - sin_m1 * Matrix2c::Identity()) / std::sin(theta);
}

Matrix2c transfer_power(const Matrix2c& s, long power) {
  if (power < 0) throw ValidationError("transfer matrix power must be >= 0");
  if (!s.allFinite() || !is_unimodular(s)) {
    throw ValidationError("transfer matrix power requires det S = 1");
  }
  if (power == 0) return Matrix2c::Identity();
  if (power == 1) return s;

  const Complex theta = std::acos(0.5 * s.trace());
  if (std::abs(std::sin(theta)) >= kDegenerateSinTheta) {
    return transfer_power_with_angle(s, power, theta);
  }
  Matrix2c result = Matrix2c::Identity();
  Matrix2c base = s;
  for (long e = power; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    base = base * base;
  }
  return result;
}

bool in_continuous_spectrum(const SuperlatticeSpec& spec, Complex energy, double tol) {
  const Complex tr = build_period_transfer(spec, energy).trace();
  return std::abs(tr.imag()) <= tol && std::abs(tr.real()) <= 2.0 + tol;
}

Matrix2c SymbolicTransfer::evaluate(Complex energy) const {
  Matrix2c m;
  m << s11(energy), s12(energy), s21(energy), s22(energy);
  return m;
}

SymbolicTransfer symbolic_transfer(const SuperlatticeSpec& spec) {
  SymbolicTransfer s{ComplexPolynomial{1.0}, ComplexPolynomial{}, ComplexPolynomial{},
                     ComplexPolynomial{1.0}};
  for (int n = 1; n <= spec.period(); ++n) {
    const double kappa = spec.hopping(n);
    const ComplexPolynomial a{spec.onsite(n) / kappa, Complex(-1.0 / kappa)};
    const Complex b = -spec.hopping(n - 1) / kappa;
    // M_n * S with M_n = [[a, b], [1, 0]].
    SymbolicTransfer next{a * s.s11 + b * s.s21, a * s.s12 + b * s.s22, s.s11, s.s12};
    s = std::move(next);
  }
  return s;
}

}  // namespace ptsl
