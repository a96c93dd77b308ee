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

#include "ptsl/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace ptsl {

namespace {

long floor_mod(long n, long q) {
  const long r = n % q;
  return r < 0 ? r + q : r;
}

}  // namespace

SuperlatticeSpec::SuperlatticeSpec(std::vector<Complex> onsite,
                                   std::vector<double> hopping)
    : onsite_(std::move(onsite)), hopping_(std::move(hopping)) {
  if (onsite_.empty()) throw ValidationError("lattice period must be >= 1");
  if (onsite_.size() != hopping_.size()) {
    throw ValidationError("onsite and hopping lists must both have length q (got " +
                          std::to_string(onsite_.size()) + " and " +
                          std::to_string(hopping_.size()) + ")");
  }
  for (std::size_t i = 0; i < onsite_.size(); ++i) {
    if (!std::isfinite(onsite_[i].real()) || !std::isfinite(onsite_[i].imag())) {
      throw ValidationError("onsite energy " + std::to_string(i + 1) + " is not finite");
    }
    if (!std::isfinite(hopping_[i])) {
      throw ValidationError("hopping " + std::to_string(i + 1) + " is not finite");
    }
    if (hopping_[i] == 0.0) {
      throw ValidationError("hopping " + std::to_string(i + 1) + " vanishes");
    }
  }
}

std::size_t SuperlatticeSpec::wrap(long n) const {
  // Site n lives at index n-1.
  return static_cast<std::size_t>(floor_mod(n - 1, period()));
}

Complex SuperlatticeSpec::onsite(long n) const { return onsite_[wrap(n)]; }

double SuperlatticeSpec::hopping(long n) const { return hopping_[wrap(n)]; }

bool SuperlatticeSpec::is_hermitian(double tol) const {
  return std::all_of(onsite_.begin(), onsite_.end(),
                     [tol](Complex v) { return std::abs(v.imag()) <= tol; });
}

ParametricLattice::ParametricLattice(std::vector<double> onsite_real,
                                     std::vector<double> onsite_imag,
                                     std::vector<double> hopping)
    : onsite_real_(std::move(onsite_real)),
      onsite_imag_(std::move(onsite_imag)),
      hopping_(std::move(hopping)) {
  if (onsite_real_.size() != onsite_imag_.size()) {
    throw ValidationError("onsite_real and onsite_imag lengths differ");
  }
  for (std::size_t i = 0; i < onsite_imag_.size(); ++i) {
    if (!std::isfinite(onsite_real_[i]) || !std::isfinite(onsite_imag_[i])) {
      throw ValidationError("family onsite entry is not finite");
    }
  }
  // Validates lengths and hoppings.
  (void)at(0.0);
}

SuperlatticeSpec ParametricLattice::at(double lambda) const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("non-Hermitian strength lambda must be finite and >= 0");
  }
  std::vector<Complex> onsite(onsite_real_.size());
  for (std::size_t i = 0; i < onsite.size(); ++i) {
    onsite[i] = {onsite_real_[i], lambda * onsite_imag_[i]};
  }
  return {std::move(onsite), hopping_};
}

namespace {

void validate_harper(int p, int q) {
  if (q < 1) throw ValidationError("Harper period q must be >= 1");
  if (p < 1) throw ValidationError("Harper numerator p must be >= 1");
  if (std::gcd(p, q) != 1) {
    throw ValidationError("Harper p and q must be coprime (gcd(" + std::to_string(p) +
                          ", " + std::to_string(q) + ") != 1)");
  }
}

// Phase 2 pi p (n - n0) / q with the integer part reduced exactly first.
double harper_phase(int p, int q, long n, long n0) {
  const long r = floor_mod(static_cast<long>(p) * floor_mod(n - n0, q), q);
  return 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
}

}  // namespace

SuperlatticeSpec build_harper(const HarperParams& params) {
  validate_harper(params.p, params.q);
  if (!std::isfinite(params.delta) || !std::isfinite(params.lambda)) {
    throw ValidationError("Harper amplitudes must be finite");
  }
  if (params.lambda < 0.0) throw ValidationError("Harper lambda must be >= 0");
  std::vector<Complex> onsite(static_cast<std::size_t>(params.q));
  for (int n = 1; n <= params.q; ++n) {
    const double phi = harper_phase(params.p, params.q, n, params.n0);
    onsite[n - 1] = {params.delta * std::cos(phi), params.lambda * std::sin(phi)};
  }
  return {std::move(onsite), std::vector<double>(static_cast<std::size_t>(params.q), 1.0)};
}

ParametricLattice harper_family(double delta, int p, int q, long n0) {
  validate_harper(p, q);
  std::vector<double> re(static_cast<std::size_t>(q));
  std::vector<double> im(static_cast<std::size_t>(q));
  for (int n = 1; n <= q; ++n) {
    const double phi = harper_phase(p, q, n, n0);
    re[n - 1] = delta * std::cos(phi);
    im[n - 1] = std::sin(phi);
  }
  return {std::move(re), std::move(im), std::vector<double>(static_cast<std::size_t>(q), 1.0)};
}

PtReport check_pt_symmetry(const SuperlatticeSpec& spec, double tol) {
  const long q = spec.period();
  // Center c = m/2; reflected site index is 2c - n = m - n.
  for (long m = 0; m < 2 * q; ++m) {
    bool ok = true;
    for (long n = 1; n <= q && ok; ++n) {
      ok = std::abs(spec.onsite(m - n) - std::conj(spec.onsite(n))) <= tol &&
           std::abs(spec.hopping(m - n - 1) - spec.hopping(n)) <= tol;
    }
    if (ok) return {true, static_cast<double>(m) / 2.0};
  }
  return {false, std::nullopt};
}

}  // namespace ptsl
