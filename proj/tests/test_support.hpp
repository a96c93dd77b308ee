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

#include <algorithm>
#include <random>
#include <vector>

#include "ptsl/common.hpp"
#include "ptsl/lattice.hpp"
#include "ptsl/transfer.hpp"

namespace ptsl::testing {

inline long mod(long n, long q) { return ((n % q) + q) % q; }

/// Random lattice obeying V_{-n} = conj(V_n) and kappa_{-n} = kappa_{n-1}
/// (parity center 0). Slot i of the vectors holds site i+1; slot q-1 is site 0.
inline SuperlatticeSpec random_pt_spec(std::mt19937_64& rng, int q, double v_scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> hop(0.5, 1.5);
  std::vector<Complex> v(static_cast<std::size_t>(q));
  std::vector<bool> set(static_cast<std::size_t>(q), false);
  for (long n = 1; n <= q; ++n) {
    const auto i = static_cast<std::size_t>(mod(n - 1, q));
    if (set[i]) continue;
    const auto j = static_cast<std::size_t>(mod(-n - 1, q));
    const Complex z(v_scale * u(rng), v_scale * u(rng));
    if (i == j) {
      v[i] = z.real();
    } else {
      v[i] = z;
      v[j] = std::conj(z);
    }
    set[i] = set[j] = true;
  }
  // kappa_m lives at slot mod(m - 1, q); pair kappa_m with kappa_{-m-1}.
  std::vector<double> k(static_cast<std::size_t>(q));
  std::vector<bool> kset(static_cast<std::size_t>(q), false);
  for (long m = 0; m < q; ++m) {
    const auto i = static_cast<std::size_t>(mod(m - 1, q));
    if (kset[i]) continue;
    const auto j = static_cast<std::size_t>(mod(-m - 2, q));
    k[i] = k[j] = hop(rng);
    kset[i] = kset[j] = true;
  }
  return {std::move(v), std::move(k)};
}

inline SuperlatticeSpec random_spec(std::mt19937_64& rng, int q) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> hop(0.5, 1.5);
  std::vector<Complex> v(static_cast<std::size_t>(q));
  std::vector<double> k(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) {
    v[static_cast<std::size_t>(i)] = {u(rng), u(rng)};
    k[static_cast<std::size_t>(i)] = (u(rng) < 0 ? -1.0 : 1.0) * hop(rng);
  }
  return {std::move(v), std::move(k)};
}

/// Naive M-fold product, the oracle for closed-form powers.
inline Matrix2c direct_power(const Matrix2c& s, long m) {
  Matrix2c out = Matrix2c::Identity();
  for (long i = 0; i < m; ++i) out = out * s;
  return out;
}

/// Sort by real part then imaginary part.
inline std::vector<Complex> sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return v;
}

inline std::vector<Complex> to_vector(const ComplexVector& v) { return {v.begin(), v.end()}; }

}  // namespace ptsl::testing
