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

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "ptsl/polynomial.hpp"

namespace ptsl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Fujiwara bound on root moduli of a monic polynomial.
double fujiwara_bound(const std::vector<Complex>& monic) {
  const std::size_t n = monic.size() - 1;
  double bound = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double a = std::abs(monic[n - k]);
    if (k == n) a /= 2.0;
    bound = std::max(bound, std::pow(a, 1.0 / static_cast<double>(k)));
  }
  return 2.0 * bound;
}

// p(z) / p'(z) by simultaneous Horner.
Complex newton_ratio(const std::vector<Complex>& c, Complex z) {
  Complex p = c.back();
  Complex dp = 0.0;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  if (p == 0.0) return 0.0;
  return p / dp;
}

std::vector<Complex> aberth(const std::vector<Complex>& monic, int max_iterations) {
  const std::size_t n = monic.size() - 1;
  const double radius = std::max(fujiwara_bound(monic) / 2.0, 1e-3);
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, angle);
  }
  if (n == 1) return {-monic[0]};

  std::vector<bool> done(n, false);
  for (int it = 0; it < max_iterations; ++it) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const Complex ratio = newton_ratio(monic, z[k]);
      Complex sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k && z[k] != z[j]) sum += 1.0 / (z[k] - z[j]);
      }
      const Complex w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[k] -= w;
      if (std::abs(w) <= 4.0 * kEps * std::max(1.0, std::abs(z[k]))) {
        done[k] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done) break;
  }
  return z;
}

// Transitive clustering; every member of a cluster is replaced by the centroid.
void merge_clusters(std::vector<Complex>& roots, double radius) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(roots[i] - roots[j]) < radius) parent[find(i)] = find(j);
    }
  }
  std::vector<Complex> sum(n, 0.0);
  std::vector<int> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[find(i)] += roots[i];
    ++count[find(i)];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (count[r] > 1) roots[i] = sum[r] / static_cast<double>(count[r]);
  }
}

}  // namespace

std::vector<Complex> poly_roots(const ComplexPolynomial& p, const RootOptions& options) {
  for (const Complex& c : p.coefficients()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ValidationError("polynomial has non-finite coefficients");
    }
  }
  const int degree = p.degree();
  if (degree < 1) throw ValidationError("constant polynomial has no roots");

  std::vector<Complex> roots;
  roots.reserve(static_cast<std::size_t>(degree));

  // Exact zero roots are split off before iterating.
  const auto& coeffs = p.coefficients();
  std::size_t shift = 0;
  while (coeffs[shift] == 0.0) ++shift;
  roots.assign(shift, 0.0);

  std::vector<Complex> monic(coeffs.begin() + static_cast<long>(shift), coeffs.end());
  const Complex lead = monic.back();
  for (Complex& c : monic) c /= lead;

  if (monic.size() > 1) {
    std::vector<Complex> z = aberth(monic, options.max_iterations);
    for (Complex& r : z) {
      for (int polish = 0; polish < 3; ++polish) {
        const Complex step = newton_ratio(monic, r);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        const Complex next = r - step;
        if (std::abs(p(next)) >= std::abs(p(r))) break;
        r = next;
      }
    }
    roots.insert(roots.end(), z.begin(), z.end());
  }

  merge_clusters(roots, options.cluster_radius);

  const double scale = p.max_abs_coefficient();
  for (const Complex& r : roots) {
    const double bound = options.residual_tol * scale * std::pow(std::max(1.0, std::abs(r)), degree);
    if (!(std::abs(p(r)) <= bound)) {
      throw NumericalError("root finder did not converge: residual " +
                           std::to_string(std::abs(p(r))) + " exceeds bound " +
                           std::to_string(bound));
    }
  }
  return roots;
}

}  // namespace ptsl
