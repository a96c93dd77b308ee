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
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "ptsl/common.hpp"

namespace ptsl {

/**
 * Dense univariate polynomial, coefficients in ascending degree order.
 *
 * Exact trailing zeros are trimmed on construction, so the leading
 * coefficient is nonzero unless the polynomial is identically zero. The
 * zero polynomial keeps a single zero coefficient and reports degree -1.
 */
template <typename Scalar>
class Polynomial {
 public:
  using Real = decltype(std::abs(Scalar{}));

  Polynomial() : coeffs_{Scalar{0}} {}
  explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(Scalar c) { return Polynomial({c}); }

  /// Monic polynomial with the given roots.
  static Polynomial from_roots(const std::vector<Scalar>& roots) {
    Polynomial out({Scalar{1}});
    for (const Scalar& r : roots) out = out * Polynomial({-r, Scalar{1}});
    return out;
  }

  int degree() const { return is_zero() ? -1 : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Scalar{0}; }

  const std::vector<Scalar>& coefficients() const { return coeffs_; }
  Scalar operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Scalar{0}; }
  Scalar leading() const { return coeffs_.back(); }

  Real max_abs_coefficient() const {
    Real m{0};
    for (const Scalar& c : coeffs_) m = std::max(m, Real(std::abs(c)));
    return m;
  }

  /// Horner evaluation.
  template <typename T>
  auto operator()(const T& x) const {
    using R = decltype(Scalar{} * x);
    R acc{0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Scalar> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Real(i);
    return Polynomial(std::move(d));
  }

  /// Drops leading coefficients with |c| <= rel * max|c|.
  Polynomial trimmed(Real rel) const {
    const Real cut = rel * max_abs_coefficient();
    std::vector<Scalar> c = coeffs_;
    while (c.size() > 1 && std::abs(c.back()) <= cut) c.pop_back();
    if (c.size() == 1 && std::abs(c[0]) <= cut) c[0] = Scalar{0};
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> c(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar{0});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(Scalar s, const Polynomial& a) {
    std::vector<Scalar> c = a.coeffs_;
    for (Scalar& x : c) x *= s;
    return Polynomial(std::move(c));
  }

 private:
  void trim() {
    if (coeffs_.empty()) coeffs_.push_back(Scalar{0});
    while (coeffs_.size() > 1 && coeffs_.back() == Scalar{0}) coeffs_.pop_back();
  }

  std::vector<Scalar> coeffs_;
};

using ComplexPolynomial = Polynomial<Complex>;

struct RootOptions {
  int max_iterations = 500;
  /// Roots closer than this are merged to their centroid and reported
  /// with multiplicity.
  double cluster_radius = 1e-6;
  /// Residual bound factor: |p(r)| <= tol * max|c| * max(1, |r|)^deg.
  double residual_tol = 1e-9;
};

/**
 * All complex roots of p, repeated according to multiplicity.
 *
 * Aberth-Ehrlich simultaneous iteration from deterministic starting points
 * on a circle sized by the Fujiwara bound, followed by Newton polishing.
 * Throws ValidationError for constant or non-finite input and NumericalError
 * if the residual bound cannot be met.
 */
std::vector<Complex> poly_roots(const ComplexPolynomial& p, const RootOptions& options = {});

}  // namespace ptsl
