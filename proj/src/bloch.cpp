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

#include "ptsl/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "parallel.hpp"
#include "ptsl/numerics.hpp"

namespace ptsl {

namespace {

constexpr double kPi = std::numbers::pi;

ComplexVector sorted_eigenvalues(const ComplexMatrix& m) {
  ComplexVector e = eig_complex(m);
  std::sort(e.begin(), e.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return e;
}

double max_abs_imag_of(const ComplexVector& e) {
  return e.size() == 0 ? 0.0 : e.imag().cwiseAbs().maxCoeff();
}

}  // namespace

ComplexMatrix build_bloch_matrix(const SuperlatticeSpec& spec, double k) {
  const int q = spec.period();
  ComplexMatrix r = ComplexMatrix::Zero(q, q);
  for (int n = 1; n <= q; ++n) r(n - 1, n - 1) = spec.onsite(n);
  for (int n = 1; n < q; ++n) {
    r(n - 1, n) = -spec.hopping(n);
    r(n, n - 1) = -spec.hopping(n);
  }
  const Complex phase = std::polar(1.0, k * q);
  r(0, q - 1) += -spec.hopping(q) * std::conj(phase);
  r(q - 1, 0) += -spec.hopping(q) * phase;
  return r;
}

double BandStructure::max_abs_imag() const {
  return energies.size() == 0 ? 0.0 : energies.imag().cwiseAbs().maxCoeff();
}

BandStructure band_structure(const SuperlatticeSpec& spec, int num_k) {
  if (num_k < 2) throw ValidationError("band structure needs at least 2 k-points");
  const int q = spec.period();
  BandStructure out;
  out.k_values.resize(static_cast<std::size_t>(num_k));
  out.energies.resize(num_k, q);
  const double dk = 2.0 * kPi / q / num_k;
  for (int j = 0; j < num_k; ++j) {
    const double k = -kPi / q + j * dk;
    out.k_values[static_cast<std::size_t>(j)] = k;
    out.energies.row(j) = sorted_eigenvalues(build_bloch_matrix(spec, k)).transpose();
  }
  return out;
}

std::vector<Gap> find_gaps(const BandStructure& bands, double min_width) {
  std::vector<Gap> gaps;
  const int nb = bands.band_count();
  for (int b = 0; b + 1 < nb; ++b) {
    const double top = bands.energies.col(b).real().maxCoeff();
    const double bottom = bands.energies.col(b + 1).real().minCoeff();
    if (bottom - top > min_width) gaps.push_back({b, top, bottom});
  }
  return gaps;
}

PhaseDiagnosis theorem1_is_unbroken(const SuperlatticeSpec& spec, double tol, int guard_points) {
  if (!(tol > 0.0)) throw ValidationError("reality tolerance must be positive");
  const int q = spec.period();
  PhaseDiagnosis d;
  for (double k : {0.0, -kPi / q}) {
    const double m = max_abs_imag_of(eig_complex(build_bloch_matrix(spec, k)));
    if (m > d.max_abs_imag) {
      d.max_abs_imag = m;
      d.witness_k = k;
    }
  }
  d.unbroken = d.max_abs_imag <= tol;

  if (guard_points > 0) {
    const BandStructure bands = band_structure(spec, std::max(guard_points, 2));
    for (std::size_t j = 0; j < bands.k_values.size(); ++j) {
      const double m = bands.energies.row(static_cast<Eigen::Index>(j)).imag().cwiseAbs().maxCoeff();
      if (m > d.guard_max_abs_imag) {
        d.guard_max_abs_imag = m;
        d.guard_witness_k = bands.k_values[j];
      }
    }
    d.guard_violation = d.unbroken && d.guard_max_abs_imag > tol;
  }
  return d;
}

ThresholdResult breaking_threshold(const ParametricLattice& family, double lambda_max,
                                   double tol_lambda, const ThresholdOptions& options) {
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    throw ValidationError("lambda_max must be positive");
  }
  if (!(tol_lambda > 0.0)) throw ValidationError("lambda tolerance must be positive");
  if (options.coarse_samples < 1) throw ValidationError("coarse scan needs at least one sample");

  auto unbroken = [&](double lambda) {
    return theorem1_is_unbroken(family.at(lambda), options.reality_tol).unbroken;
  };
  if (!unbroken(0.0)) throw ValidationError("family is already broken at lambda = 0");

  ThresholdResult out;
  const int n = options.coarse_samples;
  int first_broken = -1;
  for (int i = 1; i <= n; ++i) {
    const double lambda = lambda_max * i / n;
    const bool ok = unbroken(lambda);
    if (first_broken < 0 && !ok) {
      first_broken = i;
    } else if (first_broken >= 0 && ok) {
      out.multiple_transitions = true;
      break;
    }
  }
  if (first_broken < 0) {
    out.never_broken = true;
    out.lambda_c = out.lower = out.upper = lambda_max;
    return out;
  }

  double lo = lambda_max * (first_broken - 1) / n;
  double hi = lambda_max * first_broken / n;
  while (hi - lo > tol_lambda) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (unbroken(mid) ? lo : hi) = mid;
  }
  out.lower = lo;
  out.upper = hi;
  out.lambda_c = 0.5 * (lo + hi);
  return out;
}

double max_growth_rate(const SuperlatticeSpec& spec, int num_k, double tol) {
  const BandStructure bands = band_structure(spec, num_k);
  const double sigma = bands.energies.imag().maxCoeff();
  return sigma <= tol ? 0.0 : sigma;
}

namespace {

std::vector<SweepRow> run_sweep(std::vector<std::pair<int, int>> pq, bool by_q,
                                const SweepOptions& options) {
  std::vector<SweepRow> rows(pq.size());
  detail::parallel_for(pq.size(), options.threads, [&](std::size_t i) {
    const auto [p, q] = pq[i];
    const ThresholdResult t =
        breaking_threshold(harper_family(options.delta, p, q), options.lambda_max, options.tol_lambda);
    const double sigma = max_growth_rate(
        build_harper({options.delta, options.sigma_lambda, p, q, 0}), options.num_k);
    rows[i] = {by_q ? q : p, t.lambda_c, t.never_broken, sigma};
  });
  return rows;
}

}  // namespace

std::vector<SweepRow> sweep_period(int p, int q_first, int q_last, const SweepOptions& options) {
  std::vector<std::pair<int, int>> pq;
  for (int q = std::max(q_first, 1); q <= q_last; ++q) {
    if (std::gcd(p, q) == 1) pq.emplace_back(p, q);
  }
  return run_sweep(std::move(pq), true, options);
}

std::vector<SweepRow> sweep_numerator(int q, int p_first, int p_last, const SweepOptions& options) {
  std::vector<std::pair<int, int>> pq;
  for (int p = std::max(p_first, 1); p <= p_last; ++p) {
    if (std::gcd(p, q) == 1) pq.emplace_back(p, q);
  }
  return run_sweep(std::move(pq), false, options);
}

}  // namespace ptsl
