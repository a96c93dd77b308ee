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

#include "ptsl/edge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ptsl/numerics.hpp"
#include "ptsl/polynomial.hpp"
#include "ptsl/transfer.hpp"

namespace ptsl {

std::string_view to_string(StateClass c) {
  switch (c) {
    case StateClass::Edge: return "edge";
    case StateClass::Extended: return "extended";
    case StateClass::NotInSpectrum: return "not_in_spectrum";
  }
  return "unknown";
}

namespace {

std::string describe_mismatch(const std::vector<Complex>& eig, const std::vector<Complex>& roots,
                              double distance) {
  std::ostringstream os;
  os.precision(12);
  os << "edge candidates disagree between routes (distance " << distance << "); eigenvalues:";
  for (const Complex& e : eig) os << ' ' << e;
  os << "; S21 roots:";
  for (const Complex& r : roots) os << ' ' << r;
  return os.str();
}

}  // namespace

CrossCheckError::CrossCheckError(std::vector<Complex> eigenvalues, std::vector<Complex> roots,
                                 double distance)
    : NumericalError(describe_mismatch(eigenvalues, roots, distance)),
      eigenvalues_(std::move(eigenvalues)),
      roots_(std::move(roots)),
      distance_(distance) {}

ComplexMatrix build_truncation_matrix(const SuperlatticeSpec& spec) {
  const int d = spec.period() - 1;
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int n = 1; n <= d; ++n) m(n - 1, n - 1) = spec.onsite(n);
  for (int n = 1; n < d; ++n) {
    m(n - 1, n) = -spec.hopping(n);
    m(n, n - 1) = -spec.hopping(n);
  }
  return m;
}

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  // Pair the globally closest couple first, then repeat on the remainder.
  while (!a.empty()) {
    std::size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        const double d = std::abs(a[i] - b[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    worst = std::max(worst, best);
    a.erase(a.begin() + static_cast<long>(bi));
    b.erase(b.begin() + static_cast<long>(bj));
  }
  return worst;
}

std::vector<EdgeStateRecord> edge_spectrum(const SuperlatticeSpec& spec, const EdgeOptions& options) {
  const int q = spec.period();
  if (q < 2) return {};

  const ComplexVector eig = eig_complex(build_truncation_matrix(spec));
  std::vector<Complex> candidates(eig.begin(), eig.end());
  const std::vector<Complex> roots = poly_roots(symbolic_transfer(spec).s21);
  const double distance = multiset_distance(candidates, roots);
  if (!(distance <= options.cross_check_tol)) {
    throw CrossCheckError(candidates, roots, distance);
  }

  std::vector<EdgeStateRecord> records;
  records.reserve(candidates.size());
  for (const Complex& e : candidates) {
    EdgeStateRecord r;
    r.energy = e;
    r.s11_abs = std::abs(build_period_transfer(spec, e).s11());
    if (r.s11_abs < 1.0 - options.classification_eps) {
      r.classification = StateClass::Edge;
      r.localization_length = localization_length(r.s11_abs, q);
    } else if (r.s11_abs <= 1.0 + options.classification_eps) {
      r.classification = StateClass::Extended;
    } else {
      r.classification = StateClass::NotInSpectrum;
    }
    records.push_back(r);
  }
  std::sort(records.begin(), records.end(), [](const EdgeStateRecord& a, const EdgeStateRecord& b) {
    return a.energy.real() < b.energy.real() ||
           (a.energy.real() == b.energy.real() && a.energy.imag() < b.energy.imag());
  });
  return records;
}

double localization_length(double s11_abs, int period) {
  if (period < 1) throw ValidationError("period must be >= 1");
  if (!(s11_abs > 0.0 && s11_abs < 1.0)) {
    throw ValidationError("localization length needs 0 < |S11| < 1");
  }
  return -static_cast<double>(period) / std::log(s11_abs * s11_abs);
}

double localization_length(const EdgeStateRecord& record, int period) {
  if (record.classification != StateClass::Edge) {
    throw ValidationError("localization length is defined for edge states only");
  }
  return localization_length(record.s11_abs, period);
}

std::vector<Complex> boundary_witness(const SuperlatticeSpec& spec, Complex energy, int num_sites) {
  if (num_sites < 1) throw ValidationError("witness needs at least one site");
  std::vector<Complex> psi(static_cast<std::size_t>(num_sites) + 1);
  psi[0] = 0.0;
  psi[1] = 1.0;
  for (int n = 1; n < num_sites; ++n) {
    psi[n + 1] = ((spec.onsite(n) - energy) * psi[n] - spec.hopping(n - 1) * psi[n - 1]) /
                 spec.hopping(n);
  }
  return psi;
}

SemiInfiniteDiagnosis theorem2_is_real(const SuperlatticeSpec& spec, double tol,
                                       const EdgeOptions& options) {
  SemiInfiniteDiagnosis d;
  d.bulk = theorem1_is_unbroken(spec, tol);
  d.records = edge_spectrum(spec, options);
  for (const EdgeStateRecord& r : d.records) {
    if (r.classification == StateClass::Edge && std::abs(r.energy.imag()) > tol) {
      d.offending.push_back(r.energy);
    }
  }
  d.real = d.bulk.unbroken && d.offending.empty();
  return d;
}

}  // namespace ptsl
