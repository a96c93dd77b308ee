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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion, with
// the measured numbers on indented lines underneath, and exits nonzero if any
// criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ptsl/bloch.hpp"
#include "ptsl/dynamics.hpp"
#include "ptsl/edge.hpp"
#include "ptsl/lattice.hpp"
#include "ptsl/numerics.hpp"
#include "ptsl/polynomial.hpp"
#include "ptsl/transfer.hpp"
#include "test_support.hpp"

using namespace ptsl;

namespace {

constexpr double kDelta = 0.3;

class Log {
 public:
  template <typename... Args>
  void note(const char* fmt, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    lines_.push_back(std::string("    ") + buf);
  }
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      lines_.push_back("    failed: " + what);
    }
  }
  bool passed() const { return pass_; }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  bool pass_ = true;
  std::vector<std::string> lines_;
};

SuperlatticeSpec harper(double lambda, int q = 6, long n0 = 0, int p = 1) {
  return build_harper({kDelta, lambda, p, q, n0});
}

// --- 1 ---------------------------------------------------------------------

void hermitian_bands(Log& log) {
  const auto bands = band_structure(harper(0.0), 512);
  const auto gaps = find_gaps(bands);
  log.note("bands = %d, max|Im E| = %.3e, gaps = %zu", bands.band_count(), bands.max_abs_imag(),
           gaps.size());
  log.require(bands.band_count() == 6, "six bands");
  log.require(bands.max_abs_imag() < 1e-10, "real bands");
  log.require(gaps.size() == 5, "exactly five gaps");
  if (gaps.size() != 5) return;
  std::vector<double> w;
  for (const Gap& g : gaps) {
    w.push_back(g.width());
    log.note("gap above band %d: width %.6f", g.lower_band, g.width());
  }
  std::sort(w.begin(), w.end());
  const double ratio = std::min(w[3], w[4]) / std::max({w[0], w[1], w[2]});
  log.note("smallest wide / largest narrow = %.2f", ratio);
  log.require(ratio > 3.0, "wide/narrow split");
}

// --- 2 ---------------------------------------------------------------------

void unbroken_phase(Log& log) {
  const auto d = theorem1_is_unbroken(harper(0.134), 1e-9, 1024);
  log.note("endpoint max|Im E| = %.3e, guard max|Im E| = %.3e", d.max_abs_imag, d.guard_max_abs_imag);
  log.require(d.unbroken, "endpoint test reports unbroken");
  log.require(d.guard_max_abs_imag < 1e-9 && !d.guard_violation, "guard scan is real");
}

// --- 3 ---------------------------------------------------------------------

void threshold_q6(Log& log) {
  const auto family = harper_family(kDelta, 1, 6, 0);
  const auto t = breaking_threshold(family, 1.0, 1e-6);
  const double width = t.upper - t.lower;
  const bool caption = std::abs(t.lambda_c - 0.2552) <= 2e-3;
  const bool text = std::abs(t.lambda_c - 0.2252) <= 2e-3;
  log.note("lambda_c = %.6f, bracket width %.1e", t.lambda_c, width);
  log.note("agrees with 0.2552: %s; agrees with 0.2252: %s", caption ? "yes" : "no", text ? "yes" : "no");
  log.note("printed value confirmed: %s", caption ? "0.2552 (0.2252 rejected)"
                                                  : (text ? "0.2252 (0.2552 rejected)" : "neither"));
  log.require(width <= 1e-4, "bracket width");
  log.require(caption || text, "matches a printed value");

  // Splitting grows like sqrt(lambda_c - lambda); resolve the touching point tightly.
  const auto fine = breaking_threshold(family, 1.0, 1e-12);
  const auto r = eig_complex(build_bloch_matrix(harper(fine.lower), 0.0));
  auto e = testing::sorted(testing::to_vector(r));
  const double gap3 = std::abs(e[2] - e[1]);
  const double gap5 = std::abs(e[4] - e[3]);
  log.note("at lambda = %.12f, k = 0: |E3 - E2| = %.2e, |E5 - E4| = %.2e", fine.lower, gap3, gap5);
  log.require(gap3 < 1e-3 && gap5 < 1e-3, "bands bounding gaps III and V touch at k = 0");
}

// --- 4, 5 ------------------------------------------------------------------

std::vector<ThresholdResult> thresholds_3_to_12() {
  std::vector<ThresholdResult> out;
  for (int q = 3; q <= 12; ++q) out.push_back(breaking_threshold(harper_family(kDelta, 1, q, 0), 1.0, 1e-6));
  return out;
}

void vanishing_thresholds(Log& log, const std::vector<ThresholdResult>& lc) {
  for (int q : {4, 8, 12}) {
    const double v = lc[static_cast<std::size_t>(q - 3)].lambda_c;
    log.note("q = %2d: lambda_c = %.3e", q, v);
    log.require(v <= 1e-3, "lambda_c vanishes at q = " + std::to_string(q));
  }
}

void thresholds_below_delta(Log& log, const std::vector<ThresholdResult>& lc) {
  for (int q = 3; q <= 12; ++q) {
    const auto& t = lc[static_cast<std::size_t>(q - 3)];
    log.note("q = %2d: lambda_c = %.6f", q, t.lambda_c);
    log.require(!t.never_broken && t.lambda_c < kDelta, "lambda_c < delta at q = " + std::to_string(q));
  }
  // Qualitative: lambda_c(q) is not monotone; it has interior local maxima.
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < lc.size(); ++i) {
    if (lc[i].lambda_c > lc[i - 1].lambda_c && lc[i].lambda_c > lc[i + 1].lambda_c) ++maxima;
  }
  log.note("interior local maxima of lambda_c(q): %d", maxima);
  log.require(maxima >= 1, "lambda_c(q) has local maxima");
}

// --- 6 ---------------------------------------------------------------------

void growth_decay(Log& log) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int q = 3; q <= 10; ++q) {
    const double s = max_growth_rate(harper(kDelta, q), 256);
    log.note("q = %2d: sigma = %.6e", q, s);
    const double y = std::log(s);
    sx += q;
    sy += y;
    sxx += q * q;
    sxy += q * y;
    ++n;
  }
  const double c = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  log.note("fitted decay constant c = %.4f", c);
  log.require(c >= 0.61 && c <= 0.83, "c in [0.61, 0.83]");

  double lo = INFINITY, hi = 0.0;
  for (int p = 1; p <= 18; ++p) {
    const double s = max_growth_rate(harper(kDelta, 19, 0, p), 128);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  log.note("q = 19, p = 1..18: sigma max/min = %.5f", hi / lo);
  log.require(lo > 0.0 && hi / lo < 1.5, "sigma nearly independent of p");
}

// --- 7 ---------------------------------------------------------------------

struct Row {
  Complex energy;
  double s11;
};

std::vector<Row> printed_rows(long n0) {
  switch (n0) {
    case 0: return {{-1.8850, 1}, {-1.0147, 1}, {-0.0036, 1}, {1.0233, 1}, {1.5799, 1}};
    case 1: return {{{1.7058, 0.0712}, 0.4322}};
    case 2:
      return {{{-0.9693, -0.0126}, 0.9449}, {{-0.0034, -0.0001}, 0.9968},
              {{0.9872, 0.0166}, 0.9199}, {{1.8413, 0.0410}, 0.4989}};
    case 3: return {{-1.5799, 1}, {-1.0233, 1}, {0.0036, 1}, {1.0147, 1}, {1.8850, 1}};
    case 4: return {{{-1.7058, -0.0712}, 0.4322}};
    case 5:
      return {{{-1.8413, -0.0410}, 0.4989}, {{-0.9872, -0.0166}, 0.9199},
              {{0.0034, 0.0001}, 0.9968}, {{0.9693, 0.0126}, 0.9449}};
  }
  return {};
}

void edge_table(Log& log) {
  const int expected_edges[] = {0, 1, 4, 0, 1, 4};
  const int expected_extended[] = {5, 0, 0, 5, 0, 0};
  const bool expected_real[] = {true, false, false, true, false, false};
  for (long n0 = 0; n0 < 6; ++n0) {
    const auto spec = harper(0.134, 6, n0);
    const auto d = theorem2_is_real(spec);
    std::vector<EdgeStateRecord> listed;
    int edges = 0, extended = 0;
    for (const auto& r : d.records) {
      if (r.classification == StateClass::Edge) ++edges;
      if (r.classification == StateClass::Extended) ++extended;
      if (r.classification != StateClass::NotInSpectrum) listed.push_back(r);
    }
    const auto rows = printed_rows(n0);
    double worst = 0.0;
    bool classes = listed.size() == rows.size();
    for (std::size_t i = 0; classes && i < rows.size(); ++i) {
      worst = std::max({worst, std::abs(listed[i].energy.real() - rows[i].energy.real()),
                        std::abs(listed[i].energy.imag() - rows[i].energy.imag()),
                        std::abs(listed[i].s11_abs - rows[i].s11)});
      const StateClass want = rows[i].s11 == 1.0 ? StateClass::Extended : StateClass::Edge;
      classes = classes && listed[i].classification == want;
    }
    log.note("n0 = %ld: %d edge, %d extended, spectrum %s, worst deviation %.1e", n0, edges, extended,
             d.real ? "real" : "complex", worst);
    const std::string tag = " (n0 = " + std::to_string(n0) + ")";
    log.require(classes, "rows and classifications" + tag);
    log.require(worst <= 5e-4, "values within 5e-4" + tag);
    log.require(edges == expected_edges[n0] && extended == expected_extended[n0], "counts" + tag);
    log.require(d.real == expected_real[n0], "spectrum verdict" + tag);
  }
}

// --- 8 ---------------------------------------------------------------------

void route_equivalence(Log& log) {
  std::mt19937_64 rng(20261019);
  std::uniform_int_distribution<int> period(2, 10);
  double worst_roots = 0.0, worst_trace = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto spec = testing::random_pt_spec(rng, period(rng), 0.8);
    const auto eig = testing::to_vector(eig_complex(build_truncation_matrix(spec)));
    const auto roots = poly_roots(symbolic_transfer(spec).s21);
    worst_roots = std::max(worst_roots, multiset_distance(eig, roots));

    const int q = spec.period();
    for (int j = 0; j < 16; ++j) {
      const double k = -M_PI / q + j * (2.0 * M_PI / q) / 16.0;
      for (const Complex e : eig_complex(build_bloch_matrix(spec, k))) {
        const Complex tr = build_period_transfer(spec, e).trace();
        worst_trace = std::max(worst_trace, std::abs(tr - 2.0 * std::cos(k * q)));
      }
    }
  }
  log.note("max eig(Q) vs roots(S21) distance = %.2e", worst_roots);
  log.note("max |tr S(E) - 2 cos(kq)| over Bloch eigenvalues = %.2e", worst_trace);
  log.require(worst_roots <= 1e-6, "truncation eigenvalues equal S21 roots");
  log.require(worst_trace <= 1e-7, "dispersion relation");
}

// --- 9 ---------------------------------------------------------------------

void transfer_properties(Log& log) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(-2.5, 2.5), im(-0.5, 0.5);
  const auto spec = harper(0.134, 6, 1);
  double worst_det = 0.0;
  std::vector<Matrix2c> cases;
  for (int i = 0; i < 100; ++i) {
    const auto s = build_period_transfer(spec, {re(rng), im(rng)});
    worst_det = std::max(worst_det, std::abs(s.determinant() - 1.0));
    if (i < 30) cases.push_back(s.entries);
  }
  // Band edges and exactly parabolic matrices: |sin theta| below 1e-8.
  const double c = std::cos(1e-9), sn = std::sin(1e-9);
  Matrix2c rot, parabolic, shear;
  rot << c, -sn, sn, c;
  parabolic << 1.0, 0.7, 0.0, 1.0;
  shear << 1.0 + 1e-10, 0.3, 0.0, 1.0 / (1.0 + 1e-10);
  for (const Matrix2c& m : {rot, parabolic, shear}) {
    cases.push_back(m);
    cases.push_back(-m);
  }
  int degenerate = 0;
  double worst_power = 0.0;
  for (const Matrix2c& s : cases) {
    const Complex half_trace = 0.5 * s.trace();
    if (std::abs(std::sqrt(1.0 - half_trace * half_trace)) < 1e-8) ++degenerate;
    for (long m = 0; m <= 20; ++m) {
      const Matrix2c direct = testing::direct_power(s, m);
      const double err = (transfer_power(s, m) - direct).norm() / std::max(1.0, direct.norm());
      worst_power = std::max(worst_power, err);
    }
  }
  log.note("max |det S - 1| over 100 energies = %.2e", worst_det);
  log.note("max relative power error, M <= 20, %zu matrices (%d near-degenerate) = %.2e", cases.size(),
           degenerate, worst_power);
  log.require(worst_det <= 1e-10, "unimodular");
  log.require(degenerate >= 4, "near-degenerate cases exercised");
  log.require(worst_power <= 1e-8, "closed-form power matches direct product");
}

// --- 10 --------------------------------------------------------------------

void propagation(Log& log) {
  PropagationOptions o;
  o.sites = 200;
  o.t_max = 30.0;
  o.num_samples = 301;
  const double t1 = 15.0, t2 = 30.0;

  const auto r1 = propagate_from_site(harper(0.134, 6, 1), 1, o);
  const double rate1 = growth_rate_estimate(r1, t1, t2, GrowthObservable::EdgeRegion, 6);
  log.note("n0 = 1: edge-region rate %.5f vs 2 x 0.0712 = 0.1424 (total-norm rate %.5f)", rate1,
           growth_rate_estimate(r1, t1, t2));
  log.require(std::abs(rate1 / 0.1424 - 1.0) <= 0.05, "n0 = 1 grows at twice the edge gain");

  const auto r0 = propagate_from_site(harper(0.134, 6, 0), 1, o);
  const double rate0 = growth_rate_estimate(r0, t1, t2, GrowthObservable::EdgeRegion, 6);
  const Eigen::Index last = r0.intensities.rows() - 1;
  const double fraction = r0.intensities(last, 0) / r0.total_norm(last);
  log.note("n0 = 0: edge-region rate %.2e, site-1 share at t = 30: %.4f", rate0, fraction);
  log.require(rate0 < 1e-3, "n0 = 0 does not grow");
  log.require(fraction < 0.1, "n0 = 0 leaves the boundary");

  const auto r4 = propagate_from_site(harper(0.134, 6, 4), 1, o);
  const double rate4 = growth_rate_estimate(r4, t1, t2, GrowthObservable::EdgeRegion, 6);
  log.note("n0 = 4: edge-region rate %.2e", rate4);
  log.require(rate4 <= 0.0, "n0 = 4 does not grow");

  const auto rh = propagate_from_site(harper(0.0, 6, 1), 1, o);
  const double drift = (rh.total_norm.array() - 1.0).abs().maxCoeff();
  log.note("Hermitian control: max |norm - 1| = %.2e", drift);
  log.require(drift <= 1e-7, "Hermitian norm conservation");
  log.require(!r0.boundary_reach_flag && !r1.boundary_reach_flag && !r4.boundary_reach_flag,
              "far boundary not reached");
}

// --- 11 --------------------------------------------------------------------

void localization(Log& log) {
  const auto spec = harper(0.134, 6, 1);
  const auto records = edge_spectrum(spec);
  const auto it = std::find_if(records.begin(), records.end(),
                               [](const EdgeStateRecord& r) { return r.classification == StateClass::Edge; });
  log.require(it != records.end(), "edge state present");
  if (it == records.end()) return;
  const double l = *it->localization_length;
  log.note("E = %.4f%+.4fi, |S11| = %.4f, L = %.4f", it->energy.real(), it->energy.imag(), it->s11_abs, l);
  log.require(std::abs(l - 3.576) <= 1e-2, "L = 3.576");

  const auto psi = boundary_witness(spec, it->energy, 6 * 8 + 1);
  double worst = 0.0;
  for (int m = 0; m <= 8; ++m) {
    worst = std::max(worst, std::abs(std::norm(psi[static_cast<std::size_t>(6 * m + 1)]) -
                                     std::exp(-6.0 * m / l)));
  }
  log.note("max witness deviation from exp(-6M/L), M <= 8: %.2e", worst);
  log.require(worst <= 1e-6, "witness decays with L");
}

}  // namespace

int main() {
  std::vector<ThresholdResult> lc;
  const std::vector<std::pair<std::string, std::function<void(Log&)>>> criteria = {
      {"Hermitian bands: six real bands, five gaps, wide/narrow split", hermitian_bands},
      {"unbroken phase at lambda = 0.134 with full-grid guard", unbroken_phase},
      {"threshold for q = 6 and gap closing at k = 0", threshold_q6},
      {"vanishing thresholds for q = 4, 8, 12",
       [&](Log& log) {
         lc = thresholds_3_to_12();
         vanishing_thresholds(log, lc);
       }},
      {"lambda_c < delta for q = 3..12", [&](Log& log) { thresholds_below_delta(log, lc); }},
      {"growth-rate decay in q", growth_decay},
      {"semi-infinite edge table, all six truncations", edge_table},
      {"truncation eigenvalues vs S21 roots; dispersion relation", route_equivalence},
      {"transfer-matrix determinant and closed-form powers", transfer_properties},
      {"propagation: edge growth, bulk diffraction, damping, norm", propagation},
      {"localization length and witness decay", localization},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Log log;
    try {
      criteria[i].second(log);
    } catch (const std::exception& e) {
      log.require(false, std::string("exception: ") + e.what());
    }
    if (!log.passed()) ++failures;
    std::cout << (log.passed() ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": "
              << criteria[i].first << '\n';
    for (const auto& line : log.lines()) std::cout << line << '\n';
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
