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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ptsl/bloch.hpp"
#include "ptsl/dynamics.hpp"
#include "ptsl/edge.hpp"
#include "ptsl/io.hpp"
#include "ptsl/lattice.hpp"

#ifndef PTSL_VERSION
#define PTSL_VERSION "0.0.0"
#endif

namespace ptsl::cli {

namespace {

using nlohmann::json;

struct LatticeFlags {
  std::string file;
  bool harper = false;
  double delta = 0.3;
  double lambda = 0.0;
  int p = 1;
  int q = 6;
  long n0 = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--lattice", file, "Lattice JSON file");
    cmd->add_flag("--harper", harper, "Use the Harper lattice given by the flags below");
    cmd->add_option("--delta", delta, "Harper cosine amplitude");
    cmd->add_option("--lambda", lambda, "Harper non-Hermitian amplitude");
    cmd->add_option("--p", p, "Harper numerator p");
    cmd->add_option("--q", q, "Harper period q");
    cmd->add_option("--n0", n0, "Harper reference index (truncation offset)");
  }

  SuperlatticeSpec spec() const {
    if (!file.empty() && harper) throw ValidationError("use either --lattice or --harper, not both");
    if (!file.empty()) return io::load_lattice(file).spec;
    if (!harper) throw ValidationError("a lattice is required: pass --lattice FILE or --harper");
    return build_harper({delta, lambda, p, q, n0});
  }

  json describe() const {
    if (!file.empty()) return {{"lattice", file}};
    return {{"harper", {{"delta", delta}, {"lambda", lambda}, {"p", p}, {"q", q}, {"n0", n0}}}};
  }
};

struct Range {
  int first = 0;
  int last = -1;
};

Range parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("range must look like a:b, got " + text);
  try {
    std::size_t used = 0;
    Range r;
    r.first = std::stoi(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(text);
    const std::string rest = text.substr(colon + 1);
    r.last = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    return r;
  } catch (const std::logic_error&) {
    throw ValidationError("range must look like a:b, got " + text);
  }
}

std::size_t worker_threads() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PT_SL_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
    } catch (const std::logic_error&) {
      // Ignore a malformed cap.
    }
  }
  return n;
}

// Writes CSV to --out (or `out` when empty).
template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write " + path);
  write(file);
  if (!file) throw NumericalError("failed writing " + path);
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const std::vector<std::string>& args, json parameters,
                    std::vector<std::string> outputs, double seconds) {
  if (out_path.empty()) return;
  json manifest = {{"command", command},
                   {"argv", args},
                   {"parameters", std::move(parameters)},
                   {"version", PTSL_VERSION},
                   {"outputs", std::move(outputs)},
                   {"duration_seconds", seconds}};
  std::ofstream file(out_path + ".manifest.json", std::ios::binary);
  file << manifest.dump(2) << '\n';
}

std::string format_energy(Complex e) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << e.real();
  if (std::abs(e.imag()) >= 5e-5) os << (e.imag() < 0 ? " - " : " + ") << std::abs(e.imag()) << "i";
  return os.str();
}

// --- bands -----------------------------------------------------------------

int cmd_bands(const LatticeFlags& lattice, int kpoints, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  const auto spec = lattice.spec();
  const auto bands = band_structure(spec, kpoints);
  emit(out_path, out, [&](std::ostream& os) { io::write_bands_csv(os, bands); });

  std::ostream& summary = out_path.empty() ? err : out;
  const auto gaps = find_gaps(bands);
  summary << "bands: " << bands.band_count() << ", max |Im E| = " << bands.max_abs_imag() << '\n';
  for (int b = 0; b < bands.band_count(); ++b) {
    summary << "  band " << b << ": [" << bands.energies.col(b).real().minCoeff() << ", "
            << bands.energies.col(b).real().maxCoeff() << "]\n";
  }
  summary << "gaps: " << gaps.size() << '\n';
  for (const Gap& g : gaps) {
    summary << "  above band " << g.lower_band << ": (" << g.lower << ", " << g.upper
            << ") width " << g.width() << '\n';
  }
  return kExitOk;
}

// --- threshold / sweep -----------------------------------------------------

struct SweepFlags {
  double delta = 0.3;
  double sigma_lambda = std::nan("");
  int p = 1;
  int q = 6;
  long n0 = 0;
  double lambda_max = 1.0;
  double tol = 1e-6;
  int kpoints = 256;
  std::string q_range;
  std::string p_range;
  std::string out;

  SweepOptions options() const {
    SweepOptions o;
    o.delta = delta;
    o.sigma_lambda = std::isnan(sigma_lambda) ? delta : sigma_lambda;
    o.lambda_max = lambda_max;
    o.tol_lambda = tol;
    o.num_k = kpoints;
    o.threads = worker_threads();
    if (!(lambda_max > 0.0)) throw ValidationError("--lambda-max must be positive");
    if (!(tol > 0.0)) throw ValidationError("--tol must be positive");
    if (kpoints < 2) throw ValidationError("--kpoints must be >= 2");
    return o;
  }

  json describe() const {
    return {{"delta", delta}, {"lambda", std::isnan(sigma_lambda) ? delta : sigma_lambda},
            {"p", p}, {"q", q}, {"n0", n0}, {"lambda_max", lambda_max}, {"tol", tol},
            {"kpoints", kpoints}, {"q_range", q_range}, {"p_range", p_range}};
  }
};

std::vector<SweepRow> run_range_sweep(const SweepFlags& f) {
  if (!f.q_range.empty() && !f.p_range.empty()) {
    throw ValidationError("use either --q-range or --p-range");
  }
  const SweepOptions o = f.options();
  if (!f.q_range.empty()) {
    const Range r = parse_range(f.q_range);
    return sweep_period(f.p, r.first, r.last, o);
  }
  if (!f.p_range.empty()) {
    const Range r = parse_range(f.p_range);
    return sweep_numerator(f.q, r.first, r.last, o);
  }
  throw ValidationError("sweep needs --q-range a:b or --p-range a:b");
}

int cmd_threshold(const SweepFlags& f, std::ostream& out, std::ostream& err) {
  if (!f.q_range.empty() || !f.p_range.empty()) {
    const auto rows = run_range_sweep(f);
    emit(f.out, out, [&](std::ostream& os) { io::write_sweep_csv(os, rows); });
    return kExitOk;
  }
  const SweepOptions o = f.options();
  const auto family = harper_family(f.delta, f.p, f.q, f.n0);
  const auto t = breaking_threshold(family, o.lambda_max, o.tol_lambda);
  json report = {{"delta", f.delta},
                 {"p", f.p},
                 {"q", f.q},
                 {"lambda_c", t.lambda_c},
                 {"bracket", {t.lower, t.upper}},
                 {"never_broken", t.never_broken},
                 {"multiple_transitions", t.multiple_transitions}};
  if (t.multiple_transitions) {
    err << "warning: spectrum turns real again above the first transition; reporting the first\n";
  }
  emit(f.out, out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
  if (!f.out.empty()) {
    out << "lambda_c = " << std::setprecision(10) << t.lambda_c
        << (t.never_broken ? " (never broken up to lambda-max)" : "") << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const SweepFlags& f, std::ostream& out) {
  const auto rows = run_range_sweep(f);
  emit(f.out, out, [&](std::ostream& os) { io::write_sweep_csv(os, rows); });
  return kExitOk;
}

// --- edges -----------------------------------------------------------------

int cmd_edges(const LatticeFlags& lattice, const std::string& format, const std::string& out_path,
              std::ostream& out) {
  const auto spec = lattice.spec();
  const auto d = theorem2_is_real(spec);
  emit(out_path, out, [&](std::ostream& os) {
    if (format == "csv") {
      io::write_edge_csv(os, d.records);
    } else if (format == "json") {
      os << io::edge_report_json(d).dump(2) << '\n';
    } else {
      os << std::left << std::setw(24) << "energy E_l" << std::setw(10) << "|S11|"
         << std::setw(18) << "state" << "L\n";
      std::size_t hidden = 0;
      for (const auto& r : d.records) {
        if (r.classification == StateClass::NotInSpectrum) {
          ++hidden;
          continue;
        }
        std::ostringstream s11;
        s11 << std::fixed << std::setprecision(4) << r.s11_abs;
        os << std::setw(24) << format_energy(r.energy) << std::setw(10) << s11.str()
           << std::setw(18) << (r.classification == StateClass::Edge ? "edge state" : "extended state");
        if (r.localization_length) os << std::fixed << std::setprecision(4) << *r.localization_length;
        os << '\n';
      }
      if (hidden > 0) os << "(" << hidden << " roots with |S11| > 1 not in the spectrum)\n";
      os << "spectrum: " << (d.real ? "real" : "complex") << '\n';
    }
  });
  return kExitOk;
}

// --- evolve ----------------------------------------------------------------

struct EvolveFlags {
  double t_max = 30.0;
  int sites = 0;
  int excite = 1;
  int samples = 200;
  double rel_tol = 1e-9;
  std::string fit_window;
  std::string out;
  std::string summary;
};

int cmd_evolve(const LatticeFlags& lattice, const EvolveFlags& f, std::ostream& out) {
  if (!(f.t_max > 0.0)) throw ValidationError("--tmax must be positive");
  const auto spec = lattice.spec();
  PropagationOptions o;
  o.sites = f.sites;
  o.t_max = f.t_max;
  o.num_samples = f.samples;
  o.rel_tol = f.rel_tol;
  const auto result = propagate_from_site(spec, f.excite, o);

  double t1 = 0.5 * f.t_max, t2 = f.t_max;
  if (!f.fit_window.empty()) {
    const auto colon = f.fit_window.find(':');
    if (colon == std::string::npos) throw ValidationError("--fit-window must look like t1:t2");
    try {
      t1 = std::stod(f.fit_window.substr(0, colon));
      t2 = std::stod(f.fit_window.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw ValidationError("--fit-window must look like t1:t2");
    }
  }
  const int edge_sites = spec.period();
  const double edge_rate = growth_rate_estimate(result, t1, t2, GrowthObservable::EdgeRegion, edge_sites);
  const double total_rate = growth_rate_estimate(result, t1, t2, GrowthObservable::TotalNorm);
  const Eigen::Index last = result.intensities.rows() - 1;
  json summary = {{"growth_rate", edge_rate},
                  {"growth_rate_total_norm", total_rate},
                  {"fit_window", {t1, t2}},
                  {"edge_sites", edge_sites},
                  {"sites", result.sites()},
                  {"boundary_reach_flag", result.boundary_reach_flag},
                  {"final_total_norm", result.total_norm(last)},
                  {"final_edge_fraction", result.intensities(last, 0) / result.total_norm(last)}};

  if (!f.out.empty()) {
    emit(f.out, out, [&](std::ostream& os) { io::write_intensity_csv(os, result); });
  }
  if (!f.summary.empty()) {
    emit(f.summary, out, [&](std::ostream& os) { os << summary.dump(2) << '\n'; });
  } else {
    out << summary.dump(2) << '\n';
  }
  return kExitOk;
}

// --- dispatch --------------------------------------------------------------

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_replay(const std::string& manifest_path, std::ostream& out, std::ostream& err) {
  std::ifstream in(manifest_path);
  if (!in) throw ValidationError("cannot open manifest " + manifest_path);
  json manifest;
  try {
    in >> manifest;
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed manifest: " + std::string(e.what()));
  }
  if (!manifest.contains("argv") || !manifest["argv"].is_array()) {
    throw ValidationError("manifest lacks an argv array");
  }
  const auto args = manifest["argv"].get<std::vector<std::string>>();
  if (!args.empty() && args.front() == "replay") throw ValidationError("manifest replays itself");
  return dispatch(args, out, err);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral analysis of PT-symmetric tight-binding superlattices", "ptsl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PTSL_VERSION);

  LatticeFlags bands_lattice;
  int kpoints = 256;
  std::string bands_out;
  auto* bands = app.add_subcommand("bands", "Band structure over the Brillouin zone (CSV)");
  bands_lattice.attach(bands);
  bands->add_option("--kpoints", kpoints, "Number of k-points");
  bands->add_option("--out", bands_out, "CSV output file (stdout when omitted)");

  SweepFlags threshold_flags;
  auto* threshold = app.add_subcommand("threshold", "PT-breaking threshold of the Harper family");
  threshold->add_option("--delta", threshold_flags.delta, "Harper cosine amplitude");
  threshold->add_option("--p", threshold_flags.p, "Harper numerator p");
  threshold->add_option("--q", threshold_flags.q, "Harper period q");
  threshold->add_option("--n0", threshold_flags.n0, "Harper reference index");
  threshold->add_option("--lambda", threshold_flags.sigma_lambda, "lambda for sigma in range mode (default delta)");
  threshold->add_option("--lambda-max", threshold_flags.lambda_max, "Upper end of the lambda scan");
  threshold->add_option("--tol", threshold_flags.tol, "Bisection width");
  threshold->add_option("--kpoints", threshold_flags.kpoints, "k-points for sigma in range mode");
  threshold->add_option("--q-range", threshold_flags.q_range, "Sweep q over a:b");
  threshold->add_option("--p-range", threshold_flags.p_range, "Sweep p over a:b");
  threshold->add_option("--out", threshold_flags.out, "Output file");

  LatticeFlags edges_lattice;
  std::string edges_format = "table";
  std::string edges_out;
  auto* edges = app.add_subcommand("edges", "Edge states of the lattice truncated at site 1");
  edges_lattice.attach(edges);
  edges->add_option("--format", edges_format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  edges->add_option("--out", edges_out, "Output file");

  LatticeFlags evolve_lattice;
  EvolveFlags evolve_flags;
  auto* evolve = app.add_subcommand("evolve", "Propagate a single-site excitation");
  evolve_lattice.attach(evolve);
  evolve->add_option("--tmax", evolve_flags.t_max, "Propagation time");
  evolve->add_option("--sites", evolve_flags.sites, "Lattice size N (default from tmax)");
  evolve->add_option("--excite", evolve_flags.excite, "Initially excited site");
  evolve->add_option("--samples", evolve_flags.samples, "Number of sample times");
  evolve->add_option("--rtol", evolve_flags.rel_tol, "Integrator relative tolerance");
  evolve->add_option("--fit-window", evolve_flags.fit_window, "Growth fit window t1:t2");
  evolve->add_option("--out", evolve_flags.out, "Intensity CSV (t,site,intensity)");
  evolve->add_option("--summary", evolve_flags.summary, "Summary JSON file (stdout when omitted)");

  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "lambda_c and sigma over q or p (CSV)");
  sweep->add_option("--delta", sweep_flags.delta, "Harper cosine amplitude");
  sweep->add_option("--lambda", sweep_flags.sigma_lambda, "lambda at which sigma is evaluated (default delta)");
  sweep->add_option("--p", sweep_flags.p, "Fixed p for --q-range");
  sweep->add_option("--q", sweep_flags.q, "Fixed q for --p-range");
  sweep->add_option("--lambda-max", sweep_flags.lambda_max, "Upper end of the lambda scan");
  sweep->add_option("--tol", sweep_flags.tol, "Bisection width");
  sweep->add_option("--kpoints", sweep_flags.kpoints, "k-points for sigma");
  sweep->add_option("--q-range", sweep_flags.q_range, "Sweep q over a:b");
  sweep->add_option("--p-range", sweep_flags.p_range, "Sweep p over a:b");
  sweep->add_option("--out", sweep_flags.out, "CSV output file");

  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", manifest_path, "Manifest JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  if (*bands) {
    const int rc = cmd_bands(bands_lattice, kpoints, bands_out, out, err);
    json params = bands_lattice.describe();
    params["kpoints"] = kpoints;
    write_manifest(bands_out, "bands", args, params, {bands_out}, elapsed());
    return rc;
  }
  if (*threshold) {
    const int rc = cmd_threshold(threshold_flags, out, err);
    write_manifest(threshold_flags.out, "threshold", args, threshold_flags.describe(),
                   {threshold_flags.out}, elapsed());
    return rc;
  }
  if (*edges) {
    const int rc = cmd_edges(edges_lattice, edges_format, edges_out, out);
    json params = edges_lattice.describe();
    params["format"] = edges_format;
    write_manifest(edges_out, "edges", args, params, {edges_out}, elapsed());
    return rc;
  }
  if (*evolve) {
    const int rc = cmd_evolve(evolve_lattice, evolve_flags, out);
    json params = evolve_lattice.describe();
    params.update({{"tmax", evolve_flags.t_max}, {"sites", evolve_flags.sites},
                   {"excite", evolve_flags.excite}, {"samples", evolve_flags.samples},
                   {"rtol", evolve_flags.rel_tol}, {"fit_window", evolve_flags.fit_window}});
    std::vector<std::string> outputs;
    if (!evolve_flags.out.empty()) outputs.push_back(evolve_flags.out);
    if (!evolve_flags.summary.empty()) outputs.push_back(evolve_flags.summary);
    const std::string anchor = !evolve_flags.out.empty() ? evolve_flags.out : evolve_flags.summary;
    write_manifest(anchor, "evolve", args, params, outputs, elapsed());
    return rc;
  }
  if (*sweep) {
    const int rc = cmd_sweep(sweep_flags, out);
    write_manifest(sweep_flags.out, "sweep", args, sweep_flags.describe(), {sweep_flags.out}, elapsed());
    return rc;
  }
  return cmd_replay(manifest_path, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace ptsl::cli
