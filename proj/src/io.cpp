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

#include "ptsl/io.hpp"

#include <fstream>
#include <limits>
#include <ostream>

namespace ptsl::io {

using nlohmann::json;

namespace {

double real_field(const json& j, const char* what) {
  if (!j.is_number()) throw ValidationError(std::string(what) + " must be a real number");
  return j.get<double>();
}

long int_field(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ValidationError(std::string(what) + " must be an integer");
  return j.get<long>();
}

const json& required(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

// Full round-trip precision for CSV.
struct PrecisionGuard {
  explicit PrecisionGuard(std::ostream& os) : os_(os), saved_(os.precision()) {
    os_.precision(std::numeric_limits<double>::max_digits10);
  }
  ~PrecisionGuard() { os_.precision(saved_); }
  std::ostream& os_;
  std::streamsize saved_;
};

}  // namespace

LatticeDocument parse_lattice(const json& doc) {
  if (!doc.is_object()) throw ValidationError("lattice document must be a JSON object");

  if (doc.contains("harper")) {
    const json& h = doc.at("harper");
    if (!h.is_object()) throw ValidationError("\"harper\" must be an object");
    HarperParams p;
    p.delta = real_field(required(h, "delta"), "harper.delta");
    p.lambda = real_field(required(h, "lambda"), "harper.lambda");
    p.p = static_cast<int>(int_field(required(h, "p"), "harper.p"));
    p.q = static_cast<int>(int_field(required(h, "q"), "harper.q"));
    p.n0 = h.contains("n0") ? int_field(h.at("n0"), "harper.n0") : 0;
    return {build_harper(p), p};
  }

  const long q = int_field(required(doc, "q"), "q");
  const json& onsite = required(doc, "onsite");
  const json& hopping = required(doc, "hopping");
  if (!onsite.is_array() || !hopping.is_array()) {
    throw ValidationError("\"onsite\" and \"hopping\" must be arrays");
  }
  if (q < 1 || onsite.size() != static_cast<std::size_t>(q) ||
      hopping.size() != static_cast<std::size_t>(q)) {
    throw ValidationError("\"onsite\" and \"hopping\" must have exactly q entries");
  }
  std::vector<Complex> v;
  for (const json& e : onsite) {
    if (!e.is_array() || e.size() != 2) throw ValidationError("onsite entries must be [re, im] pairs");
    v.emplace_back(real_field(e[0], "onsite re"), real_field(e[1], "onsite im"));
  }
  std::vector<double> k;
  for (const json& e : hopping) k.push_back(real_field(e, "hopping"));
  return {SuperlatticeSpec(std::move(v), std::move(k)), std::nullopt};
}

LatticeDocument load_lattice(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open lattice file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed lattice JSON: " + std::string(e.what()));
  }
  return parse_lattice(doc);
}

json to_json(const SuperlatticeSpec& spec) {
  json onsite = json::array();
  for (const Complex& v : spec.onsite_values()) onsite.push_back({v.real(), v.imag()});
  json hopping = json::array();
  for (double k : spec.hopping_values()) hopping.push_back(k);
  return {{"q", spec.period()}, {"onsite", onsite}, {"hopping", hopping}};
}

void write_bands_csv(std::ostream& os, const BandStructure& bands) {
  PrecisionGuard guard(os);
  os << "k,band_index,re_E,im_E\n";
  for (std::size_t j = 0; j < bands.k_values.size(); ++j) {
    for (int b = 0; b < bands.band_count(); ++b) {
      const Complex e = bands.energies(static_cast<Eigen::Index>(j), b);
      os << bands.k_values[j] << ',' << b << ',' << e.real() << ',' << e.imag() << '\n';
    }
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  PrecisionGuard guard(os);
  os << "param,lambda_c,sigma\n";
  for (const SweepRow& r : rows) os << r.param << ',' << r.lambda_c << ',' << r.sigma << '\n';
}

void write_edge_csv(std::ostream& os, const std::vector<EdgeStateRecord>& records) {
  PrecisionGuard guard(os);
  os << "re_E,im_E,abs_S11,class,loc_length\n";
  for (const EdgeStateRecord& r : records) {
    os << r.energy.real() << ',' << r.energy.imag() << ',' << r.s11_abs << ','
       << to_string(r.classification) << ',';
    if (r.localization_length) os << *r.localization_length;
    os << '\n';
  }
}

json edge_report_json(const SemiInfiniteDiagnosis& d) {
  json rows = json::array();
  for (const EdgeStateRecord& r : d.records) {
    json row = {{"re_E", r.energy.real()},
                {"im_E", r.energy.imag()},
                {"abs_S11", r.s11_abs},
                {"class", std::string(to_string(r.classification))}};
    row["loc_length"] = r.localization_length ? json(*r.localization_length) : json(nullptr);
    rows.push_back(std::move(row));
  }
  json offending = json::array();
  for (const Complex& e : d.offending) offending.push_back({e.real(), e.imag()});
  return {{"spectrum", d.real ? "real" : "complex"},
          {"bulk_unbroken", d.bulk.unbroken},
          {"bulk_max_abs_imag", d.bulk.max_abs_imag},
          {"offending", offending},
          {"records", rows}};
}

void write_intensity_csv(std::ostream& os, const PropagationResult& result) {
  PrecisionGuard guard(os);
  os << "t,site,intensity\n";
  for (std::size_t j = 0; j < result.sample_times.size(); ++j) {
    for (int n = 0; n < result.sites(); ++n) {
      os << result.sample_times[j] << ',' << n + 1 << ','
         << result.intensities(static_cast<Eigen::Index>(j), n) << '\n';
    }
  }
}

}  // namespace ptsl::io
