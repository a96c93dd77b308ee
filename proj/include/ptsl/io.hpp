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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ptsl/bloch.hpp"
#include "ptsl/dynamics.hpp"
#include "ptsl/edge.hpp"
#include "ptsl/lattice.hpp"

namespace ptsl::io {

/// A lattice read from JSON. `harper` is set for the shorthand form.
struct LatticeDocument {
  SuperlatticeSpec spec;
  std::optional<HarperParams> harper;
};

/**
 * Accepts either
 *   {"q": int, "onsite": [[re, im], ...], "hopping": [real, ...]}
 * or
 *   {"harper": {"delta": r, "lambda": r, "p": int, "q": int, "n0": int}}.
 * Throws ValidationError on any schema violation.
 */
LatticeDocument parse_lattice(const nlohmann::json& doc);
LatticeDocument load_lattice(const std::filesystem::path& path);

nlohmann::json to_json(const SuperlatticeSpec& spec);

/// k,band_index,re_E,im_E
void write_bands_csv(std::ostream& os, const BandStructure& bands);
/// param,lambda_c,sigma
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
/// re_E,im_E,abs_S11,class,loc_length (loc_length empty unless edge)
void write_edge_csv(std::ostream& os, const std::vector<EdgeStateRecord>& records);
nlohmann::json edge_report_json(const SemiInfiniteDiagnosis& diagnosis);
/// t,site,intensity
void write_intensity_csv(std::ostream& os, const PropagationResult& result);

}  // namespace ptsl::io
