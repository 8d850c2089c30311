/* Copyright 2026 The specpot Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
// JSON and DOT serialization. Vertices and mutation indices are 1-based in
// every external format; field elements are power-basis indices.

#ifndef SPECPOT_IO_HPP
#define SPECPOT_IO_HPP

#include <string>

#include "json.hpp"
#include "specpot/exchange.hpp"
#include "specpot/mutation.hpp"
#include "specpot/nondegen.hpp"
#include "specpot/series.hpp"
#include "specpot/species.hpp"

namespace specpot::io {

using json = nlohmann::json;

/// {"n": n, "rows": [[...], ...]}
json matrix_to_json(const ExchangeMatrix& b);
/// Accepts {"rows": [...]}, {"matrix": [...]} or a bare array of rows.
ExchangeMatrix matrix_from_json(const json& j);

json species_to_json(const Species& s);
SpeciesPtr species_from_json(const json& j);

/// {"trunc": N, "terms": [{"monomial": [t, "id", t, ...], "coeff": c}]},
/// with an extra "vertex" key on degree-0 terms. Terms are sorted.
json series_to_json(const Series& f);
Series series_from_json(const json& j, const SpeciesPtr& species);

/// Counts of terms per degree 0..N.
json terms_by_degree(const Series& f);

/// Species with potential: {"species", "matrix", "potential"}.
json state_to_json(const Series& potential);
Series state_from_json(const json& j);

/// Valued-quiver edges {"source", "target", "label": [b_ij, -b_ji]} for b_ij > 0.
json edge_list(const ExchangeMatrix& b);

json family_to_json(std::int64_t a, std::int64_t b);
json realization_to_json(const RealizationReport& r);
json mutation_to_json(const MutationResult& r);
json step_to_json(const StepReport& s);
json sequence_to_json(const SequenceReport& r);
json search_to_json(const SearchResult& r, std::uint32_t prime);
json deformation_to_json(const DeformationReport& r);

/// Graphviz digraph of the valued quiver of b, labelled by vertex degrees.
std::string to_dot(const ExchangeMatrix& b, const std::vector<int>& degrees);
std::string to_dot(const Species& s);

/// Stable textual form used by every front end.
std::string dump(const json& j);

/// Wraps parse failures of nlohmann::json as Error(Parse).
json parse(const std::string& text);

/// FNV-1a of the compact serialization, as 16 hex digits.
std::string state_hash(const json& j);

}  // namespace specpot::io

#endif  // SPECPOT_IO_HPP
