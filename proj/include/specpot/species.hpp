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
// Species over finite fields: vertex i carries D_i = F_{p^{d_i}}, and the
// bimodule M is the free Z-bimodule on a finite arrow set, so e_i M e_j is
// spanned over F by the words s a t with s in L(i), a: i -> j, t in L(j).

#ifndef SPECPOT_SPECIES_HPP
#define SPECPOT_SPECIES_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "specpot/exchange.hpp"
#include "specpot/fields.hpp"

namespace specpot {

enum class ArrowKind { Original, Composite, DualRight, DualLeft };

const char* to_string(ArrowKind kind);
ArrowKind arrow_kind_from_string(const std::string& s);

struct Arrow {
  std::string id;
  int source = 0;  // 0-based vertex
  int target = 0;
  int copy = 0;
  ArrowKind kind = ArrowKind::Original;

  bool operator==(const Arrow&) const = default;
};

class Species {
 public:
  /// Throws InvalidArgument on out-of-range endpoints, loops or duplicate ids.
  Species(PrimeModulus p, std::vector<FieldPtr> fields, std::vector<Arrow> arrows);

  const PrimeModulus& prime() const noexcept { return p_; }
  int vertex_count() const noexcept { return static_cast<int>(fields_.size()); }
  int degree(int v) const { return fields_.at(v)->degree(); }
  const ExtensionField& field(int v) const { return *fields_.at(v); }
  const FieldPtr& field_ptr(int v) const { return fields_.at(v); }
  const std::vector<FieldPtr>& fields() const noexcept { return fields_; }

  int arrow_count() const noexcept { return static_cast<int>(arrows_.size()); }
  const Arrow& arrow(int a) const { return arrows_.at(a); }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  std::optional<int> find_arrow(const std::string& id) const;
  const std::vector<int>& arrows_from(int v) const { return out_.at(v); }
  const std::vector<int>& arrows_to(int v) const { return in_.at(v); }

  /// Number of arrows i -> j.
  int multiplicity(int i, int j) const;
  /// True iff some pair of vertices is joined by arrows in both directions.
  bool has_two_cycles() const;
  bool same_shape(const Species& o) const;

 private:
  PrimeModulus p_;
  std::vector<FieldPtr> fields_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<int>> out_, in_;
};

using SpeciesPtr = std::shared_ptr<const Species>;

std::string original_arrow_id(int i, int j, int copy, int multiplicity);

/// Species realizing b with D_i = F_{p^{d_i}} and b_ij / d_j arrows i -> j
/// whenever b_ij > 0. Throws Precondition if d is not a skew-symmetrizer or
/// the divisibility condition fails.
SpeciesPtr realize(const ExchangeMatrix& b, const SkewSymmetrizer& d, const PrimeModulus& p);

/// b_ij = dim over F_i of e_i M e_j minus dim over F_i of e_j M e_i.
ExchangeMatrix dimension_matrix(const Species& s);

struct ClauseFailure {
  int clause = 0;  // 2, 3 or 4
  int i = 0;       // 0-based
  int j = 0;
  std::string detail;
};

struct RealizationReport {
  bool clause1 = true;  // each F_i is a division ring (always, fields)
  bool clause2 = true;  // bimodules exactly for b_ij > 0
  bool clause3 = true;  // dual bimodule isomorphisms exist
  bool clause4 = true;  // dimension counts
  std::vector<ClauseFailure> failures;

  bool ok() const noexcept { return clause1 && clause2 && clause3 && clause4; }
};

/// Checks the four species-realization clauses for s against b. Dimensions
/// are counted by enumerating monomial bases; clause 3 is decided by solving
/// for an invertible intertwiner between the two dual bimodules.
RealizationReport verify_realization(const Species& s, const ExchangeMatrix& b);

/// True iff Hom_{F_i}(M_ij, F_i) and Hom_{F_j}(M_ij, F_j) are isomorphic as
/// F_j-F_i-bimodules, where M_ij is the free bimodule on `copies` arrows.
bool dual_bimodules_isomorphic(const ExtensionField& fi, const ExtensionField& fj, int copies);

}  // namespace specpot

#endif  // SPECPOT_SPECIES_HPP
