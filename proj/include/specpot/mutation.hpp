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
// Premutation, splitting and reduced mutation of species with potential.
//
// Arrow naming in a premutated species:
//   [b|t|a]  composite through k, t the basis index of x^t in D_k
//   a*       dual of an arrow a leaving k (runs tau(a) -> k)
//   *b       dual of an arrow b entering k (runs k -> sigma(b))

#ifndef SPECPOT_MUTATION_HPP
#define SPECPOT_MUTATION_HPP

#include <cstdint>
#include <vector>

#include "specpot/exchange.hpp"
#include "specpot/series.hpp"
#include "specpot/species.hpp"

namespace specpot {

/// u_s in D_k with coeff_1(u_s * x^{s'}) = [s == s'], so that (sa)* = a* u_s
/// and *(bt) = u_t *b. w(r, q) holds the coefficients of
/// sum_{s,t} (x^t x^s) (x) (u_s u_t) on x^r (x) x^q.
struct DualCoefficientTable {
  int degree = 0;
  std::vector<std::vector<Fp>> u;  // u[s], power-basis coordinates
  std::vector<Fp> w;               // degree x degree, row-major

  Fp correction(int r, int q) const { return w[static_cast<std::size_t>(r) * degree + q]; }
};

DualCoefficientTable dual_coefficient_table(const ExtensionField& field);

struct MutatedBimodule {
  SpeciesPtr species;
  int k = 0;
  /// For each arrow of the new species: the old arrow it copies (originals),
  /// or -1.
  std::vector<int> original_of;
};

/// Throws InvalidArgument for k out of range and Precondition when k lies on
/// a 2-cycle.
MutatedBimodule premutate_bimodule(const Species& s, int k);

/// Sum over arrows of d_sigma * d_tau: the F-dimension of the bimodule.
std::int64_t bimodule_dimension(const Species& s);

struct PremutationResult {
  MutatedBimodule bimodule;
  Series potential;  // [P] + correction, on bimodule.species
};

/// Throws InvalidArgument if P has a non-cyclic term or a term of degree < 2.
PremutationResult premutate_potential(const Series& potential, int k);

struct SplitOptions {
  /// Compose the reducing substitution (costly; only needed for round trips).
  bool track_substitution = false;
};

struct SplitResult {
  SpeciesPtr reduced_species;
  Series reduced;      // on reduced_species
  Series trivial;      // sum of alpha_l beta_l, on the input species
  Series transformed;  // Phi(input), cyclic normal form, on the input species
  int trivial_rank = 0;
  /// True when some degree-2 pairing could not be brought to unit form.
  bool degenerate_block = false;
  int rounds = 0;
  /// Input arrow -> reduced arrow, -1 for the trivial ones.
  std::vector<int> kept;
  /// Phi with transformed == cyclic_normal_form(Phi(input)); filled only when
  /// tracking is on.
  ArrowMap substitution;
};

/// Splits off the trivial part up to the truncation order.
SplitResult split(const Series& potential, const SplitOptions& options = {});

/// Truncated inverse of an S-fixing substitution whose linear part is
/// invertible. Throws Precondition when the linear part is singular.
ArrowMap invert_substitution(const ArrowMap& phi, const SpeciesPtr& species, int trunc);

/// phi(psi(a)) for every arrow a.
ArrowMap compose_substitutions(const ArrowMap& phi, const ArrowMap& psi, const SpeciesPtr& species, int trunc);

struct MutationResult {
  int k = 0;
  PremutationResult premutation;
  SplitResult reduction;
  SpeciesPtr species;
  Series potential;
  ExchangeMatrix matrix;
  /// Reduced potential has no degree-2 term, the reduced species has no
  /// 2-cycles and no degree-2 pairing was left degenerate.
  bool two_acyclic = false;
};

/// Reduced mutation at the 0-based vertex k. The returned potential is in
/// cyclic normal form.
MutationResult mutate(const Series& potential, int k, const SplitOptions& options = {});

}  // namespace specpot

#endif  // SPECPOT_MUTATION_HPP
