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
// Non-degeneracy along mutation sequences, randomized search, and truncated
// deformation spaces. Every verdict here is a statement up to the truncation
// order N of the series involved.

#ifndef SPECPOT_NONDEGEN_HPP
#define SPECPOT_NONDEGEN_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "specpot/mutation.hpp"

namespace specpot {

struct StepReport {
  int k = 0;  // 0-based
  bool two_acyclic = false;
  ExchangeMatrix matrix;
  std::vector<int> terms_by_degree;  // index = degree
  int trivial_rank = 0;
  int arrow_count = 0;
};

StepReport make_step_report(const MutationResult& r);

struct SequenceReport {
  std::vector<int> sequence;  // 0-based
  std::vector<StepReport> steps;
  std::optional<int> failure_step;  // index into sequence

  bool passed() const noexcept { return !failure_step.has_value(); }
};

/// Throws InvalidArgument for out-of-range entries or repeated neighbours.
void validate_sequence(int vertex_count, const std::vector<int>& sequence);

/// Mutates step by step and stops after the first result that is not
/// 2-acyclic.
SequenceReport check_sequence(const Series& potential, const std::vector<int>& sequence);

/// All sequences of length 1..max_len with k_p != k_{p+1}, in depth-first
/// order.
std::vector<std::vector<int>> enumerate_sequences(int vertex_count, int max_len);

struct SearchParams {
  int trunc = 6;
  int max_len = 4;
  int trials = 20;
  std::uint64_t seed = 0;
  SupportPolicy policy = SupportPolicy::AllCycles;
};

struct TrialOutcome {
  int trial = 0;
  std::uint64_t seed = 0;
  bool passed = false;
  std::string reason;  // empty when passed
};

struct SearchResult {
  SearchParams params;
  std::vector<TrialOutcome> trials;
  std::optional<Series> potential;  // set when certified
  std::vector<SequenceReport> certificate;
  std::string warning;

  bool found() const noexcept { return potential.has_value(); }
};

/// Trial t draws random_potential(species, N, seed + t). Potentials with a
/// degree-2 term are rejected outright. The first potential whose every
/// sequence of length <= max_len stays 2-acyclic is returned together with
/// all of its sequence reports.
SearchResult search_nondegenerate(const SpeciesPtr& species, const SearchParams& params);

struct DeformationReport {
  int trunc = 0;
  std::vector<int> dims;            // index m = 1..N; dims[0] unused (0)
  std::vector<int> cyclic_words;    // necklace count per degree
  int total = 0;

  bool rigid() const noexcept { return total == 0; }
};

/// Graded dimensions of the cyclic part of F_S(M)^{>=1} modulo R(P) and
/// commutators, degree by degree up to N. Pivots are taken lowest degree
/// first, so reports at smaller N are prefixes of reports at larger N.
DeformationReport deformation_dim_truncated(const Series& potential, int trunc);

struct RigidityTransport {
  bool rigid_before = false;
  bool rigid_after = false;
  bool two_acyclic = false;

  bool agree() const noexcept { return rigid_before == rigid_after; }
};

RigidityTransport rigidity_transport_check(const Series& potential, int k, int trunc);

/// a -> a + (random combination of paths sigma(a) -> tau(a) of degree 2..N),
/// at most `max_terms` paths per arrow.
ArrowMap random_unitriangular(const SpeciesPtr& species, int trunc, std::uint64_t seed, int max_terms = 16);

}  // namespace specpot

#endif  // SPECPOT_NONDEGEN_HPP
