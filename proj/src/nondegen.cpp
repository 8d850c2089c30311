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
#include "specpot/nondegen.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "specpot/error.hpp"
#include "specpot/linalg.hpp"

namespace specpot {

StepReport make_step_report(const MutationResult& r) {
  StepReport s;
  s.k = r.k;
  s.two_acyclic = r.two_acyclic;
  s.matrix = r.matrix;
  s.terms_by_degree.assign(std::max(0, r.potential.trunc()) + 1, 0);
  for (const auto& [m, c] : r.potential.terms()) ++s.terms_by_degree[m.degree()];
  s.trivial_rank = r.reduction.trivial_rank;
  s.arrow_count = r.species->arrow_count();
  return s;
}

void validate_sequence(int vertex_count, const std::vector<int>& sequence) {
  for (std::size_t p = 0; p < sequence.size(); ++p) {
    require(sequence[p] >= 0 && sequence[p] < vertex_count, ErrorCode::InvalidArgument,
            "sequence entry " + std::to_string(sequence[p] + 1) + " out of range 1.." +
                std::to_string(vertex_count));
    if (p > 0)
      require(sequence[p] != sequence[p - 1], ErrorCode::InvalidArgument,
              "sequence repeats vertex " + std::to_string(sequence[p] + 1) + " at positions " +
                  std::to_string(p) + " and " + std::to_string(p + 1));
  }
}

SequenceReport check_sequence(const Series& potential, const std::vector<int>& sequence) {
  validate_sequence(potential.species().vertex_count(), sequence);
  SequenceReport rep;
  rep.sequence = sequence;
  Series cur = potential;
  for (std::size_t p = 0; p < sequence.size(); ++p) {
    MutationResult r = mutate(cur, sequence[p]);
    rep.steps.push_back(make_step_report(r));
    if (!r.two_acyclic) {
      rep.failure_step = static_cast<int>(p);
      break;
    }
    cur = std::move(r.potential);
  }
  return rep;
}

std::vector<std::vector<int>> enumerate_sequences(int vertex_count, int max_len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == max_len) return;
    for (int k = 0; k < vertex_count; ++k) {
      if (!cur.empty() && cur.back() == k) continue;
      cur.push_back(k);
      out.push_back(cur);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

namespace {

// Depth-first over all sequences, sharing prefixes. Returns false at the
// first failing sequence.
bool certify(const Series& pot, std::vector<int>& prefix, std::vector<StepReport>& steps, int max_len,
             std::vector<SequenceReport>& out, std::string& reason) {
  if (static_cast<int>(prefix.size()) == max_len) return true;
  for (int k = 0; k < pot.species().vertex_count(); ++k) {
    if (!prefix.empty() && prefix.back() == k) continue;
    MutationResult r = mutate(pot, k);
    prefix.push_back(k);
    steps.push_back(make_step_report(r));
    SequenceReport rep{prefix, steps, std::nullopt};
    if (!r.two_acyclic) rep.failure_step = static_cast<int>(prefix.size()) - 1;
    out.push_back(rep);
    bool ok = r.two_acyclic;
    if (!ok) {
      reason = "sequence (";
      for (std::size_t q = 0; q < prefix.size(); ++q) reason += (q ? "," : "") + std::to_string(prefix[q] + 1);
      reason += ") is not 2-acyclic at its last step";
    } else {
      ok = certify(r.potential, prefix, steps, max_len, out, reason);
    }
    prefix.pop_back();
    steps.pop_back();
    if (!ok) return false;
  }
  return true;
}

}  // namespace

SearchResult search_nondegenerate(const SpeciesPtr& species, const SearchParams& params) {
  require(params.max_len >= 1, ErrorCode::InvalidArgument, "max_len must be at least 1");
  require(params.trials >= 1, ErrorCode::InvalidArgument, "trials must be at least 1");
  SearchResult res;
  res.params = params;
  for (int t = 0; t < params.trials; ++t) {
    TrialOutcome outcome{t, params.seed + static_cast<std::uint64_t>(t), false, {}};
    std::string warning;
    Series pot = random_potential(species, params.trunc, outcome.seed, params.policy, &warning);
    if (!warning.empty()) res.warning = warning;
    if (!is_2acyclic(pot)) {
      outcome.reason = "potential has a degree-2 term";
      res.trials.push_back(outcome);
      continue;
    }
    std::vector<SequenceReport> reports;
    std::vector<int> prefix;
    std::vector<StepReport> steps;
    if (certify(pot, prefix, steps, params.max_len, reports, outcome.reason)) {
      outcome.passed = true;
      res.trials.push_back(outcome);
      res.potential = std::move(pot);
      res.certificate = std::move(reports);
      return res;
    }
    res.trials.push_back(outcome);
  }
  return res;
}

DeformationReport deformation_dim_truncated(const Series& potential, int trunc) {
  require(trunc >= 1, ErrorCode::InvalidArgument, "truncation order must be at least 1");
  const SpeciesPtr& sp = potential.species_ptr();
  const Species& s = *sp;
  DeformationReport rep;
  rep.trunc = trunc;
  rep.dims.assign(trunc + 1, 0);
  rep.cyclic_words.assign(trunc + 1, 0);

  // Columns ordered by degree, so leading entries are lowest-degree parts.
  std::map<Monomial, int> column;
  std::vector<int> degree_of;
  for (int m = 1; m <= trunc; ++m)
    for (auto& w : enumerate_necklaces(s, m)) {
      column.emplace(std::move(w), static_cast<int>(degree_of.size()));
      degree_of.push_back(m);
      ++rep.cyclic_words[m];
    }

  SparseEchelon ech(s.prime());
  const Series pot = potential.with_trunc(trunc);
  for (int a = 0; a < s.arrow_count(); ++a) {
    const Series x = jacobian_generator(pot, a);
    if (x.is_zero()) continue;
    // canon(m1 X m2) = canon(X m2 m1); m2 m1 runs sigma(a) -> tau(a)
    const int from = s.arrow(a).source, to = s.arrow(a).target;
    for (int e = 1; x.min_degree() + e <= trunc; ++e)
      for (const auto& w : enumerate_paths(s, e, from, to)) {
        const Series c = cyclic_normal_form(multiply(x, Series::monomial(sp, trunc, w)));
        SparseEchelon::Row row;
        for (const auto& [mono, v] : c.terms()) {
          if (mono.degree() == 0) continue;
          row[column.at(mono)] = v;
        }
        if (!row.empty()) ech.insert(std::move(row));
      }
  }
  for (int m = 1; m <= trunc; ++m) rep.dims[m] = rep.cyclic_words[m];
  for (int piv : ech.pivots()) --rep.dims[degree_of[piv]];
  for (int m = 1; m <= trunc; ++m) rep.total += rep.dims[m];
  return rep;
}

RigidityTransport rigidity_transport_check(const Series& potential, int k, int trunc) {
  const Series pot = potential.with_trunc(trunc);
  RigidityTransport out;
  out.rigid_before = deformation_dim_truncated(pot, trunc).rigid();
  MutationResult r = mutate(pot, k);
  out.two_acyclic = r.two_acyclic;
  out.rigid_after = deformation_dim_truncated(r.potential, trunc).rigid();
  return out;
}

ArrowMap random_unitriangular(const SpeciesPtr& species, int trunc, std::uint64_t seed, int max_terms) {
  const Species& s = *species;
  std::mt19937_64 rng(seed);
  const std::uint64_t p = s.prime().value();
  ArrowMap phi;
  for (int a = 0; a < s.arrow_count(); ++a) {
    std::vector<Monomial> paths;
    for (int e = 2; e <= trunc; ++e) {
      auto part = enumerate_paths(s, e, s.arrow(a).source, s.arrow(a).target);
      paths.insert(paths.end(), part.begin(), part.end());
    }
    if (static_cast<int>(paths.size()) > max_terms) {
      std::shuffle(paths.begin(), paths.end(), rng);
      paths.resize(max_terms);
    }
    Series img = Series::arrow(species, trunc, a);
    for (const auto& m : paths) img.add(m, static_cast<Fp>(rng() % p));
    phi.emplace(a, std::move(img));
  }
  return phi;
}

}  // namespace specpot
