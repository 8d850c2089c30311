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
#include "specpot/io.hpp"

#include <cstdio>
#include <sstream>

#include "specpot/error.hpp"

namespace specpot::io {

namespace {

// Typed access with Parse errors instead of nlohmann exceptions.
template <class T>
T get(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorCode::Parse, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::Parse, std::string("key '") + key + "' has the wrong type");
  }
}

}  // namespace

json matrix_to_json(const ExchangeMatrix& b) { return json{{"n", b.size()}, {"rows", b.rows()}}; }

ExchangeMatrix matrix_from_json(const json& j) {
  const json* rows = &j;
  if (j.is_object()) {
    if (j.contains("rows")) rows = &j.at("rows");
    else if (j.contains("matrix")) return matrix_from_json(j.at("matrix"));
    else fail(ErrorCode::Parse, "matrix object needs a 'rows' key");
  }
  require(rows->is_array(), ErrorCode::Parse, "matrix must be an array of rows");
  std::vector<std::vector<std::int64_t>> r;
  for (const auto& row : *rows) {
    require(row.is_array(), ErrorCode::Parse, "matrix row must be an array");
    std::vector<std::int64_t> v;
    for (const auto& x : row) {
      require(x.is_number_integer(), ErrorCode::Parse, "matrix entries must be integers");
      v.push_back(x.get<std::int64_t>());
    }
    r.push_back(std::move(v));
  }
  require(!r.empty(), ErrorCode::Parse, "matrix is empty");
  return ExchangeMatrix(r);
}

json species_to_json(const Species& s) {
  json verts = json::array();
  for (int v = 0; v < s.vertex_count(); ++v)
    verts.push_back({{"index", v + 1}, {"degree", s.degree(v)}, {"min_poly", s.field(v).min_poly()}});
  json arrows = json::array();
  for (const auto& a : s.arrows())
    arrows.push_back({{"id", a.id},
                      {"source", a.source + 1},
                      {"target", a.target + 1},
                      {"copy", a.copy + 1},
                      {"kind", to_string(a.kind)}});
  return json{{"prime", s.prime().value()}, {"vertices", verts}, {"arrows", arrows}};
}

SpeciesPtr species_from_json(const json& j) {
  const PrimeModulus p(get<std::uint32_t>(j, "prime"));
  const json verts = get<json>(j, "vertices");
  require(verts.is_array() && !verts.empty(), ErrorCode::Parse, "species needs a nonempty 'vertices' array");
  std::vector<FieldPtr> fields;
  for (const auto& v : verts) {
    const int d = get<int>(v, "degree");
    require(d >= 1, ErrorCode::InvalidArgument, "vertex degree must be positive");
    FieldPtr f = make_extension(p, d);
    if (v.contains("min_poly")) {
      const auto mp = get<Poly>(v, "min_poly");
      if (mp != f->min_poly()) f = std::make_shared<const ExtensionField>(p, mp);
      require(f->degree() == d, ErrorCode::InvalidArgument, "min_poly degree differs from vertex degree");
    }
    fields.push_back(std::move(f));
  }
  std::vector<Arrow> arrows;
  for (const auto& a : get<json>(j, "arrows")) {
    Arrow ar;
    ar.id = get<std::string>(a, "id");
    ar.source = get<int>(a, "source") - 1;
    ar.target = get<int>(a, "target") - 1;
    ar.copy = a.contains("copy") ? get<int>(a, "copy") - 1 : 0;
    ar.kind = a.contains("kind") ? arrow_kind_from_string(get<std::string>(a, "kind")) : ArrowKind::Original;
    arrows.push_back(std::move(ar));
  }
  return std::make_shared<const Species>(p, std::move(fields), std::move(arrows));
}

json series_to_json(const Series& f) {
  const Species& s = f.species();
  json terms = json::array();
  for (const auto& [m, c] : f.sorted()) {
    json mono = json::array();
    json t;
    if (m.degree() == 0) {
      mono.push_back(m.w[1]);
      t = {{"vertex", m.w[0] + 1}, {"monomial", mono}, {"coeff", c}};
    } else {
      for (int r = 0; r < m.degree(); ++r) {
        mono.push_back(m.coeff(r));
        mono.push_back(s.arrow(m.arrow(r)).id);
      }
      mono.push_back(m.last_coeff());
      t = {{"monomial", mono}, {"coeff", c}};
    }
    terms.push_back(std::move(t));
  }
  return json{{"trunc", f.trunc()}, {"terms", terms}};
}

Series series_from_json(const json& j, const SpeciesPtr& species) {
  Series out(species, get<int>(j, "trunc"));
  for (const auto& t : get<json>(j, "terms")) {
    const json mono = get<json>(t, "monomial");
    require(mono.is_array() && !mono.empty() && mono.size() % 2 == 1, ErrorCode::Parse,
            "monomial must alternate coefficients and arrow ids");
    Monomial m;
    if (mono.size() == 1) {
      m = Monomial::unit(get<int>(t, "vertex") - 1, mono[0].get<int>());
    } else {
      for (std::size_t q = 0; q < mono.size(); ++q) {
        if (q % 2 == 0) {
          require(mono[q].is_number_integer(), ErrorCode::Parse, "coefficient index must be an integer");
          m.w.push_back(mono[q].get<int>());
        } else {
          require(mono[q].is_string(), ErrorCode::Parse, "arrow id must be a string");
          auto a = species->find_arrow(mono[q].get<std::string>());
          require(a.has_value(), ErrorCode::Parse, "unknown arrow '" + mono[q].get<std::string>() + "'");
          m.w.push_back(*a);
        }
      }
    }
    validate_monomial(*species, m);
    const auto c = get<std::int64_t>(t, "coeff");
    out.add(std::move(m), species->prime().reduce(c));
  }
  return out;
}

json terms_by_degree(const Series& f) {
  std::vector<int> counts(static_cast<std::size_t>(f.trunc()) + 1, 0);
  for (const auto& [m, c] : f.terms()) ++counts[m.degree()];
  return counts;
}

json state_to_json(const Series& potential) {
  return json{{"species", species_to_json(potential.species())},
              {"matrix", matrix_to_json(dimension_matrix(potential.species()))},
              {"potential", series_to_json(potential)}};
}

Series state_from_json(const json& j) {
  SpeciesPtr sp = species_from_json(get<json>(j, "species"));
  return series_from_json(get<json>(j, "potential"), sp);
}

json edge_list(const ExchangeMatrix& b) {
  json edges = json::array();
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      if (b(i, j) > 0) edges.push_back({{"source", i + 1}, {"target", j + 1}, {"label", {b(i, j), -b(j, i)}}});
  return edges;
}

json family_to_json(std::int64_t a, std::int64_t b) {
  const ExchangeMatrix m = family_matrix(a, b);
  const auto d = find_skew_symmetrizer(m);
  require(d.has_value(), ErrorCode::Internal, "family matrix is not skew-symmetrizable");
  return json{{"a", a},
              {"b", b},
              {"matrix", matrix_to_json(m)},
              {"skew_symmetrizer", d->diag},
              {"strongly_primitive_proxy", is_strongly_primitive_proxy(m)}};
}

json realization_to_json(const RealizationReport& r) {
  json fails = json::array();
  for (const auto& f : r.failures)
    fails.push_back({{"clause", f.clause}, {"i", f.i + 1}, {"j", f.j + 1}, {"detail", f.detail}});
  return json{{"clause1", r.clause1}, {"clause2", r.clause2}, {"clause3", r.clause3},
              {"clause4", r.clause4}, {"ok", r.ok()},        {"failures", fails}};
}

json mutation_to_json(const MutationResult& r) {
  json arrows = species_to_json(*r.species)["arrows"];
  return json{{"k", r.k + 1},
              {"matrix", matrix_to_json(r.matrix)},
              {"edges", edge_list(r.matrix)},
              {"arrows", arrows},
              {"terms_by_degree", terms_by_degree(r.potential)},
              {"trivial_rank", r.reduction.trivial_rank},
              {"degenerate_block", r.reduction.degenerate_block},
              {"reduction_rounds", r.reduction.rounds},
              {"premutation",
               {{"arrow_count", r.premutation.bimodule.species->arrow_count()},
                {"terms_by_degree", terms_by_degree(r.premutation.potential)}}},
              {"two_acyclic", r.two_acyclic},
              {"state", state_to_json(r.potential)}};
}

json step_to_json(const StepReport& s) {
  return json{{"k", s.k + 1},
              {"two_acyclic", s.two_acyclic},
              {"matrix", matrix_to_json(s.matrix)},
              {"terms_by_degree", s.terms_by_degree},
              {"trivial_rank", s.trivial_rank},
              {"arrow_count", s.arrow_count}};
}

json sequence_to_json(const SequenceReport& r) {
  json seq = json::array();
  for (int k : r.sequence) seq.push_back(k + 1);
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back(step_to_json(s));
  return json{{"sequence", seq},
              {"passed", r.passed()},
              {"failure_step", r.failure_step ? json(*r.failure_step + 1) : json(nullptr)},
              {"steps", steps}};
}

json search_to_json(const SearchResult& r, std::uint32_t prime) {
  const auto& p = r.params;
  json trials = json::array();
  for (const auto& t : r.trials)
    trials.push_back({{"trial", t.trial}, {"seed", t.seed}, {"passed", t.passed}, {"reason", t.reason}});
  json seqs = json::array();
  for (const auto& s : r.certificate) seqs.push_back(sequence_to_json(s));
  json out{{"status", r.found() ? "certified" : "not found"},
           {"params",
            {{"prime", prime},
             {"trunc", p.trunc},
             {"max_len", p.max_len},
             {"trials", p.trials},
             {"seed", p.seed},
             {"support", p.policy == SupportPolicy::AllCycles ? "all-cycles" : "cycles-only-min-degree"}}},
           {"length_cap", "all sequences of length <= " + std::to_string(p.max_len) +
                              " with k_p != k_{p+1}; statements hold up to degree " + std::to_string(p.trunc)},
           {"trials", trials},
           {"potential", r.potential ? state_to_json(*r.potential) : json(nullptr)},
           {"sequences", seqs}};
  if (!r.warning.empty()) out["warning"] = r.warning;
  return out;
}

json deformation_to_json(const DeformationReport& r) {
  json dims = json::array(), words = json::array();
  for (int m = 1; m <= r.trunc; ++m) {
    dims.push_back(r.dims[m]);
    words.push_back(r.cyclic_words[m]);
  }
  return json{{"trunc", r.trunc}, {"dims", dims}, {"cyclic_words", words}, {"total", r.total}, {"rigid", r.rigid()}};
}

std::string to_dot(const ExchangeMatrix& b, const std::vector<int>& degrees) {
  std::ostringstream os;
  os << "digraph valued_quiver {\n";
  for (int i = 0; i < b.size(); ++i) {
    os << "  v" << i + 1 << " [label=\"" << i + 1;
    if (i < static_cast<int>(degrees.size())) os << " (d=" << degrees[i] << ")";
    os << "\"];\n";
  }
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      if (b(i, j) > 0) os << "  v" << i + 1 << " -> v" << j + 1 << " [label=\"(" << b(i, j) << "," << -b(j, i) << ")\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const Species& s) {
  std::vector<int> degrees;
  for (int v = 0; v < s.vertex_count(); ++v) degrees.push_back(s.degree(v));
  return to_dot(dimension_matrix(s), degrees);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
}

std::string state_hash(const json& j) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace specpot::io
