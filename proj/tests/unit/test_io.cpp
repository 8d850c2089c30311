#include "doctest.h"
#include "specpot/error.hpp"
#include "specpot/io.hpp"
#include "support.hpp"

using namespace specpot;
using io::json;

namespace {

SpeciesPtr family46() {
  const ExchangeMatrix b = family_matrix(4, 6);
  return realize(b, *find_skew_symmetrizer(b), PrimeModulus(101));
}

}  // namespace

TEST_CASE("matrix json accepts three layouts") {
  const ExchangeMatrix b = family_matrix(4, 6);
  CHECK(io::matrix_from_json(io::matrix_to_json(b)) == b);
  CHECK(io::matrix_from_json(json{{"matrix", b.rows()}}) == b);
  CHECK(io::matrix_from_json(json(b.rows())) == b);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[0,1],[2]]")), Error);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse("{\"cols\": 3}")), Error);
}

TEST_CASE("species json round trip") {
  auto s = family46();
  const json j = io::species_to_json(*s);
  auto back = io::species_from_json(j);
  CHECK(back->arrows() == s->arrows());
  CHECK(back->vertex_count() == 4);
  for (int v = 0; v < 4; ++v) CHECK(back->field(v).min_poly() == s->field(v).min_poly());
  CHECK(io::species_to_json(*back) == j);
}

TEST_CASE("state json round trip") {
  auto s = family46();
  const Series p = random_potential(s, 6, 3);
  const json j = io::state_to_json(p);
  const Series back = io::state_from_json(j);
  CHECK(back.trunc() == 6);
  CHECK(io::state_to_json(back) == j);
  CHECK(io::state_hash(j) == io::state_hash(io::state_to_json(back)));
  CHECK(io::state_hash(j).size() == 16);
}

TEST_CASE("series json rejects malformed terms") {
  auto s = family46();
  CHECK_THROWS_AS(io::series_from_json(json::parse(R"({"trunc": 4, "terms": [{"monomial": [0, "nope", 0], "coeff": 1}]})"), s),
                  Error);
  CHECK_THROWS(io::series_from_json(json::parse(R"({"trunc": 4})"), s));
}

TEST_CASE("parse maps syntax errors to Parse") {
  try {
    io::parse("{not json");
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
  }
}

TEST_CASE("dot labels each edge with (b_ij,-b_ji)") {
  const std::string dot = io::to_dot(*family46());
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("v1 -> v4 [label=\"(6,1)\"]") != std::string::npos);
  CHECK(dot.find("v3 -> v2 [label=\"(4,1)\"]") != std::string::npos);
}

TEST_CASE("edge list of the family") {
  const json e = io::edge_list(family_matrix(4, 6));
  REQUIRE(e.size() == 4);
  bool seen = false;
  for (const auto& x : e)
    if (x["source"] == 1 && x["target"] == 4) {
      CHECK(x["label"] == json::array({6, 1}));
      seen = true;
    }
  CHECK(seen);
}

TEST_CASE("family json") {
  const json j = io::family_to_json(4, 6);
  CHECK(j["skew_symmetrizer"] == json::array({1, 4, 1, 6}));
  CHECK(j["strongly_primitive_proxy"] == false);
}

TEST_CASE("mutation json fields") {
  auto s = family46();
  const MutationResult r = mutate(random_potential(s, 6, 0), 1);
  const json j = io::mutation_to_json(r);
  for (const char* key : {"k", "matrix", "arrows", "terms_by_degree", "trivial_rank", "two_acyclic", "state"})
    CHECK(j.contains(key));
  CHECK(j["k"] == 2);
}
