#include <random>

#include "doctest.h"
#include "specpot/error.hpp"
#include "specpot/nondegen.hpp"
#include "support.hpp"

using namespace specpot;

namespace {

SpeciesPtr three_cycle() {
  return testing::make_species(101, {1, 1, 1}, {{"a", 1, 2}, {"b", 2, 3}, {"c", 3, 1}});
}

SpeciesPtr linear_a3() { return testing::make_species(101, {1, 1, 1}, {{"a", 1, 2}, {"b", 2, 3}}); }

}  // namespace

TEST_CASE("sequence validation") {
  CHECK_NOTHROW(validate_sequence(3, {}));
  CHECK_NOTHROW(validate_sequence(3, {0, 1, 0, 2}));
  CHECK_THROWS_AS(validate_sequence(3, {0, 0}), Error);
  CHECK_THROWS_AS(validate_sequence(3, {3}), Error);
  CHECK_THROWS_AS(validate_sequence(3, {-1}), Error);
}

TEST_CASE("sequence enumeration count") {
  // n (n-1)^{l-1} sequences of length l
  CHECK(enumerate_sequences(4, 4).size() == 4 + 12 + 36 + 108);
  CHECK(enumerate_sequences(3, 2).size() == 3 + 6);
  for (const auto& s : enumerate_sequences(4, 3)) CHECK_NOTHROW(validate_sequence(4, s));
}

TEST_CASE("empty sequence passes vacuously") {
  const SequenceReport r = check_sequence(Series(three_cycle(), 6), {});
  CHECK(r.passed());
  CHECK(r.steps.empty());
}

TEST_CASE("check_sequence is prefix consistent") {
  const ExchangeMatrix b = family_matrix(4, 6);
  auto s = realize(b, *find_skew_symmetrizer(b), PrimeModulus(101));
  const Series p = random_potential(s, 6, 0);
  const std::vector<int> full{1, 0, 2, 3, 1};
  const SequenceReport whole = check_sequence(p, full);
  for (std::size_t len = 1; len < full.size(); ++len) {
    const SequenceReport part = check_sequence(p, {full.begin(), full.begin() + static_cast<long>(len)});
    REQUIRE(part.steps.size() <= whole.steps.size());
    for (std::size_t i = 0; i < part.steps.size(); ++i) {
      CHECK(part.steps[i].matrix == whole.steps[i].matrix);
      CHECK(part.steps[i].two_acyclic == whole.steps[i].two_acyclic);
      CHECK(part.steps[i].terms_by_degree == whole.steps[i].terms_by_degree);
    }
  }
}

TEST_CASE("check_sequence stops at the first failure") {
  // P = 0 on the 3-cycle: mutating at 2 leaves [ab] against c with nothing
  // to cancel them.
  const SequenceReport r = check_sequence(Series(three_cycle(), 6), {1, 0, 2});
  REQUIRE(r.failure_step.has_value());
  CHECK(*r.failure_step == 0);
  CHECK(r.steps.size() == 1);
  CHECK_FALSE(r.steps[0].two_acyclic);
}

TEST_CASE("search rejects potentials with degree-2 terms") {
  auto s = testing::make_species(101, {1, 1}, {{"a", 1, 2}, {"b", 2, 1}});
  SearchParams params;
  params.trunc = 4;
  params.max_len = 2;
  params.trials = 3;
  const SearchResult r = search_nondegenerate(s, params);
  CHECK_FALSE(r.found());
  REQUIRE(r.trials.size() == 3);
  for (const auto& t : r.trials) {
    CHECK_FALSE(t.passed);
    CHECK_FALSE(t.reason.empty());
  }
}

TEST_CASE("search on an acyclic species returns the zero potential") {
  SearchParams params;
  params.max_len = 3;
  params.trials = 1;
  const SearchResult r = search_nondegenerate(linear_a3(), params);
  REQUIRE(r.found());
  CHECK(r.potential->is_zero());
  CHECK(r.certificate.size() == enumerate_sequences(3, 3).size());
}

TEST_CASE("search is deterministic in the seed") {
  SearchParams params;
  params.max_len = 2;
  params.trials = 2;
  params.seed = 9;
  const SearchResult a = search_nondegenerate(three_cycle(), params);
  const SearchResult b = search_nondegenerate(three_cycle(), params);
  REQUIRE(a.found() == b.found());
  if (a.found()) CHECK(*a.potential == *b.potential);
}

TEST_CASE("deformation space of the 3-cycle") {
  auto s = three_cycle();
  const Series p = testing::cycle(s, 8, {"a", "b", "c"});
  for (int n : {4, 6, 8}) {
    const DeformationReport r = deformation_dim_truncated(p.with_trunc(n), n);
    CHECK(r.rigid());
    CHECK(r.total == 0);
  }
  const DeformationReport zero = deformation_dim_truncated(Series(s, 6), 6);
  CHECK_FALSE(zero.rigid());
  CHECK(zero.dims[3] == 1);
  CHECK(zero.dims[6] == 1);
  CHECK(zero.total == 2);
}

TEST_CASE("deformation reports are prefix consistent") {
  const ExchangeMatrix b = family_matrix(4, 6);
  auto s = realize(b, *find_skew_symmetrizer(b), PrimeModulus(101));
  const Series p = random_potential(s, 6, 0);
  const DeformationReport full = deformation_dim_truncated(p, 6);
  for (int n = 1; n < 6; ++n) {
    const DeformationReport part = deformation_dim_truncated(p.with_trunc(n), n);
    for (int m = 1; m <= n; ++m) CHECK(part.dims[m] == full.dims[m]);
  }
  for (int m = 1; m <= 6; ++m) {
    CHECK(full.dims[m] >= 0);
    CHECK(full.dims[m] <= full.cyclic_words[m]);
  }
}

TEST_CASE("acyclic species are rigid") {
  for (int n = 1; n <= 8; ++n) CHECK(deformation_dim_truncated(Series(linear_a3(), n), n).rigid());
}

TEST_CASE("rigidity transports across mutation of the 3-cycle") {
  auto s = three_cycle();
  const Series p = testing::cycle(s, 6, {"a", "b", "c"});
  for (int k = 0; k < 3; ++k) {
    const RigidityTransport t = rigidity_transport_check(p, k, 6);
    CHECK(t.agree());
    CHECK(t.rigid_before);
  }
}

TEST_CASE("unitriangular substitutions fix the linear part") {
  auto s = three_cycle();
  const ArrowMap phi = random_unitriangular(s, 6, 3);
  for (const auto& [a, img] : phi) {
    CHECK(img.homogeneous(1) == Series::arrow(s, 6, a));
    CHECK(img.min_degree() == 1);
  }
}
