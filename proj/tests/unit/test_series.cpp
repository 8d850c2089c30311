#include <random>

#include "doctest.h"
#include "specpot/error.hpp"
#include "specpot/series.hpp"
#include "support.hpp"

using namespace specpot;
using testing::ArrowSpec;

namespace {

SpeciesPtr family46() {
  const ExchangeMatrix b = family_matrix(4, 6);
  return realize(b, *find_skew_symmetrizer(b), PrimeModulus(101));
}

// a: 1 -> 2, b: 2 -> 1 with D_1 = F_p, D_2 = F_{p^4}.
SpeciesPtr two_vertex_14(std::uint32_t p = 101) {
  return testing::make_species(p, {1, 4}, {{"a", 1, 2}, {"b", 2, 1}});
}

}  // namespace

TEST_CASE("B(T)_4 of the (4,6) species has 288 elements") {
  const ExchangeMatrix b = family_matrix(4, 6);
  const auto d = find_skew_symmetrizer(b)->diag;
  std::vector<int> degrees(d.begin(), d.end());
  const auto oracle = testing::brute_force_bt_count(degrees, testing::arrows_from_matrix(b, d), 4);
  CHECK(oracle == 288);
  CHECK(enumerate_bt(*family46(), 4).size() == 288);
}

TEST_CASE("B(T) counts agree with brute force on small species") {
  const std::vector<int> degrees{1, 2, 3};
  const std::vector<ArrowSpec> arrows{{"a", 1, 2}, {"b", 2, 3}, {"c", 3, 1}, {"e", 3, 1}};
  auto s = testing::make_species(5, degrees, arrows);
  for (int m = 2; m <= 6; ++m) {
    CAPTURE(m);
    CHECK(static_cast<std::int64_t>(enumerate_bt(*s, m).size()) == testing::brute_force_bt_count(degrees, arrows, m));
  }
}

TEST_CASE("multiplication is associative and unital") {
  auto s = two_vertex_14(7);
  std::mt19937_64 rng(3);
  const Series one = Series::one(s, 5);
  for (int rep = 0; rep < 20; ++rep) {
    const Series f = testing::random_series(s, 5, 0, 2, rng, 6);
    const Series g = testing::random_series(s, 5, 0, 2, rng, 6);
    const Series h = testing::random_series(s, 5, 0, 2, rng, 6);
    CHECK((f * g) * h == f * (g * h));
    CHECK(one * f == f);
    CHECK(f * one == f);
    CHECK(f * (g + h) == f * g + f * h);
  }
}

TEST_CASE("truncation drops high degrees") {
  auto s = two_vertex_14();
  const Series a = Series::arrow(s, 3, 0), b = Series::arrow(s, 3, 1);
  CHECK((a * b).max_degree() == 2);
  CHECK((a * b * a * b).is_zero());
  CHECK((a * a).is_zero());  // not composable
}

TEST_CASE("cyclic normal form identifies rotations") {
  auto s = testing::make_species(101, {1, 1, 1}, {{"a", 1, 2}, {"b", 2, 3}, {"c", 3, 1}});
  const Series abc = testing::cycle(s, 4, {"a", "b", "c"});
  const Series bca = testing::cycle(s, 4, {"b", "c", "a"});
  CHECK(cyclic_normal_form(abc) == cyclic_normal_form(bca));
  CHECK(cyclic_normal_form(abc - bca).is_zero());
  CHECK(cyclic_normal_form(testing::cycle(s, 4, {"a", "b"})).is_zero());  // not cyclic
  CHECK(enumerate_necklaces(*s, 3).size() == 1);
}

TEST_CASE("normal form merges boundary coefficients") {
  auto s = two_vertex_14();
  Monomial m{{1, 1, 0, 0, 2}};  // x b a x^2, starting at vertex 2
  Monomial n{{3, 1, 0, 0, 0}};  // x^3 b a
  const Series f = Series::monomial(s, 4, m);
  const Series g = Series::monomial(s, 4, n);
  CHECK(cyclic_normal_form(f) == cyclic_normal_form(g));
}

TEST_CASE("cyclic derivation satisfies the product law") {
  auto s = two_vertex_14(7);
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 100; ++rep) {
    const Series f1 = testing::random_series(s, 5, 1, 2, rng, 4);
    const Series f2 = testing::random_series(s, 5, 1, 2, rng, 4);
    const Series f = testing::random_series(s, 5, 0, 1, rng, 4);
    const Series lhs = cyclic_derivation(f1 * f2, f);
    const Series rhs = cyclic_derivation(f1, f2 * f) + cyclic_derivation(f2, f * f1);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("delta is invariant under swapping factors") {
  auto s = two_vertex_14(7);
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 100; ++rep) {
    const Series f1 = testing::random_series(s, 5, 1, 2, rng, 4);
    const Series f2 = testing::random_series(s, 5, 1, 2, rng, 4);
    CHECK(cyclic_derivative(f1 * f2) == cyclic_derivative(f2 * f1));
  }
}

TEST_CASE("rotation delta equals definitional delta on every cyclic monomial") {
  auto s = two_vertex_14();
  const auto words = enumerate_bt_up_to(*s, 4);
  CHECK(words.size() == 100);
  const Series one = Series::one(s, 4);
  for (const auto& w : words) {
    const Series f = Series::monomial(s, 4, w);
    CHECK(cyclic_derivative(f) == cyclic_derivation(f, one));
  }
}

TEST_CASE("delta of a commutator vanishes") {
  auto s = two_vertex_14(7);
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const Series f = testing::random_series(s, 5, 1, 2, rng, 4);
    const Series g = testing::random_series(s, 5, 1, 2, rng, 4);
    CHECK(cyclic_derivative(f * g - g * f).is_zero());
  }
}

TEST_CASE("substitutions are algebra maps") {
  auto s = testing::make_species(7, {1, 2, 1}, {{"a", 1, 2}, {"b", 2, 3}, {"c", 3, 1}, {"e", 1, 3}});
  std::mt19937_64 rng(29);
  ArrowMap phi;
  phi.emplace(3, Series::arrow(s, 5, 3) + testing::cycle(s, 5, {"a", "b"}, 2));  // e -> e + 2ab
  for (int rep = 0; rep < 20; ++rep) {
    const Series f = testing::random_series(s, 5, 1, 2, rng, 5);
    const Series g = testing::random_series(s, 5, 1, 2, rng, 5);
    CHECK(apply_substitution(phi, f * g) == apply_substitution(phi, f) * apply_substitution(phi, g));
  }
  ArrowMap bad;
  bad.emplace(0, Series::arrow(s, 5, 1));  // a -> b is not legible
  CHECK_THROWS_AS(apply_substitution(bad, Series::arrow(s, 5, 0)), Error);
}

TEST_CASE("random potentials are deterministic and cyclic") {
  auto s = family46();
  const Series p1 = random_potential(s, 6, 42);
  const Series p2 = random_potential(s, 6, 42);
  CHECK(p1 == p2);
  CHECK_FALSE(p1 == random_potential(s, 6, 43));
  CHECK(cyclic_part(p1) == p1);
  CHECK(p1.min_degree() == 4);
  std::string warning;
  auto acyclic = testing::make_species(101, {1, 1}, {{"a", 1, 2}});
  CHECK(random_potential(acyclic, 6, 1, SupportPolicy::AllCycles, &warning).is_zero());
  CHECK_FALSE(warning.empty());
}

TEST_CASE("jacobian ideal span of a 3-cycle") {
  auto s = testing::make_species(101, {1, 1, 1}, {{"a", 1, 2}, {"b", 2, 3}, {"c", 3, 1}});
  const Series p = testing::cycle(s, 4, {"a", "b", "c"});
  // cyclic derivatives bc, ca, ab span R(P) in degree 2
  const IdealSpan span = ideal_span_truncated(p, 4);
  CHECK(span.contains(testing::cycle(s, 4, {"b", "c"})));
  CHECK(span.contains(testing::cycle(s, 4, {"a", "b", "c"})));
  CHECK_FALSE(span.contains(Series::arrow(s, 4, 0)));
  CHECK(is_2acyclic(p));
  auto s2 = testing::make_species(101, {1, 1}, {{"a", 1, 2}, {"b", 2, 1}});
  CHECK_FALSE(is_2acyclic(testing::cycle(s2, 4, {"a", "b"}) + testing::cycle(s2, 4, {"a", "b", "a", "b"})));
}

TEST_CASE("monomial validation") {
  auto s = two_vertex_14();
  CHECK_NOTHROW(validate_monomial(*s, Monomial{{0, 0, 3, 1, 0}}));
  CHECK_THROWS_AS(validate_monomial(*s, Monomial{{0, 0, 0, 0, 0}}), Error);  // a a
  CHECK_THROWS_AS(validate_monomial(*s, Monomial{{0, 0, 4, 1, 0}}), Error);  // x^4 in F_{p^4}
  CHECK_THROWS_AS(validate_monomial(*s, Monomial{{0, 2, 0}}), Error);        // no arrow 2
}
