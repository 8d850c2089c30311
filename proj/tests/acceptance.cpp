// Acceptance run: one PASS/FAIL line per primary criterion. Exit status is
// nonzero if any criterion fails.
//
// Pinned tolerances: every algebraic comparison is exact (F_p and integer
// arithmetic). Wall-clock budgets: criterion 1 < 5 s, criterion 3 < 60 s,
// criterion 7 <= 600 s.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "specpot/exchange.hpp"
#include "specpot/mutation.hpp"
#include "specpot/nondegen.hpp"
#include "specpot/series.hpp"
#include "specpot/species.hpp"
#include "support.hpp"

using namespace specpot;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kBudget1 = 5.0;
constexpr double kBudget3 = 60.0;
constexpr double kBudget7 = 600.0;

int g_failed = 0;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int n, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failed;
}

// Runs a criterion body, turning exceptions into a FAIL line.
void criterion(int n, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    report(n, ok, detail);
  } catch (const std::exception& e) {
    report(n, false, std::string("exception: ") + e.what());
  }
}

SpeciesPtr realize_minimal(const ExchangeMatrix& b, std::uint32_t p = 101) {
  return realize(b, *find_skew_symmetrizer(b), PrimeModulus(p));
}

// General skew-symmetrizable matrix: b_ij = c d_j / g, b_ji = -c d_i / g with
// g = gcd(d_i, d_j).
ExchangeMatrix random_skew_symmetrizable(std::mt19937_64& rng, int n) {
  std::vector<std::int64_t> d(n);
  for (auto& x : d) x = 1 + static_cast<std::int64_t>(rng() % 6);
  ExchangeMatrix b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const std::int64_t c = static_cast<std::int64_t>(rng() % 7) - 3;
      const std::int64_t g = std::gcd(d[i], d[j]);
      b(i, j) = c * d[j] / g;
      b(j, i) = -c * d[i] / g;
    }
  return b;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

}  // namespace

int main() {
  // 1. Matrix layer.
  criterion(1, [] {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2026);
    int checked = 0;
    bool ok = true;
    for (int rep = 0; rep < 200; ++rep) {
      const ExchangeMatrix b = random_skew_symmetrizable(rng, 4);
      ok = ok && find_skew_symmetrizer(b).has_value();
      for (int k = 0; k < 4; ++k) {
        const ExchangeMatrix m = matrix_mutate(b, k);
        ok = ok && matrix_mutate(m, k) == b && m.rows() == testing::fz_oracle(b.rows(), k);
        ++checked;
      }
    }
    for (auto [a, bb] : {std::pair<std::int64_t, std::int64_t>{4, 6}, {8, 12}, {9, 15}}) {
      const auto d = find_skew_symmetrizer(family_matrix(a, bb));
      ok = ok && d && d->diag == std::vector<std::int64_t>{1, a, 1, bb};
    }
    const double t = seconds_since(t0);
    ok = ok && t < kBudget1;
    return std::pair{ok, std::to_string(checked) + " involutions exact, family skew-symmetrizers diag(1,a,1,b), " +
                             fmt("%.3f s (< 5 s)", t)};
  });

  // 2. Realization.
  criterion(2, [] {
    int passed = 0, total = 0;
    for (auto [a, bb] : {std::pair<std::int64_t, std::int64_t>{4, 6}, {8, 12}, {9, 15}}) {
      const ExchangeMatrix b = family_matrix(a, bb);
      SpeciesPtr s = realize_minimal(b);
      ++total;
      if (verify_realization(*s, b).ok() && dimension_matrix(*s) == b) ++passed;
    }
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 20; ++rep) {
      auto [b, d] = testing::random_divisible_matrix(rng, 4, 3, 2);
      SpeciesPtr s = realize(b, SkewSymmetrizer{d}, PrimeModulus(101));
      ++total;
      if (verify_realization(*s, b).ok() && dimension_matrix(*s) == b) ++passed;
    }
    return std::pair{passed == total && total == 23,
                     std::to_string(passed) + "/" + std::to_string(total) + " realizations pass all four clauses"};
  });

  // 3. Cyclic calculus.
  criterion(3, [] {
    const auto t0 = Clock::now();
    auto s = testing::make_species(101, {1, 4}, {{"a", 1, 2}, {"b", 2, 1}});
    std::mt19937_64 rng(3);
    int law = 0, swap = 0, rot = 0;
    for (int rep = 0; rep < 100; ++rep) {
      const Series f1 = testing::random_series(s, 5, 1, 2, rng, 4);
      const Series f2 = testing::random_series(s, 5, 1, 2, rng, 4);
      const Series f = testing::random_series(s, 5, 0, 2, rng, 4);
      if (cyclic_derivation(f1 * f2, f) == cyclic_derivation(f1, f2 * f) + cyclic_derivation(f2, f * f1)) ++law;
    }
    for (int rep = 0; rep < 100; ++rep) {
      const Series f1 = testing::random_series(s, 5, 1, 2, rng, 4);
      const Series f2 = testing::random_series(s, 5, 1, 2, rng, 4);
      if (cyclic_derivative(f1 * f2) == cyclic_derivative(f2 * f1)) ++swap;
    }
    const auto words = enumerate_bt_up_to(*s, 4);
    const Series one = Series::one(s, 4);
    for (const auto& w : words) {
      const Series f = Series::monomial(s, 4, w);
      if (cyclic_derivative(f) == cyclic_derivation(f, one)) ++rot;
    }
    const double t = seconds_since(t0);
    const bool ok = law == 100 && swap == 100 && rot == static_cast<int>(words.size()) && !words.empty() && t < kBudget3;
    return std::pair{ok, "product law " + std::to_string(law) + "/100, swap " + std::to_string(swap) +
                             "/100, rotation vs definition " + std::to_string(rot) + "/" +
                             std::to_string(words.size()) + ", " + fmt("%.3f s (< 60 s)", t)};
  });

  // 4. Basis counting.
  criterion(4, [] {
    const ExchangeMatrix b = family_matrix(4, 6);
    const auto d = find_skew_symmetrizer(b)->diag;
    const std::vector<int> degrees(d.begin(), d.end());
    const auto oracle = testing::brute_force_bt_count(degrees, testing::arrows_from_matrix(b, d), 4);
    const auto got = enumerate_bt(*realize_minimal(b), 4).size();
    return std::pair{oracle == 288 && got == 288,
                     "|B(T)_4| = " + std::to_string(got) + ", brute force " + std::to_string(oracle)};
  });

  // 5. Quiver mutation against the hand-derived fixture.
  criterion(5, [] {
    std::ifstream in(SPECPOT_FIXTURE_DIR "/quiver_mutation.json");
    std::stringstream ss;
    ss << in.rdbuf();
    const json fx = json::parse(ss.str());
    int matched = 0, total = 0;
    for (const auto& c : fx.at("cases")) {
      ++total;
      std::vector<testing::ArrowSpec> arrows;
      for (const auto& a : c.at("arrows")) arrows.push_back({a[0].get<std::string>(), a[1].get<int>(), a[2].get<int>()});
      auto s = testing::make_species(c.at("prime"), c.at("degrees").get<std::vector<int>>(), arrows);
      const int trunc = c.at("trunc");
      auto words = [&](const SpeciesPtr& sp, const json& terms) {
        Series f(sp, trunc);
        for (const auto& t : terms) f.add(testing::path(*sp, t[0].get<std::vector<std::string>>()), t[1].get<Fp>());
        return cyclic_normal_form(f);
      };
      const MutationResult r = mutate(words(s, c.at("potential")), c.at("k").get<int>() - 1);
      std::set<std::tuple<std::string, int, int>> got, want;
      for (const auto& a : r.species->arrows()) got.insert({a.id, a.source + 1, a.target + 1});
      for (const auto& a : c.at("reduced_arrows")) want.insert({a[0].get<std::string>(), a[1].get<int>(), a[2].get<int>()});
      const bool ok = cyclic_normal_form(r.premutation.potential) ==
                          words(r.premutation.bimodule.species, c.at("premutation")) &&
                      r.reduction.trivial_rank == c.at("trivial_rank").get<int>() && got == want &&
                      r.potential == words(r.species, c.at("reduced")) &&
                      r.matrix.rows() == c.at("matrix").get<std::vector<std::vector<std::int64_t>>>() &&
                      r.two_acyclic == c.at("two_acyclic").get<bool>();
      if (ok) ++matched;
    }
    return std::pair{matched == total && total >= 1,
                     std::to_string(matched) + "/" + std::to_string(total) + " fixture cases match term by term"};
  });

  // 6. Matrix compatibility.
  criterion(6, [] {
    struct Shape {
      std::string name;
      std::vector<Series> potentials;
    };
    std::vector<Shape> shapes;
    {
      Shape sh{"family(4,6)", {}};
      auto s = realize_minimal(family_matrix(4, 6));
      for (std::uint64_t seed = 0; seed < 3; ++seed) sh.potentials.push_back(random_potential(s, 6, seed));
      shapes.push_back(std::move(sh));
    }
    {
      Shape sh{"quiver 3-cycle", {}};
      auto s = testing::make_species(101, {1, 1, 1}, {{"a", 1, 2}, {"b", 2, 3}, {"c", 3, 1}, {"e", 1, 2}, {"f", 2, 3}});
      for (std::uint64_t seed = 0; seed < 3; ++seed) sh.potentials.push_back(random_potential(s, 6, seed));
      shapes.push_back(std::move(sh));
    }
    {
      Shape sh{"random valued 4x4", {}};
      std::mt19937_64 rng(606);
      while (sh.potentials.size() < 8) {
        auto [b, d] = testing::random_divisible_matrix(rng, 4, 3, 2);
        auto s = realize(b, SkewSymmetrizer{d}, PrimeModulus(101));
        if (enumerate_bt_up_to(*s, 5).empty()) continue;
        sh.potentials.push_back(random_potential(s, 5, rng()));
      }
      shapes.push_back(std::move(sh));
    }
    int tested = 0, compatible = 0, doubles = 0, restored = 0, shapes_used = 0;
    for (const auto& sh : shapes) {
      int here = 0;
      for (const Series& p : sh.potentials) {
        const ExchangeMatrix b = dimension_matrix(p.species());
        for (int k = 0; k < p.species().vertex_count(); ++k) {
          const MutationResult r = mutate(p, k);
          if (!r.two_acyclic) continue;
          ++tested;
          ++here;
          if (r.matrix == matrix_mutate(b, k) && dimension_matrix(*r.species) == r.matrix) ++compatible;
          const MutationResult back = mutate(r.potential, k);
          if (back.two_acyclic) {
            ++doubles;
            if (back.matrix == b) ++restored;
          }
        }
      }
      if (here > 0) ++shapes_used;
    }
    const bool ok = tested >= 50 && compatible == tested && shapes_used >= 3 && doubles > 0 && restored == doubles;
    return std::pair{ok, std::to_string(compatible) + "/" + std::to_string(tested) + " 2-acyclic mutations follow the FZ rule across " +
                             std::to_string(shapes_used) + " shapes; double mutation restored " +
                             std::to_string(restored) + "/" + std::to_string(doubles)};
  });

  // 7. Non-degenerate potential for the (4,6) species.
  criterion(7, [] {
    const auto t0 = Clock::now();
    SearchParams params;
    params.trunc = 6;
    params.max_len = 4;
    params.trials = 20;
    params.seed = 0;
    const SearchResult r = search_nondegenerate(realize_minimal(family_matrix(4, 6), 101), params);
    const double t = seconds_since(t0);
    bool all_passed = r.found();
    for (const auto& rep : r.certificate) all_passed = all_passed && rep.passed();
    const std::size_t expected = enumerate_sequences(4, 4).size();
    const bool ok = all_passed && r.certificate.size() == expected && r.trials.size() <= 20 && t <= kBudget7;
    return std::pair{ok, std::string(r.found() ? "certificate" : "no certificate") + " after " +
                             std::to_string(r.trials.size()) + " trial(s), " + std::to_string(r.certificate.size()) +
                             " sequences of length <= 4 all 2-acyclic, " + fmt("%.2f s (<= 600 s)", t)};
  });

  // 8. Rigidity machinery at N = 6.
  criterion(8, [] {
    const int N = 6;
    bool ok = true;
    std::string notes;
    // acyclic species are rigid for every N <= 8
    auto a3 = testing::make_species(101, {1, 1, 1}, {{"a", 1, 2}, {"b", 2, 3}});
    auto valued = realize_minimal(ExchangeMatrix{{0, 2, 0}, {-1, 0, 1}, {0, -2, 0}});
    for (int n = 1; n <= 8; ++n)
      for (const auto& s : {a3, valued}) ok = ok && deformation_dim_truncated(Series(s, n), n).rigid();
    // P = 0 on a cyclic species is not rigid
    auto cyc = testing::make_species(101, {1, 1, 1}, {{"a", 1, 2}, {"b", 2, 3}, {"c", 3, 1}});
    ok = ok && !deformation_dim_truncated(Series(cyc, N), N).rigid();

    std::vector<Series> cases{testing::cycle(cyc, N, {"a", "b", "c"}), Series(a3, N),
                              random_potential(realize_minimal(family_matrix(4, 6)), N, 0),
                              random_potential(cyc, N, 4)};
    int transport = 0, transport_ok = 0, subst = 0, subst_ok = 0;
    for (const Series& p : cases) {
      for (int k = 0; k < p.species().vertex_count(); ++k) {
        const RigidityTransport t = rigidity_transport_check(p, k, N);
        ++transport;
        if (t.agree()) ++transport_ok;
      }
      const bool before = deformation_dim_truncated(p, N).rigid();
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const ArrowMap phi = random_unitriangular(p.species_ptr(), N, seed);
        const Series q = cyclic_normal_form(apply_substitution(phi, p));
        ++subst;
        if (deformation_dim_truncated(q, N).rigid() == before) ++subst_ok;
      }
    }
    ok = ok && transport_ok == transport && subst_ok == subst;
    return std::pair{ok, "acyclic rigid for N <= 8, P = 0 on a 3-cycle not rigid, mutation agreement " +
                             std::to_string(transport_ok) + "/" + std::to_string(transport) +
                             ", unitriangular agreement " + std::to_string(subst_ok) + "/" + std::to_string(subst) +
                             " (N = 6)"};
  });

  // 9. Acyclic A_2 and A_3: every potential and every sequence passes.
  criterion(9, [] {
    const int N = 6, max_len = 6;
    std::vector<SpeciesPtr> species{
        testing::make_species(101, {1, 1}, {{"a", 1, 2}}),
        testing::make_species(101, {1, 1, 1}, {{"a", 1, 2}, {"b", 2, 3}}),
        testing::make_species(101, {1, 1, 1}, {{"a", 2, 1}, {"b", 3, 2}}),
        testing::make_species(101, {1, 1, 1}, {{"a", 2, 1}, {"b", 2, 3}}),
        testing::make_species(101, {1, 1, 1}, {{"a", 1, 2}, {"b", 3, 2}}),
    };
    int sequences = 0, passed = 0;
    bool only_zero = true;
    for (const auto& s : species) {
      // F_S(M)_cyc = 0, so the zero potential is the only potential; a random
      // draw must agree.
      only_zero = only_zero && enumerate_bt_up_to(*s, N).empty() && random_potential(s, N, 1).is_zero();
      for (const auto& seq : enumerate_sequences(s->vertex_count(), max_len)) {
        ++sequences;
        if (check_sequence(Series(s, N), seq).passed()) ++passed;
      }
    }
    return std::pair{only_zero && passed == sequences,
                     std::to_string(passed) + "/" + std::to_string(sequences) +
                         " sequences of length <= 6 pass on the A_2 and four A_3 orientations"};
  });

  return g_failed == 0 ? 0 : 1;
}
