// Shared fixtures and independent oracles for the test binaries. Nothing here
// calls into the code it is used to check.

#ifndef SPECPOT_TESTS_SUPPORT_HPP
#define SPECPOT_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "specpot/exchange.hpp"
#include "specpot/fields.hpp"
#include "specpot/mutation.hpp"
#include "specpot/nondegen.hpp"
#include "specpot/series.hpp"
#include "specpot/species.hpp"

namespace testing {

using namespace specpot;

struct ArrowSpec {
  std::string id;
  int source;  // 1-based
  int target;
};

// Species with the given field degrees and arrows, built without realize().
inline SpeciesPtr make_species(std::uint32_t p, const std::vector<int>& degrees, const std::vector<ArrowSpec>& arrows) {
  const PrimeModulus pm(p);
  std::vector<FieldPtr> fields;
  for (int d : degrees) fields.push_back(make_extension(pm, d));
  std::vector<Arrow> as;
  for (const auto& a : arrows) as.push_back({a.id, a.source - 1, a.target - 1, 1, ArrowKind::Original});
  return std::make_shared<const Species>(pm, std::move(fields), std::move(as));
}

inline int arrow_index(const Species& s, const std::string& id) {
  auto a = s.find_arrow(id);
  if (!a) throw std::runtime_error("no arrow " + id);
  return *a;
}

// Degree-m monomial along the named arrows with every boundary coefficient 1.
inline Monomial path(const Species& s, const std::vector<std::string>& ids) {
  Monomial m;
  for (const auto& id : ids) {
    m.w.push_back(0);
    m.w.push_back(arrow_index(s, id));
  }
  m.w.push_back(0);
  return m;
}

inline Series cycle(const SpeciesPtr& s, int trunc, const std::vector<std::string>& ids, Fp c = 1) {
  return Series::monomial(s, trunc, path(*s, ids), c);
}

// Fomin-Zelevinsky mutation written out from the textbook rule.
inline std::vector<std::vector<std::int64_t>> fz_oracle(const std::vector<std::vector<std::int64_t>>& b, int k) {
  const int n = static_cast<int>(b.size());
  auto out = b;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k) {
        out[i][j] = -b[i][j];
      } else {
        const std::int64_t bik = b[i][k], bkj = b[k][j];
        if (bik > 0 && bkj > 0) out[i][j] = b[i][j] + bik * bkj;
        if (bik < 0 && bkj < 0) out[i][j] = b[i][j] - bik * bkj;
      }
    }
  return out;
}

// b_ij = d_j m_ij with m skew-symmetric: skew-symmetrizable by D and d_j | b_ij
// by construction.
inline std::pair<ExchangeMatrix, std::vector<std::int64_t>> random_divisible_matrix(std::mt19937_64& rng, int n,
                                                                                     int max_d, int max_m) {
  std::vector<std::int64_t> d(n);
  for (auto& x : d) x = 1 + static_cast<std::int64_t>(rng() % max_d);
  ExchangeMatrix b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const std::int64_t m = static_cast<std::int64_t>(rng() % (2 * max_m + 1)) - max_m;
      b(i, j) = d[j] * m;
      b(j, i) = -d[i] * m;
    }
  return {b, d};
}

// Random element of F_S(M) supported on monomials of degree lo..hi.
inline Series random_series(const SpeciesPtr& s, int trunc, int lo, int hi, std::mt19937_64& rng, int terms) {
  std::vector<Monomial> pool;
  for (int m = lo; m <= hi; ++m) {
    if (m == 0) {
      for (int v = 0; v < s->vertex_count(); ++v)
        for (int t = 0; t < s->degree(v); ++t) pool.push_back(Monomial::unit(v, t));
    } else {
      auto ms = enumerate_monomials(*s, m);
      pool.insert(pool.end(), ms.begin(), ms.end());
    }
  }
  Series f(s, trunc);
  if (pool.empty()) return f;
  const Fp p = s->prime().value();
  for (int r = 0; r < terms; ++r) f.add(pool[rng() % pool.size()], static_cast<Fp>(rng() % p));
  return f;
}

// Brute-force count of B(T)_m: every length-m tuple of arrows is tried, the
// closed composable ones are kept, and each contributes the product of the
// field degrees at its m+1 coefficient slots.
inline std::int64_t brute_force_bt_count(const std::vector<int>& degrees, const std::vector<ArrowSpec>& arrows, int m) {
  const int na = static_cast<int>(arrows.size());
  std::vector<int> idx(m, 0);
  std::int64_t total = 0;
  while (true) {
    bool ok = arrows[idx[m - 1]].target == arrows[idx[0]].source;
    for (int r = 0; ok && r + 1 < m; ++r) ok = arrows[idx[r]].target == arrows[idx[r + 1]].source;
    if (ok) {
      std::int64_t c = degrees[arrows[idx[0]].source - 1];  // t_1
      for (int r = 0; r < m; ++r) c *= degrees[arrows[idx[r]].target - 1];  // t_2 .. t_{m+1}
      total += c;
    }
    int pos = 0;
    while (pos < m && ++idx[pos] == na) idx[pos++] = 0;
    if (pos == m) break;
  }
  return total;
}

// Arrows of the species realizing b with skew-symmetrizer d, read off the
// matrix directly: b_ij / d_j arrows i -> j when b_ij > 0.
inline std::vector<ArrowSpec> arrows_from_matrix(const ExchangeMatrix& b, const std::vector<std::int64_t>& d) {
  std::vector<ArrowSpec> out;
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      for (std::int64_t c = 0; b(i, j) > 0 && c < b(i, j) / d[j]; ++c)
        out.push_back({"x" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(c), i + 1, j + 1});
  return out;
}

// Smallest monic irreducible of degree d over F_p by trial division against
// every monic polynomial of degree 1..d/2. Candidates ordered on
// (c_{d-1}, ..., c_0). Only meant for small d.
inline std::vector<std::uint32_t> smallest_irreducible_oracle(std::uint32_t p, int d) {
  auto divides = [p](std::vector<std::int64_t> f, const std::vector<std::int64_t>& g) {
    // g monic; f, g lowest degree first
    const int dg = static_cast<int>(g.size()) - 1;
    for (int top = static_cast<int>(f.size()) - 1; top >= dg; --top) {
      const std::int64_t c = ((f[top] % p) + p) % p;
      if (c == 0) continue;
      for (int i = 0; i <= dg; ++i) f[top - dg + i] = ((f[top - dg + i] - c * g[i]) % p + p) % p;
    }
    for (int i = 0; i < dg; ++i)
      if (f[i] % p != 0) return false;
    return true;
  };
  auto next = [p](std::vector<std::int64_t>& c) {  // c holds c_0..c_{k-1}; increments c_0 fastest
    for (auto& x : c) {
      if (++x < static_cast<std::int64_t>(p)) return true;
      x = 0;
    }
    return false;
  };
  std::vector<std::int64_t> lower(d, 0);
  do {
    std::vector<std::int64_t> f = lower;
    f.push_back(1);
    bool irreducible = true;
    for (int e = 1; irreducible && e <= d / 2; ++e) {
      std::vector<std::int64_t> g(e, 0);
      do {
        std::vector<std::int64_t> gg = g;
        gg.push_back(1);
        if (divides(f, gg)) {
          irreducible = false;
          break;
        }
      } while (next(g));
    }
    if (irreducible) return {lower.begin(), lower.end()};
  } while (next(lower));
  return {};
}

}  // namespace testing

#endif  // SPECPOT_TESTS_SUPPORT_HPP
