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
#include "specpot/mutation.hpp"

#include <map>
#include <optional>
#include <tuple>

#include "specpot/error.hpp"
#include "specpot/linalg.hpp"

namespace specpot {

DualCoefficientTable dual_coefficient_table(const ExtensionField& field) {
  const int d = field.degree();
  const auto& p = field.prime();
  FpMatrix gram(p, d, d);
  const auto g = field.unit_pairing_gram();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram(i, j) = g[static_cast<std::size_t>(i) * d + j];
  auto ginv = inverse(gram);
  require(ginv.has_value(), ErrorCode::Internal, "unit pairing is degenerate");

  DualCoefficientTable tab;
  tab.degree = d;
  // sum_q U_{sq} G_{q s'} = [s == s'], so U = G^{-1}
  tab.u.assign(d, std::vector<Fp>(d, 0));
  for (int s = 0; s < d; ++s)
    for (int q = 0; q < d; ++q) tab.u[s][q] = (*ginv)(s, q);

  tab.w.assign(static_cast<std::size_t>(d) * d, 0);
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t) {
      const auto ts = field.basis_product(t, s);
      const auto uu = field.mul(tab.u[s], tab.u[t]);
      for (int r = 0; r < d; ++r) {
        if (!ts[r]) continue;
        for (int q = 0; q < d; ++q)
          if (uu[q]) {
            auto& cell = tab.w[static_cast<std::size_t>(r) * d + q];
            cell = p.add(cell, p.mul(ts[r], uu[q]));
          }
      }
    }
  return tab;
}

std::int64_t bimodule_dimension(const Species& s) {
  std::int64_t dim = 0;
  for (const auto& a : s.arrows()) dim += static_cast<std::int64_t>(s.degree(a.source)) * s.degree(a.target);
  return dim;
}

namespace {

void renumber_copies(std::vector<Arrow>& arrows) {
  std::map<std::pair<int, int>, int> seen;
  for (auto& a : arrows) a.copy = seen[{a.source, a.target}]++;
}

void make_ids_unique(std::vector<Arrow>& arrows) {
  std::map<std::string, int> count;
  for (const auto& a : arrows) ++count[a.id];
  for (auto& a : arrows)
    while (count[a.id] > 1) {
      --count[a.id];
      a.id += "'";
      ++count[a.id];
    }
}

struct Layout {
  MutatedBimodule bimodule;
  std::vector<int> original;                      // old arrow -> new, -1 if incident to k
  std::map<std::tuple<int, int, int>, int> comp;  // (b, a, t) -> new
  std::map<int, int> dual_right;                  // a leaving k -> a*
  std::map<int, int> dual_left;                   // b entering k -> *b
};

Layout build_layout(const Species& s, int k) {
  const int n = s.vertex_count();
  require(k >= 0 && k < n, ErrorCode::InvalidArgument,
          "mutation index " + std::to_string(k + 1) + " out of range 1.." + std::to_string(n));
  for (int b : s.arrows_to(k)) {
    const int i = s.arrow(b).source;
    require(s.multiplicity(k, i) == 0, ErrorCode::Precondition,
            "vertex " + std::to_string(k + 1) + " lies on a 2-cycle with vertex " + std::to_string(i + 1));
  }
  Layout lay;
  lay.original.assign(s.arrow_count(), -1);
  std::vector<Arrow> arrows;
  auto push = [&](Arrow a, int orig) {
    arrows.push_back(std::move(a));
    lay.bimodule.original_of.push_back(orig);
    return static_cast<int>(arrows.size()) - 1;
  };
  for (int a = 0; a < s.arrow_count(); ++a) {
    const auto& ar = s.arrow(a);
    if (ar.source == k || ar.target == k) continue;
    lay.original[a] = push(ar, a);
  }
  for (int b : s.arrows_to(k))
    for (int a : s.arrows_from(k))
      for (int t = 0; t < s.degree(k); ++t) {
        Arrow c{"[" + s.arrow(b).id + "|" + std::to_string(t) + "|" + s.arrow(a).id + "]", s.arrow(b).source,
                s.arrow(a).target, 0, ArrowKind::Composite};
        lay.comp[{b, a, t}] = push(std::move(c), -1);
      }
  for (int a : s.arrows_from(k))
    lay.dual_right[a] = push(Arrow{s.arrow(a).id + "*", s.arrow(a).target, k, 0, ArrowKind::DualRight}, -1);
  for (int b : s.arrows_to(k))
    lay.dual_left[b] = push(Arrow{"*" + s.arrow(b).id, k, s.arrow(b).source, 0, ArrowKind::DualLeft}, -1);
  renumber_copies(arrows);
  make_ids_unique(arrows);
  lay.bimodule.k = k;
  lay.bimodule.species = std::make_shared<const Species>(s.prime(), s.fields(), std::move(arrows));
  return lay;
}

}  // namespace

MutatedBimodule premutate_bimodule(const Species& s, int k) { return build_layout(s, k).bimodule; }

PremutationResult premutate_potential(const Series& potential, int k) {
  const Species& s = potential.species();
  for (const auto& [m, c] : potential.terms())
    require(m.degree() >= 2 && is_cyclic(s, m), ErrorCode::InvalidArgument,
            "not a potential: term of degree " + std::to_string(m.degree()) +
                (m.degree() >= 1 && !is_cyclic(s, m) ? " is not cyclic" : " is below 2"));
  Layout lay = build_layout(s, k);
  const SpeciesPtr& ns = lay.bimodule.species;
  const int N = potential.trunc();
  Series out(ns, N);

  // [P]: start each cycle outside k, then fuse b t a through k.
  const Series canon = cyclic_normal_form(potential);
  for (const auto& [m, c] : canon.terms()) {
    const auto& w = m.w;
    const std::size_t len = w.size() - 1;
    std::size_t start = len;
    for (std::size_t q = 0; q < len; q += 2)
      if (s.arrow(w[q + 1]).source != k) {
        start = q;
        break;
      }
    if (start == len) fail(ErrorCode::Precondition, "cycle lies entirely at vertex " + std::to_string(k + 1));
    std::vector<std::int32_t> rot(len);
    for (std::size_t q = 0; q < len; ++q) rot[q] = w[(start + q) % len];
    Monomial nm;
    for (std::size_t q = 0; q < len; q += 2) {
      const int a = rot[q + 1];
      nm.w.push_back(rot[q]);
      if (s.arrow(a).target == k) {
        nm.w.push_back(lay.comp.at({a, rot[q + 3], rot[q + 2]}));
        q += 2;
      } else {
        require(lay.original[a] >= 0, ErrorCode::Internal, "unfused arrow at the mutation vertex");
        nm.w.push_back(lay.original[a]);
      }
    }
    nm.w.push_back(0);
    out.add(std::move(nm), c);
  }

  // sum [b (ts) a] a* u_s u_t *b
  const auto tab = dual_coefficient_table(s.field(k));
  for (int b : s.arrows_to(k))
    for (int a : s.arrows_from(k))
      for (int r = 0; r < tab.degree; ++r)
        for (int q = 0; q < tab.degree; ++q) {
          const Fp c = tab.correction(r, q);
          if (!c) continue;
          out.add(Monomial{{0, lay.comp.at({b, a, r}), 0, lay.dual_right.at(a), q, lay.dual_left.at(b), 0}}, c);
        }
  return PremutationResult{std::move(lay.bimodule), std::move(out)};
}

// ---------------------------------------------------------------------------
// Splitting

namespace {

// D_i (x) D_j with basis x^p (x) y^q at index p * dj + q.
class PairRing {
 public:
  using Elem = std::vector<Fp>;

  PairRing(const ExtensionField& fi, const ExtensionField& fj)
      : fi_(fi), fj_(fj), di_(fi.degree()), dj_(fj.degree()), p_(fi.prime()) {}

  int dim() const { return di_ * dj_; }
  int dj() const { return dj_; }
  Elem zero() const { return Elem(dim(), 0); }
  Elem one() const {
    Elem e = zero();
    e[0] = 1;
    return e;
  }
  static bool is_zero(const Elem& a) {
    for (auto v : a)
      if (v) return false;
    return true;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    Elem out = zero();
    for (int i = 0; i < dim(); ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < dim(); ++j) {
        if (!b[j]) continue;
        const Fp c = p_.mul(a[i], b[j]);
        const auto px = fi_.basis_product(i / dj_, j / dj_);
        const auto qy = fj_.basis_product(i % dj_, j % dj_);
        for (int pp = 0; pp < di_; ++pp) {
          if (!px[pp]) continue;
          const Fp cp = p_.mul(c, px[pp]);
          for (int qq = 0; qq < dj_; ++qq)
            if (qy[qq]) out[pp * dj_ + qq] = p_.add(out[pp * dj_ + qq], p_.mul(cp, qy[qq]));
        }
      }
    }
    return out;
  }

  std::optional<Elem> inverse(const Elem& a) const {
    FpMatrix m(p_, dim(), dim());
    for (int c = 0; c < dim(); ++c) {
      Elem e = zero();
      e[c] = 1;
      const Elem col = mul(a, e);
      for (int r = 0; r < dim(); ++r) m(r, c) = col[r];
    }
    auto inv = specpot::inverse(m);
    if (!inv) return std::nullopt;
    return inv->apply(one());
  }

  Elem axpy(const Elem& y, const Elem& f, const Elem& x) const {  // y - f x
    Elem fx = mul(f, x);
    Elem out = y;
    for (int i = 0; i < dim(); ++i) out[i] = p_.sub(out[i], fx[i]);
    return out;
  }

 private:
  const ExtensionField& fi_;
  const ExtensionField& fj_;
  int di_, dj_;
  PrimeModulus p_;
};

using RMatrix = std::vector<std::vector<PairRing::Elem>>;

RMatrix r_identity(const PairRing& R, int n) {
  RMatrix m(n, std::vector<PairRing::Elem>(n, R.zero()));
  for (int i = 0; i < n; ++i) m[i][i] = R.one();
  return m;
}

struct PairPlan {
  std::vector<std::pair<int, int>> pivots;  // (alpha slot, beta slot)
  RMatrix left, right;                      // left G right = unit form on pivots
  bool degenerate = false;
};

// Unit-pivot elimination of the degree-2 pairing G over D_i (x) D_j.
PairPlan eliminate(const PairRing& R, RMatrix g) {
  const int n = static_cast<int>(g.size());
  const int np = n ? static_cast<int>(g[0].size()) : 0;
  PairPlan plan;
  plan.left = r_identity(R, n);
  plan.right = r_identity(R, np);
  std::vector<bool> row_used(n, false), col_used(np, false);
  for (;;) {
    int pa = -1, pb = -1;
    PairRing::Elem inv;
    for (int a = 0; a < n && pa < 0; ++a) {
      if (row_used[a]) continue;
      for (int b = 0; b < np; ++b) {
        if (col_used[b] || PairRing::is_zero(g[a][b])) continue;
        if (auto v = R.inverse(g[a][b])) {
          pa = a;
          pb = b;
          inv = std::move(*v);
          break;
        }
      }
    }
    if (pa < 0) break;
    for (int b = 0; b < np; ++b) g[pa][b] = R.mul(inv, g[pa][b]);
    for (int l = 0; l < n; ++l) plan.left[pa][l] = R.mul(inv, plan.left[pa][l]);
    for (int x = 0; x < n; ++x) {
      if (x == pa || PairRing::is_zero(g[x][pb])) continue;
      const auto f = g[x][pb];
      for (int b = 0; b < np; ++b) g[x][b] = R.axpy(g[x][b], f, g[pa][b]);
      for (int l = 0; l < n; ++l) plan.left[x][l] = R.axpy(plan.left[x][l], f, plan.left[pa][l]);
    }
    for (int y = 0; y < np; ++y) {
      if (y == pb || PairRing::is_zero(g[pa][y])) continue;
      const auto f = g[pa][y];
      for (int x = 0; x < n; ++x) g[x][y] = R.axpy(g[x][y], f, g[x][pb]);
      for (int l = 0; l < np; ++l) plan.right[l][y] = R.axpy(plan.right[l][y], f, plan.right[l][pb]);
    }
    row_used[pa] = col_used[pb] = true;
    plan.pivots.emplace_back(pa, pb);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < np; ++b)
      if (!row_used[a] && !col_used[b] && !PairRing::is_zero(g[a][b])) plan.degenerate = true;
  return plan;
}

bool is_identity(const RMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      const auto& e = m[i][j];
      for (std::size_t c = 0; c < e.size(); ++c)
        if (e[c] != ((i == j && c == 0) ? 1u : 0u)) return false;
    }
  return true;
}

// The word after position r of a necklace, closing with t_r:
// t_{r+1} a_{r+1} ... a_{r-1} t_r.
Monomial complement_word(const Monomial& m, int r) {
  const int d = m.degree();
  Monomial out;
  out.w.reserve(2 * static_cast<std::size_t>(d) - 1);
  for (int q = 1; q < d; ++q) {
    const int pos = (r + q) % d;
    out.w.push_back(m.coeff(pos));
    out.w.push_back(m.arrow(pos));
  }
  out.w.push_back(m.coeff(r));
  return out;
}

}  // namespace

SplitResult split(const Series& potential, const SplitOptions& options) {
  const SpeciesPtr& sp = potential.species_ptr();
  const Species& s = *sp;
  const int N = potential.trunc();
  const auto& pm = s.prime();
  Series current = cyclic_normal_form(potential);

  SplitResult res{nullptr, Series(sp, N), Series(sp, N), Series(sp, N), 0, false, 0, {}, {}};
  std::vector<int> partner(s.arrow_count(), -1);  // trivial arrow -> its pair
  std::vector<bool> is_alpha(s.arrow_count(), false);

  // Degree-2 pairing, one vertex pair at a time.
  ArrowMap phi0;
  for (int i = 0; i < s.vertex_count(); ++i)
    for (int j = i + 1; j < s.vertex_count(); ++j) {
      std::vector<int> alphas, betas;
      for (int a : s.arrows_from(i))
        if (s.arrow(a).target == j) alphas.push_back(a);
      for (int b : s.arrows_from(j))
        if (s.arrow(b).target == i) betas.push_back(b);
      if (alphas.empty() || betas.empty()) continue;
      PairRing R(s.field(i), s.field(j));
      std::map<int, int> slot;
      for (std::size_t x = 0; x < alphas.size(); ++x) slot[alphas[x]] = static_cast<int>(x);
      for (std::size_t x = 0; x < betas.size(); ++x) slot[betas[x]] = static_cast<int>(x);
      RMatrix g(alphas.size(), std::vector<PairRing::Elem>(betas.size(), R.zero()));
      bool any = false;
      for (const auto& [m, c] : current.terms()) {
        if (m.degree() != 2) continue;
        const int x = m.arrow(0), y = m.arrow(1);
        const int sx = s.arrow(x).source, tx = s.arrow(x).target;
        if (!((sx == i && tx == j) || (sx == j && tx == i))) continue;
        const bool x_alpha = sx == i;
        const int al = x_alpha ? x : y, be = x_alpha ? y : x;
        const int pp = x_alpha ? m.coeff(0) : m.coeff(1);
        const int qq = x_alpha ? m.coeff(1) : m.coeff(0);
        auto& cell = g[slot[al]][slot[be]][pp * R.dj() + qq];
        cell = pm.add(cell, c);
        any = true;
      }
      if (!any) continue;
      PairPlan plan = eliminate(R, std::move(g));
      res.degenerate_block = res.degenerate_block || plan.degenerate;
      for (auto [pa, pb] : plan.pivots) {
        partner[alphas[pa]] = betas[pb];
        partner[betas[pb]] = alphas[pa];
        is_alpha[alphas[pa]] = true;
        ++res.trivial_rank;
      }
      if (is_identity(plan.left) && is_identity(plan.right)) continue;
      // alpha_a -> sum_l left[l][a] alpha_l, beta_b -> sum_m right[b][m] beta_m
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        Series img(sp, N);
        for (std::size_t l = 0; l < alphas.size(); ++l) {
          const auto& e = plan.left[l][a];
          for (int c = 0; c < R.dim(); ++c)
            if (e[c]) img.add(Monomial{{c / R.dj(), alphas[l], c % R.dj()}}, e[c]);
        }
        phi0.emplace(alphas[a], std::move(img));
      }
      for (std::size_t b = 0; b < betas.size(); ++b) {
        Series img(sp, N);
        for (std::size_t m = 0; m < betas.size(); ++m) {
          const auto& e = plan.right[b][m];
          for (int c = 0; c < R.dim(); ++c)
            if (e[c]) img.add(Monomial{{c % R.dj(), betas[m], c / R.dj()}}, e[c]);
        }
        phi0.emplace(betas[b], std::move(img));
      }
    }

  if (!phi0.empty()) current = cyclic_normal_form(apply_substitution(phi0, current));
  if (options.track_substitution) res.substitution = phi0;

  auto is_pair_term = [&](const Monomial& m) {
    return m.degree() == 2 && m.coeff(0) == 0 && m.coeff(1) == 0 && partner[m.arrow(0)] == m.arrow(1);
  };

  // Push every term touching a trivial arrow past the truncation.
  for (int round = 0; round < N; ++round) {
    std::map<int, Series> u, v;  // keyed by the arrow to be shifted
    for (const auto& [m, c] : current.terms()) {
      if (is_pair_term(m)) continue;
      int hit = -1;
      for (int r = 0; r < m.degree() && hit < 0; ++r)
        if (partner[m.arrow(r)] >= 0 && is_alpha[m.arrow(r)]) hit = r;
      bool via_alpha = hit >= 0;
      for (int r = 0; r < m.degree() && hit < 0; ++r)
        if (partner[m.arrow(r)] >= 0) hit = r;
      if (hit < 0) continue;
      require(m.degree() >= 3, ErrorCode::Internal, "stray degree-2 term on a trivial arrow");
      // alpha w -> shift beta by w; w beta -> shift alpha by w
      const int target = partner[m.arrow(hit)];
      auto& bucket = via_alpha ? u : v;
      auto it = bucket.try_emplace(target, sp, N).first;
      it->second.add(complement_word(m, hit), c);
    }
    if (u.empty() && v.empty()) break;
    ArrowMap phi;
    for (auto* bucket : {&u, &v})
      for (auto& [a, w] : *bucket) {
        if (w.is_zero()) continue;
        phi.emplace(a, Series::arrow(sp, N, a) - w);
      }
    if (phi.empty()) break;
    ++res.rounds;
    current = cyclic_normal_form(apply_substitution(phi, current));
    if (options.track_substitution) {
      ArrowMap composed;
      for (int a = 0; a < s.arrow_count(); ++a) {
        auto it = res.substitution.find(a);
        const Series prev = it != res.substitution.end() ? it->second : Series::arrow(sp, N, a);
        Series next = apply_substitution(phi, prev);
        if (!(next == Series::arrow(sp, N, a))) composed.emplace(a, std::move(next));
      }
      res.substitution = std::move(composed);
    }
  }

  res.transformed = current;
  Series rest(sp, N);
  for (const auto& [m, c] : current.terms()) {
    if (is_pair_term(m)) {
      res.trivial.add(m, c);
      continue;
    }
    for (int r = 0; r < m.degree(); ++r)
      require(partner[m.arrow(r)] < 0, ErrorCode::Internal, "reduction did not converge below the truncation");
    rest.add(m, c);
  }

  std::vector<Arrow> kept_arrows;
  res.kept.assign(s.arrow_count(), -1);
  for (int a = 0; a < s.arrow_count(); ++a) {
    if (partner[a] >= 0) continue;
    res.kept[a] = static_cast<int>(kept_arrows.size());
    kept_arrows.push_back(s.arrow(a));
  }
  renumber_copies(kept_arrows);
  res.reduced_species = std::make_shared<const Species>(s.prime(), s.fields(), std::move(kept_arrows));
  res.reduced = cyclic_normal_form(transport(rest, res.reduced_species, res.kept));
  return res;
}

ArrowMap compose_substitutions(const ArrowMap& phi, const ArrowMap& psi, const SpeciesPtr& species, int trunc) {
  ArrowMap out;
  for (int a = 0; a < species->arrow_count(); ++a) {
    auto it = psi.find(a);
    const Series base = it != psi.end() ? it->second : Series::arrow(species, trunc, a);
    out.emplace(a, apply_substitution(phi, base));
  }
  return out;
}

ArrowMap invert_substitution(const ArrowMap& phi, const SpeciesPtr& species, int trunc) {
  const Species& s = *species;
  const auto& pm = s.prime();
  // Degree-1 monomials s a t index the linear part.
  std::map<Monomial, int> index;
  std::vector<Monomial> basis;
  for (int a = 0; a < s.arrow_count(); ++a)
    for (int x = 0; x < s.degree(s.arrow(a).source); ++x)
      for (int y = 0; y < s.degree(s.arrow(a).target); ++y) {
        index.emplace(Monomial{{x, a, y}}, static_cast<int>(basis.size()));
        basis.push_back(Monomial{{x, a, y}});
      }
  const int dim = static_cast<int>(basis.size());
  FpMatrix lin(pm, dim, dim);
  for (int c = 0; c < dim; ++c) {
    const Series img = apply_substitution(phi, Series::monomial(species, trunc, basis[c])).homogeneous(1);
    for (const auto& [m, v] : img.terms()) lin(index.at(m), c) = v;
  }
  auto inv = inverse(lin);
  require(inv.has_value(), ErrorCode::Precondition, "substitution has a singular linear part");
  ArrowMap linv;
  for (int a = 0; a < s.arrow_count(); ++a) {
    const int c = index.at(Monomial{{0, a, 0}});
    Series img(species, trunc);
    for (int r = 0; r < dim; ++r)
      if ((*inv)(r, c)) img.add(basis[r], (*inv)(r, c));
    linv.emplace(a, std::move(img));
  }
  ArrowMap psi = linv;
  for (int iter = 0; iter <= trunc; ++iter) {
    bool changed = false;
    for (int a = 0; a < s.arrow_count(); ++a) {
      const Series resid = Series::arrow(species, trunc, a) - apply_substitution(phi, psi.at(a));
      if (resid.is_zero()) continue;
      psi.at(a) += apply_substitution(linv, resid);
      changed = true;
    }
    if (!changed) break;
  }
  return psi;
}

MutationResult mutate(const Series& potential, int k, const SplitOptions& options) {
  PremutationResult pre = premutate_potential(potential, k);
  SplitResult red = split(pre.potential, options);
  SpeciesPtr sp = red.reduced_species;
  Series pot = red.reduced;
  ExchangeMatrix b = dimension_matrix(*sp);
  const bool ok = is_2acyclic(pot) && !sp->has_two_cycles() && !red.degenerate_block;
  return MutationResult{k, std::move(pre), std::move(red), std::move(sp), std::move(pot), std::move(b), ok};
}

}  // namespace specpot
