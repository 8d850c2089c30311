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
#include "specpot/series.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "specpot/error.hpp"

namespace specpot {

bool Monomial::operator<(const Monomial& o) const {
  const int da = degree(), db = o.degree();
  if (da != db) return da < db;
  return w < o.w;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto x : m.w) {
    h ^= static_cast<std::uint32_t>(x);
    h *= 1099511628211ull;
  }
  h ^= m.w.size();
  return static_cast<std::size_t>(h);
}

int start_vertex(const Species& s, const Monomial& m) {
  return m.degree() == 0 ? m.w[0] : s.arrow(m.arrow(0)).source;
}

int end_vertex(const Species& s, const Monomial& m) {
  const int d = m.degree();
  return d == 0 ? m.w[0] : s.arrow(m.arrow(d - 1)).target;
}

bool is_cyclic(const Species& s, const Monomial& m) { return start_vertex(s, m) == end_vertex(s, m); }

void validate_monomial(const Species& s, const Monomial& m) {
  const auto& w = m.w;
  require(w.size() == 2 || (w.size() >= 3 && w.size() % 2 == 1), ErrorCode::InvalidArgument, "malformed monomial");
  if (w.size() == 2) {
    require(w[0] >= 0 && w[0] < s.vertex_count(), ErrorCode::InvalidArgument, "vertex out of range");
    require(w[1] >= 0 && w[1] < s.degree(w[0]), ErrorCode::InvalidArgument, "coefficient index out of range");
    return;
  }
  const int d = m.degree();
  for (int r = 0; r < d; ++r) {
    const int a = m.arrow(r);
    require(a >= 0 && a < s.arrow_count(), ErrorCode::InvalidArgument, "arrow index out of range");
    const auto& ar = s.arrow(a);
    require(m.coeff(r) >= 0 && m.coeff(r) < s.degree(ar.source), ErrorCode::InvalidArgument,
            "coefficient index out of range");
    if (r + 1 < d)
      require(ar.target == s.arrow(m.arrow(r + 1)).source, ErrorCode::InvalidArgument, "arrows do not compose");
  }
  require(m.last_coeff() >= 0 && m.last_coeff() < s.degree(end_vertex(s, m)), ErrorCode::InvalidArgument,
          "coefficient index out of range");
}

// ---------------------------------------------------------------------------
// Series

Series::Series(SpeciesPtr species, int trunc) : species_(std::move(species)), trunc_(trunc) {
  require(species_ != nullptr, ErrorCode::InvalidArgument, "null species");
  require(trunc_ >= 0, ErrorCode::InvalidArgument, "truncation order must be nonnegative");
}

Series Series::one(SpeciesPtr species, int trunc) {
  Series s(std::move(species), trunc);
  for (int v = 0; v < s.species().vertex_count(); ++v) s.add(Monomial::unit(v, 0), 1);
  return s;
}

Series Series::monomial(SpeciesPtr species, int trunc, const Monomial& m, Fp c) {
  Series s(std::move(species), trunc);
  validate_monomial(s.species(), m);
  s.add(m, c);
  return s;
}

Series Series::arrow(SpeciesPtr species, int trunc, int a) {
  return monomial(std::move(species), trunc, Monomial{{0, a, 0}}, 1);
}

Series Series::scalar(SpeciesPtr species, int trunc, int v, const std::vector<Fp>& coeffs) {
  Series s(std::move(species), trunc);
  require(static_cast<int>(coeffs.size()) == s.species().degree(v), ErrorCode::InvalidArgument,
          "scalar length differs from field degree");
  for (int t = 0; t < static_cast<int>(coeffs.size()); ++t) s.add(Monomial::unit(v, t), coeffs[t]);
  return s;
}

Fp Series::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void Series::add(const Monomial& m, Fp c) {
  c %= prime().value();
  if (c == 0 || m.degree() > trunc_) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = prime().add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

void Series::add(Monomial&& m, Fp c) {
  c %= prime().value();
  if (c == 0 || m.degree() > trunc_) return;
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second = prime().add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

void Series::check_compatible(const Series& o) const {
  require(species_ == o.species_ || species_->same_shape(*o.species_), ErrorCode::InvalidArgument,
          "series belong to different species");
  require(trunc_ == o.trunc_, ErrorCode::InvalidArgument, "series have different truncation orders");
}

Series& Series::operator+=(const Series& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

Series& Series::operator-=(const Series& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add(m, prime().neg(c));
  return *this;
}

Series Series::operator+(const Series& o) const {
  Series r = *this;
  r += o;
  return r;
}

Series Series::operator-(const Series& o) const {
  Series r = *this;
  r -= o;
  return r;
}

Series Series::operator-() const { return scaled(prime().neg(1)); }

Series Series::scaled(Fp c) const {
  Series r(species_, trunc_);
  c %= prime().value();
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, prime().mul(v, c));
  return r;
}

Series Series::homogeneous(int m) const { return degree_range(m, m); }

Series Series::degree_range(int lo, int hi) const {
  Series r(species_, trunc_);
  for (const auto& [m, c] : terms_)
    if (m.degree() >= lo && m.degree() <= hi) r.terms_.emplace(m, c);
  return r;
}

int Series::min_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_)
    if (d < 0 || m.degree() < d) d = m.degree();
  return d;
}

int Series::max_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::vector<std::pair<Monomial, Fp>> Series::sorted() const {
  std::vector<std::pair<Monomial, Fp>> v(terms_.begin(), terms_.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

Series Series::with_trunc(int trunc) const {
  Series r(species_, trunc);
  for (const auto& [m, c] : terms_) r.add(m, c);
  return r;
}

bool Series::operator==(const Series& o) const {
  if (!(species_ == o.species_ || species_->same_shape(*o.species_))) return false;
  return terms_ == o.terms_;
}

// ---------------------------------------------------------------------------
// Products

namespace {

// Writes prefix(f) + [r] + suffix(g) where prefix drops f's trailing
// coefficient and suffix drops g's leading one.
Monomial splice(const Monomial& f, int r, const Monomial& g, int vertex) {
  const int df = f.degree(), dg = g.degree();
  if (df == 0 && dg == 0) return Monomial::unit(vertex, r);
  Monomial out;
  out.w.reserve((df == 0 ? 0 : f.w.size() - 1) + 1 + (dg == 0 ? 0 : g.w.size() - 1));
  if (df > 0) out.w.insert(out.w.end(), f.w.begin(), f.w.end() - 1);
  out.w.push_back(r);
  if (dg > 0) out.w.insert(out.w.end(), g.w.begin() + 1, g.w.end());
  return out;
}

}  // namespace

Series multiply(const Series& f, const Series& g) {
  require(f.species_ptr() == g.species_ptr() || f.species().same_shape(g.species()), ErrorCode::InvalidArgument,
          "series belong to different species");
  require(f.trunc() == g.trunc(), ErrorCode::InvalidArgument, "series have different truncation orders");
  const Species& sp = f.species();
  const auto& p = sp.prime();
  Series out(f.species_ptr(), f.trunc());
  std::vector<std::vector<const std::pair<const Monomial, Fp>*>> by_start(sp.vertex_count());
  for (const auto& t : g.terms()) by_start[start_vertex(sp, t.first)].push_back(&t);
  for (const auto& [fm, fc] : f.terms()) {
    const int v = end_vertex(sp, fm);
    const int dfm = fm.degree();
    const auto& field = sp.field(v);
    for (const auto* gt : by_start[v]) {
      const Monomial& gm = gt->first;
      if (dfm + gm.degree() > f.trunc()) continue;
      const Fp c = p.mul(fc, gt->second);
      auto prod = field.basis_product(fm.last_coeff(), gm.first_coeff());
      for (int r = 0; r < field.degree(); ++r)
        if (prod[r]) out.add(splice(fm, r, gm, v), p.mul(c, prod[r]));
    }
  }
  return out;
}

Series cyclic_part(const Series& f) {
  Series out(f.species_ptr(), f.trunc());
  for (const auto& [m, c] : f.terms())
    if (is_cyclic(f.species(), m)) out.add(m, c);
  return out;
}

namespace {

// Rotates a (t, a) pair sequence to its lexicographically least rotation.
std::vector<std::int32_t> least_rotation(const std::vector<std::int32_t>& pairs) {
  const std::size_t len = pairs.size();
  std::size_t best = 0;
  for (std::size_t s = 2; s < len; s += 2) {
    for (std::size_t k = 0; k < len; ++k) {
      const auto x = pairs[(s + k) % len], y = pairs[(best + k) % len];
      if (x != y) {
        if (x < y) best = s;
        break;
      }
    }
  }
  std::vector<std::int32_t> out(len);
  for (std::size_t k = 0; k < len; ++k) out[k] = pairs[(best + k) % len];
  return out;
}

// For a cyclic word of degree >= 1, expands t_{m+1} t_1 and calls
// emit(pairs, coeff) with pairs = (r, a_1, t_2, a_2, ..., t_m, a_m).
template <class Emit>
void merged_pairs(const Species& sp, const Monomial& m, Fp c, Emit&& emit) {
  const int v = start_vertex(sp, m);
  const auto& field = sp.field(v);
  auto lead = field.basis_product(m.last_coeff(), m.coeff(0));
  std::vector<std::int32_t> pairs(m.w.begin(), m.w.end() - 1);
  for (int r = 0; r < field.degree(); ++r) {
    if (!lead[r]) continue;
    pairs[0] = r;
    emit(pairs, sp.prime().mul(c, lead[r]));
  }
}

}  // namespace

Series cyclic_normal_form(const Series& f) {
  const Species& sp = f.species();
  Series out(f.species_ptr(), f.trunc());
  for (const auto& [m, c] : f.terms()) {
    if (!is_cyclic(sp, m)) continue;
    if (m.degree() == 0) {
      out.add(m, c);
      continue;
    }
    merged_pairs(sp, m, c, [&](const std::vector<std::int32_t>& pairs, Fp cc) {
      Monomial nm{least_rotation(pairs)};
      nm.w.push_back(0);
      out.add(std::move(nm), cc);
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Monomial> enumerate_paths(const Species& s, int m, int from, int to) {
  std::vector<Monomial> out;
  if (m == 0) {
    if (from == to)
      for (int t = 0; t < s.degree(from); ++t) out.push_back(Monomial::unit(from, t));
    return out;
  }
  struct Walker {
    const Species& s;
    int m, to;
    std::vector<Monomial>& out;
    std::vector<std::int32_t> w;
    void go(int vertex, int depth) {
      if (depth == m) {
        if (to >= 0 && vertex != to) return;
        for (int t = 0; t < s.degree(vertex); ++t) {
          w.push_back(t);
          out.push_back(Monomial{w});
          w.pop_back();
        }
        return;
      }
      for (int a : s.arrows_from(vertex))
        for (int t = 0; t < s.degree(vertex); ++t) {
          w.push_back(t);
          w.push_back(a);
          go(s.arrow(a).target, depth + 1);
          w.pop_back();
          w.pop_back();
        }
    }
  };
  Walker walker{s, m, to, out, {}};
  walker.go(from, 0);
  return out;
}

std::vector<Monomial> enumerate_monomials(const Species& s, int m) {
  std::vector<Monomial> out;
  for (int v = 0; v < s.vertex_count(); ++v) {
    auto part = enumerate_paths(s, m, v, -1);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<Monomial> enumerate_bt(const Species& s, int m) {
  require(m >= 2, ErrorCode::InvalidArgument, "B(T)_m is defined for m >= 2");
  std::vector<Monomial> out;
  for (int v = 0; v < s.vertex_count(); ++v) {
    auto part = enumerate_paths(s, m, v, v);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<Monomial> enumerate_bt_up_to(const Species& s, int trunc) {
  std::vector<Monomial> out;
  for (int m = 2; m <= trunc; ++m) {
    auto part = enumerate_bt(s, m);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<Monomial> enumerate_necklaces(const Species& s, int m) {
  std::vector<Monomial> out;
  if (m < 1) return out;
  for (int v = 0; v < s.vertex_count(); ++v)
    for (auto& mono : enumerate_paths(s, m, v, v)) {
      if (mono.last_coeff() != 0) continue;
      std::vector<std::int32_t> pairs(mono.w.begin(), mono.w.end() - 1);
      if (least_rotation(pairs) == pairs) out.push_back(std::move(mono));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Cyclic calculus

Series cyclic_derivation(const Series& f, const Series& g) {
  const SpeciesPtr& sp = f.species_ptr();
  const int N = f.trunc();
  const auto& p = f.prime();
  const Series one = Series::one(sp, N);
  Series out(sp, N);

  // u(A (x) B g) = sum_i e_i (B g) A e_i
  auto accumulate = [&](const Series& a, const Series& b, Fp c) {
    out += cyclic_part(multiply(multiply(b, g), a)).scaled(c);
  };
  auto mono = [&](std::vector<std::int32_t> w) { return Series::monomial(sp, N, Monomial{std::move(w)}); };

  for (const auto& [m, c] : f.terms()) {
    const int d = m.degree();
    if (d == 0) {
      // Delta(t) = 1 (x) t - t (x) 1
      const Series t = Series::monomial(sp, N, m);
      accumulate(one, t, c);
      accumulate(t, one, p.neg(c));
      continue;
    }
    const auto& w = m.w;
    // Coefficient factors t_r, r = 0..d (0-based over the word positions 2r).
    for (int r = 0; r <= d; ++r) {
      // prefix = t_1 a_1 ... a_r (unit trailing coefficient), or 1 when r = 0.
      Series prefix = r == 0 ? one : mono([&] {
        std::vector<std::int32_t> v(w.begin(), w.begin() + 2 * r);
        v.push_back(0);
        return v;
      }());
      // t_r suffix and prefix t_r
      Series t_suffix = r == d ? Series::monomial(sp, N, Monomial::unit(end_vertex(f.species(), m), w[2 * d]))
                               : mono(std::vector<std::int32_t>(w.begin() + 2 * r, w.end()));
      Series prefix_t = r == 0 ? Series::monomial(sp, N, Monomial::unit(start_vertex(f.species(), m), w[0]))
                               : mono(std::vector<std::int32_t>(w.begin(), w.begin() + 2 * r + 1));
      Series suffix = r == d ? one : mono([&] {
        std::vector<std::int32_t> v{0};
        v.insert(v.end(), w.begin() + 2 * r + 1, w.end());
        return v;
      }());
      accumulate(prefix, t_suffix, c);
      accumulate(prefix_t, suffix, p.neg(c));
    }
    // Arrow factors a_r: prefix (x) a_r suffix with prefix = t_1 a_1 ... t_r.
    for (int r = 0; r < d; ++r) {
      Series prefix = r == 0 ? Series::monomial(sp, N, Monomial::unit(start_vertex(f.species(), m), w[0]))
                             : mono(std::vector<std::int32_t>(w.begin(), w.begin() + 2 * r + 1));
      std::vector<std::int32_t> sw{0};
      sw.insert(sw.end(), w.begin() + 2 * r + 1, w.end());
      accumulate(prefix, mono(std::move(sw)), c);
    }
  }
  return out;
}

Series cyclic_derivative(const Series& f) {
  const Species& sp = f.species();
  Series out(f.species_ptr(), f.trunc());
  for (const auto& [m, c] : f.terms()) {
    if (m.degree() == 0 || !is_cyclic(sp, m)) continue;
    merged_pairs(sp, m, c, [&](const std::vector<std::int32_t>& pairs, Fp cc) {
      const std::size_t len = pairs.size();
      for (std::size_t s = 0; s < len; s += 2) {
        Monomial rot;
        rot.w.reserve(len + 1);
        for (std::size_t k = 0; k < len; ++k) rot.w.push_back(pairs[(s + k) % len]);
        rot.w.push_back(0);
        out.add(std::move(rot), cc);
      }
    });
  }
  return out;
}

RightModuleMap dual_basis_map(const Species& sp, int a, int s) {
  require(a >= 0 && a < sp.arrow_count(), ErrorCode::InvalidArgument, "arrow index out of range");
  require(s >= 0 && s < sp.degree(sp.arrow(a).source), ErrorCode::InvalidArgument, "basis index out of range");
  RightModuleMap psi;
  psi.values[{a, s}] = sp.field(sp.arrow(a).target).one();
  return psi;
}

Series psi_star(const RightModuleMap& psi, const Series& f) {
  const Species& sp = f.species();
  const auto& p = f.prime();
  Series out(f.species_ptr(), f.trunc());
  for (const auto& [m, c] : f.terms()) {
    const int d = m.degree();
    if (d == 0) continue;
    auto it = psi.values.find({m.arrow(0), m.coeff(0)});
    if (it == psi.values.end()) continue;
    const int v = sp.arrow(m.arrow(0)).target;
    const auto& field = sp.field(v);
    require(static_cast<int>(it->second.size()) == field.degree(), ErrorCode::InvalidArgument,
            "right module map value has the wrong length");
    // psi(t_1 a_1) * t_2, expanded over the basis of D_v
    std::vector<Fp> val(field.degree(), 0);
    for (int q = 0; q < field.degree(); ++q) {
      if (!it->second[q]) continue;
      auto pr = field.basis_product(q, m.coeff(1));
      for (int r = 0; r < field.degree(); ++r) val[r] = p.add(val[r], p.mul(it->second[q], pr[r]));
    }
    for (int r = 0; r < field.degree(); ++r) {
      if (!val[r]) continue;
      Monomial nm;
      if (d == 1) {
        nm = Monomial::unit(v, r);
      } else {
        nm.w.reserve(m.w.size() - 2);
        nm.w.push_back(r);
        nm.w.insert(nm.w.end(), m.w.begin() + 3, m.w.end());
      }
      out.add(std::move(nm), p.mul(c, val[r]));
    }
  }
  return out;
}

Series delta_psi(const RightModuleMap& psi, const Series& f) { return psi_star(psi, cyclic_derivative(f)); }

Series jacobian_generator(const Series& potential, int a) {
  const Species& sp = potential.species();
  require(a >= 0 && a < sp.arrow_count(), ErrorCode::InvalidArgument, "unknown arrow");
  const int src = sp.arrow(a).source;
  const Series delta = cyclic_derivative(potential);
  Series out(potential.species_ptr(), potential.trunc());
  for (int s = 0; s < sp.degree(src); ++s) {
    Series part = psi_star(dual_basis_map(sp, a, s), delta);
    if (part.is_zero()) continue;
    out += multiply(part, Series::monomial(potential.species_ptr(), potential.trunc(), Monomial::unit(src, s)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ideal spans

IdealSpan::IdealSpan(SpeciesPtr species, int trunc)
    : species_(std::move(species)), trunc_(trunc), echelon_(species_->prime()) {}

SparseEchelon::Row IdealSpan::to_row(const Series& f, bool grow) const {
  SparseEchelon::Row row;
  for (const auto& [m, c] : f.terms()) {
    auto it = index_.find(m);
    int idx;
    if (it != index_.end()) {
      idx = it->second;
    } else if (grow) {
      idx = static_cast<int>(monomials_.size());
      index_.emplace(m, idx);
      monomials_.push_back(m);
    } else {
      idx = -1;
    }
    row[idx] = c;
  }
  return row;
}

void IdealSpan::insert(const Series& f) { echelon_.insert(to_row(f, true)); }

bool IdealSpan::contains(const Series& f) const {
  auto row = to_row(f, false);
  if (row.count(-1)) return false;
  return echelon_.contains(row);
}

std::vector<Series> IdealSpan::basis() const {
  std::vector<Series> out;
  for (const auto& [piv, row] : echelon_.rows()) {
    Series s(species_, trunc_);
    for (const auto& [col, v] : row) s.add(monomials_[col], v);
    out.push_back(std::move(s));
  }
  return out;
}

IdealSpan ideal_span_truncated(const Series& potential, int trunc) {
  const SpeciesPtr& sp = potential.species_ptr();
  const Species& s = *sp;
  const Series pot = potential.with_trunc(trunc);
  IdealSpan span(sp, trunc);
  for (int a = 0; a < s.arrow_count(); ++a) {
    const Series x = jacobian_generator(pot, a);
    if (x.is_zero()) continue;
    const int lo = x.min_degree();
    const int from = s.arrow(a).target, to = s.arrow(a).source;  // X lives in e_from F e_to
    for (int d1 = 0; lo + d1 <= trunc; ++d1) {
      std::vector<Monomial> lefts;
      for (int v = 0; v < s.vertex_count(); ++v) {
        auto part = enumerate_paths(s, d1, v, from);
        lefts.insert(lefts.end(), part.begin(), part.end());
      }
      for (const auto& m1 : lefts) {
        const Series left = multiply(Series::monomial(sp, trunc, m1), x);
        if (left.is_zero()) continue;
        for (int d2 = 0; lo + d1 + d2 <= trunc; ++d2) {
          for (int v = 0; v < s.vertex_count(); ++v)
            for (const auto& m2 : enumerate_paths(s, d2, to, v)) {
              span.insert(multiply(left, Series::monomial(sp, trunc, m2)));
            }
        }
      }
    }
  }
  return span;
}

bool is_2acyclic(const Series& potential) {
  for (const auto& [m, c] : potential.terms())
    if (m.degree() == 2) return false;
  return true;
}

Series random_potential(SpeciesPtr species, int trunc, std::uint64_t seed, SupportPolicy policy,
                        std::string* warning) {
  require(trunc >= 2, ErrorCode::InvalidArgument, "random potentials need N >= 2");
  Series out(species, trunc);
  std::vector<Monomial> support;
  if (policy == SupportPolicy::AllCycles) {
    support = enumerate_bt_up_to(*species, trunc);
  } else {
    for (int m = 2; m <= trunc && support.empty(); ++m) support = enumerate_bt(*species, m);
  }
  if (support.empty()) {
    if (warning) *warning = "B(T) is empty up to degree " + std::to_string(trunc) + "; potential is zero";
    return out;
  }
  std::mt19937_64 rng(seed);
  const std::uint64_t p = species->prime().value();
  for (auto& m : support) out.add(std::move(m), static_cast<Fp>(rng() % p));
  return out;
}

Series apply_substitution(const ArrowMap& phi, const Series& f) {
  const SpeciesPtr& sp = f.species_ptr();
  const int N = f.trunc();
  for (const auto& [a, img] : phi) {
    require(img.trunc() == N, ErrorCode::InvalidArgument, "substitution image has a different truncation");
    for (const auto& [m, c] : img.terms())
      require(m.degree() >= 1 && start_vertex(*sp, m) == sp->arrow(a).source &&
                  end_vertex(*sp, m) == sp->arrow(a).target,
              ErrorCode::InvalidArgument, "substitution image of '" + sp->arrow(a).id + "' is not legible");
  }
  Series out(sp, N);
  for (const auto& [m, c] : f.terms()) {
    const int d = m.degree();
    bool touched = false;
    for (int r = 0; r < d && !touched; ++r) touched = phi.count(m.arrow(r)) > 0;
    if (!touched) {
      out.add(m, c);
      continue;
    }
    // t_1 phi(a_1) t_2 ... phi(a_d) t_{d+1}, with cheap coefficient merges
    Series acc = Series::monomial(sp, N, Monomial::unit(start_vertex(*sp, m), m.coeff(0)), c);
    for (int r = 0; r < d && !acc.is_zero(); ++r) {
      auto it = phi.find(m.arrow(r));
      const Series piece = it != phi.end() ? it->second : Series::arrow(sp, N, m.arrow(r));
      acc = multiply(acc, piece);
      const int v = sp->arrow(m.arrow(r)).target;
      acc = multiply(acc, Series::monomial(sp, N, Monomial::unit(v, m.coeff(r + 1))));
    }
    out += acc;
  }
  return out;
}

Series transport(const Series& f, SpeciesPtr target, const std::vector<int>& arrow_map) {
  require(static_cast<int>(arrow_map.size()) == f.species().arrow_count(), ErrorCode::InvalidArgument,
          "arrow map size differs from arrow count");
  Series out(target, f.trunc());
  for (const auto& [m, c] : f.terms()) {
    Monomial nm = m;
    for (int r = 0; r < m.degree(); ++r) {
      const int na = arrow_map[m.arrow(r)];
      require(na >= 0, ErrorCode::Internal,
              "term uses arrow '" + f.species().arrow(m.arrow(r)).id + "' which has no image");
      nm.w[2 * static_cast<std::size_t>(r) + 1] = na;
    }
    out.add(std::move(nm), c);
  }
  return out;
}

std::string to_string(const Series& f) {
  if (f.is_zero()) return "0";
  const Species& sp = f.species();
  std::ostringstream os;
  auto coeff = [&](int v, int t) -> std::string {
    if (t == 0) return "";
    std::string s = "x" + std::to_string(v + 1);
    if (t > 1) s += "^" + std::to_string(t);
    return s;
  };
  bool first = true;
  for (const auto& [m, c] : f.sorted()) {
    if (!first) os << " + ";
    first = false;
    os << c;
    if (m.degree() == 0) {
      os << "*e" << m.w[0] + 1;
      if (auto s = coeff(m.w[0], m.w[1]); !s.empty()) os << "*" << s;
      continue;
    }
    int v = start_vertex(sp, m);
    for (int r = 0; r < m.degree(); ++r) {
      if (auto s = coeff(v, m.coeff(r)); !s.empty()) os << "*" << s;
      os << "*" << sp.arrow(m.arrow(r)).id;
      v = sp.arrow(m.arrow(r)).target;
    }
    if (auto s = coeff(v, m.last_coeff()); !s.empty()) os << "*" << s;
  }
  return os.str();
}

}  // namespace specpot
