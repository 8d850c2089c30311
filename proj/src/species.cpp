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
#include "specpot/species.hpp"

#include <set>

#include "specpot/error.hpp"
#include "specpot/linalg.hpp"

namespace specpot {

const char* to_string(ArrowKind kind) {
  switch (kind) {
    case ArrowKind::Original: return "original";
    case ArrowKind::Composite: return "composite";
    case ArrowKind::DualRight: return "dual-right";
    case ArrowKind::DualLeft: return "dual-left";
  }
  return "original";
}

ArrowKind arrow_kind_from_string(const std::string& s) {
  if (s == "original") return ArrowKind::Original;
  if (s == "composite") return ArrowKind::Composite;
  if (s == "dual-right") return ArrowKind::DualRight;
  if (s == "dual-left") return ArrowKind::DualLeft;
  fail(ErrorCode::Parse, "unknown arrow kind '" + s + "'");
}

Species::Species(PrimeModulus p, std::vector<FieldPtr> fields, std::vector<Arrow> arrows)
    : p_(p), fields_(std::move(fields)), arrows_(std::move(arrows)) {
  const int n = vertex_count();
  for (const auto& f : fields_) {
    require(f != nullptr, ErrorCode::InvalidArgument, "null vertex field");
    require(f->prime() == p_, ErrorCode::InvalidArgument, "vertex field over a different prime");
  }
  out_.assign(n, {});
  in_.assign(n, {});
  std::set<std::string> ids;
  for (int a = 0; a < arrow_count(); ++a) {
    const auto& ar = arrows_[a];
    require(ar.source >= 0 && ar.source < n && ar.target >= 0 && ar.target < n, ErrorCode::InvalidArgument,
            "arrow '" + ar.id + "' has an endpoint out of range");
    require(ar.source != ar.target, ErrorCode::InvalidArgument, "arrow '" + ar.id + "' is a loop");
    require(ids.insert(ar.id).second, ErrorCode::InvalidArgument, "duplicate arrow id '" + ar.id + "'");
    out_[ar.source].push_back(a);
    in_[ar.target].push_back(a);
  }
}

std::optional<int> Species::find_arrow(const std::string& id) const {
  for (int a = 0; a < arrow_count(); ++a)
    if (arrows_[a].id == id) return a;
  return std::nullopt;
}

int Species::multiplicity(int i, int j) const {
  int c = 0;
  for (int a : out_.at(i))
    if (arrows_[a].target == j) ++c;
  return c;
}

bool Species::has_two_cycles() const {
  for (const auto& a : arrows_)
    if (multiplicity(a.target, a.source) > 0) return true;
  return false;
}

bool Species::same_shape(const Species& o) const {
  if (vertex_count() != o.vertex_count() || !(p_ == o.p_)) return false;
  for (int v = 0; v < vertex_count(); ++v)
    if (fields_[v]->min_poly() != o.fields_[v]->min_poly()) return false;
  return arrows_ == o.arrows_;
}

std::string original_arrow_id(int i, int j, int copy, int multiplicity) {
  std::string id = "a" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  if (multiplicity > 1) id += "_" + std::to_string(copy + 1);
  return id;
}

SpeciesPtr realize(const ExchangeMatrix& b, const SkewSymmetrizer& d, const PrimeModulus& p) {
  require(check_divisibility(b, d), ErrorCode::Precondition, "divisibility condition d_j | b_ij fails");
  const int n = b.size();
  std::vector<FieldPtr> fields;
  fields.reserve(n);
  for (int i = 0; i < n; ++i) fields.push_back(make_extension(p, static_cast<int>(d.diag[i])));
  std::vector<Arrow> arrows;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (b(i, j) <= 0) continue;
      const int mult = static_cast<int>(b(i, j) / d.diag[j]);
      for (int c = 0; c < mult; ++c)
        arrows.push_back(Arrow{original_arrow_id(i, j, c, mult), i, j, c, ArrowKind::Original});
    }
  return std::make_shared<const Species>(p, std::move(fields), std::move(arrows));
}

ExchangeMatrix dimension_matrix(const Species& s) {
  const int n = s.vertex_count();
  ExchangeMatrix b(n);
  for (const auto& a : s.arrows()) {
    b(a.source, a.target) += s.degree(a.target);
    b(a.target, a.source) -= s.degree(a.source);
  }
  return b;
}

namespace {

// Multiplication by the field generator x on the power basis, as a d x d
// matrix acting on coordinate columns.
FpMatrix generator_matrix(const ExtensionField& f) {
  const int d = f.degree();
  FpMatrix m(f.prime(), d, d);
  if (d == 1) return m;  // unused: F_p acts by scalars
  for (int j = 0; j < d; ++j) {
    auto col = f.basis_product(j, 1);
    for (int i = 0; i < d; ++i) m(i, j) = col[i];
  }
  return m;
}

// Kernel dimension of T -> T A - B T for T: dim(A) -> dim(B), summed over all
// generator pairs (A_g, B_g).
int intertwiner_dim(const std::vector<std::pair<FpMatrix, FpMatrix>>& gens, int da, int db) {
  const auto& p = gens.front().first.prime();
  const int unknowns = db * da;  // T is db x da, row-major
  FpMatrix sys(p, static_cast<int>(gens.size()) * db * da, unknowns);
  int row = 0;
  for (const auto& [a, b] : gens) {
    for (int r = 0; r < db; ++r)
      for (int s = 0; s < da; ++s, ++row) {
        // (T A)_{rs} = sum_k T_{rk} A_{ks};  (B T)_{rs} = sum_k B_{rk} T_{ks}
        for (int k = 0; k < da; ++k)
          if (a(k, s)) sys(row, r * da + k) = p.add(sys(row, r * da + k), a(k, s));
        for (int k = 0; k < db; ++k)
          if (b(r, k)) sys(row, k * da + s) = p.sub(sys(row, k * da + s), b(r, k));
      }
  }
  return unknowns - sys.rank();
}

}  // namespace

bool dual_bimodules_isomorphic(const ExtensionField& fi, const ExtensionField& fj, int copies) {
  // Both duals are modules over the commutative semisimple algebra
  // F_j (x) F_i, so isomorphism holds iff dim Hom(H1,H2) = dim End(H1) =
  // dim End(H2). Direct sums of copies are isomorphic iff the summands are,
  // so a single copy decides it.
  if (copies <= 0) return true;
  const auto& p = fi.prime();
  const int di = fi.degree(), dj = fj.degree();
  const int dim = di * dj;
  const FpMatrix gx = generator_matrix(fi), gy = generator_matrix(fj);

  // H1 = Hom_{F_i}(M, F_i): phi(a y^q) in F_i, coordinate q*di + p.
  // H2 = Hom_{F_j}(M, F_j): psi(x^p a) in F_j, coordinate p*dj + q.
  // Action matrices are indexed [new coordinate][old coordinate].
  FpMatrix Y1(p, dim, dim), X1(p, dim, dim), Y2(p, dim, dim), X2(p, dim, dim);
  for (int q = 0; q < dj; ++q)
    for (int pp = 0; pp < di; ++pp) {
      // (y phi)(a y^q) = phi(a y^{q+1})
      if (dj > 1)
        for (int q2 = 0; q2 < dj; ++q2) Y1(q * di + pp, q2 * di + pp) = fj.basis_product(q, 1)[q2];
      // (phi x)(m) = phi(m) x
      if (di > 1)
        for (int r = 0; r < di; ++r) X1(q * di + r, q * di + pp) = gx(r, pp);
    }
  for (int pp = 0; pp < di; ++pp)
    for (int q = 0; q < dj; ++q) {
      // (y psi)(m) = y psi(m)
      if (dj > 1)
        for (int r = 0; r < dj; ++r) Y2(pp * dj + r, pp * dj + q) = gy(r, q);
      // (psi x)(x^p a) = psi(x^{p+1} a)
      if (di > 1)
        for (int p2 = 0; p2 < di; ++p2) X2(pp * dj + q, p2 * dj + q) = fi.basis_product(pp, 1)[p2];
    }
  const int hom12 = intertwiner_dim({{Y1, Y2}, {X1, X2}}, dim, dim);
  const int end1 = intertwiner_dim({{Y1, Y1}, {X1, X1}}, dim, dim);
  const int end2 = intertwiner_dim({{Y2, Y2}, {X2, X2}}, dim, dim);
  return hom12 == end1 && end1 == end2;
}

RealizationReport verify_realization(const Species& s, const ExchangeMatrix& b) {
  RealizationReport rep;
  const int n = s.vertex_count();
  if (b.size() != n) {
    rep.clause2 = rep.clause4 = false;
    rep.failures.push_back({2, 0, 0, "vertex count differs from matrix size"});
    return rep;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int mult = s.multiplicity(i, j);
      const bool want = b(i, j) > 0;
      if ((mult > 0) != want) {
        rep.clause2 = false;
        rep.failures.push_back({2, i, j, want ? "missing bimodule" : "unexpected bimodule"});
      }
      if (!want) continue;
      // F-basis {x^p a y^q} of e_i M e_j, counted by enumeration.
      std::int64_t fdim = 0;
      for (int a : s.arrows_from(i)) {
        if (s.arrow(a).target != j) continue;
        for (int pp = 0; pp < s.degree(i); ++pp)
          for (int q = 0; q < s.degree(j); ++q) ++fdim;
      }
      const std::int64_t over_i = fdim / s.degree(i), over_j = fdim / s.degree(j);
      if (fdim % s.degree(i) != 0 || over_i != b(i, j) || fdim % s.degree(j) != 0 || over_j != -b(j, i)) {
        rep.clause4 = false;
        rep.failures.push_back({4, i, j,
                                "dim over F_i = " + std::to_string(over_i) + " (want " + std::to_string(b(i, j)) +
                                    "), dim over F_j = " + std::to_string(over_j) + " (want " +
                                    std::to_string(-b(j, i)) + ")"});
      }
      if (mult > 0 && !dual_bimodules_isomorphic(s.field(i), s.field(j), mult)) {
        rep.clause3 = false;
        rep.failures.push_back({3, i, j, "no bimodule isomorphism between the duals"});
      }
    }
  return rep;
}

}  // namespace specpot
