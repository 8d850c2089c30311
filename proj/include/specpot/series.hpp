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
// Truncated formal series over a species.
//
// A monomial of degree m >= 1 is the alternating word
//   t_1 a_1 t_2 a_2 ... t_m a_m t_{m+1}
// with a_r arrows, tau(a_r) = sigma(a_{r+1}), and every t_r an index into the
// power basis of the field at the vertex it sits on. A degree-0 monomial is a
// basis element t of D_v, stored as {v, t}. Series carry a truncation order N
// and silently drop every term of degree > N.

#ifndef SPECPOT_SERIES_HPP
#define SPECPOT_SERIES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "specpot/linalg.hpp"
#include "specpot/species.hpp"

namespace specpot {

struct Monomial {
  std::vector<std::int32_t> w;

  int degree() const noexcept { return w.size() == 2 ? 0 : static_cast<int>(w.size() - 1) / 2; }
  /// Basis index of t_{r+1} (0-based r), for degree >= 1.
  int coeff(int r) const { return w[2 * static_cast<std::size_t>(r)]; }
  /// Arrow a_{r+1} (0-based r), for degree >= 1.
  int arrow(int r) const { return w[2 * static_cast<std::size_t>(r) + 1]; }
  int first_coeff() const { return degree() == 0 ? w[1] : w.front(); }
  int last_coeff() const { return w.back(); }

  static Monomial unit(int vertex, int t) { return Monomial{{vertex, t}}; }

  bool operator==(const Monomial&) const = default;
  /// Orders by degree, then lexicographically.
  bool operator<(const Monomial& o) const;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

int start_vertex(const Species& s, const Monomial& m);
int end_vertex(const Species& s, const Monomial& m);
bool is_cyclic(const Species& s, const Monomial& m);
/// Throws InvalidArgument unless m is a well-formed monomial of s.
void validate_monomial(const Species& s, const Monomial& m);

class Series {
 public:
  using Terms = std::unordered_map<Monomial, Fp, MonomialHash>;

  Series(SpeciesPtr species, int trunc);

  /// 1 = e_1 + ... + e_n.
  static Series one(SpeciesPtr species, int trunc);
  static Series monomial(SpeciesPtr species, int trunc, const Monomial& m, Fp c = 1);
  /// Single arrow a with unit coefficients on both sides.
  static Series arrow(SpeciesPtr species, int trunc, int a);
  /// Degree-0 element of D_v given by its power-basis coordinates.
  static Series scalar(SpeciesPtr species, int trunc, int v, const std::vector<Fp>& coeffs);

  const Species& species() const noexcept { return *species_; }
  const SpeciesPtr& species_ptr() const noexcept { return species_; }
  int trunc() const noexcept { return trunc_; }
  const PrimeModulus& prime() const noexcept { return species_->prime(); }

  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  Fp coefficient(const Monomial& m) const;

  /// Adds c * m; drops the term if deg m > N.
  void add(const Monomial& m, Fp c);
  void add(Monomial&& m, Fp c);

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series scaled(Fp c) const;

  Series homogeneous(int m) const;
  Series degree_range(int lo, int hi) const;
  /// -1 for the zero series.
  int min_degree() const;
  int max_degree() const;

  /// Terms sorted by monomial order, for deterministic output.
  std::vector<std::pair<Monomial, Fp>> sorted() const;

  Series with_trunc(int trunc) const;
  bool operator==(const Series& o) const;

 private:
  void check_compatible(const Series& o) const;

  SpeciesPtr species_;
  int trunc_;
  Terms terms_;
};

/// Product in F_S(M): boundary coefficients merge by field multiplication and
/// re-expand over the power basis; non-composable products vanish.
Series multiply(const Series& f, const Series& g);
inline Series operator*(const Series& f, const Series& g) { return multiply(f, g); }

/// Keeps exactly the cyclic monomials (sum_j e_j f e_j).
Series cyclic_part(const Series& f);

/// Normal form modulo [F_S(M), F_S(M)]: non-cyclic terms vanish, boundary
/// coefficients are merged to the front (trailing coefficient 1), and each
/// word is rotated to its lexicographically smallest (t, a) pair sequence.
/// Two series are cyclically equivalent iff their normal forms coincide.
Series cyclic_normal_form(const Series& f);

/// All monomials of degree m in deterministic order (start vertex, then DFS
/// over arrows and coefficient indices).
std::vector<Monomial> enumerate_monomials(const Species& s, int m);
/// Monomials of degree m from vertex `from` to vertex `to`.
std::vector<Monomial> enumerate_paths(const Species& s, int m, int from, int to);

/// The basis B(T)_m of (M^{(x)m})_cyc, m >= 2: every cyclic word, with t_1
/// and t_{m+1} independent.
std::vector<Monomial> enumerate_bt(const Species& s, int m);
/// B(T) restricted to degrees 2..N.
std::vector<Monomial> enumerate_bt_up_to(const Species& s, int trunc);
/// Normal-form cyclic words of degree m (a basis of the degree-m part of
/// F_S(M) modulo commutators).
std::vector<Monomial> enumerate_necklaces(const Species& s, int m);

/// The cyclic derivation h(f)(g) = u(Delta(f) g), evaluated from the
/// definitions of Delta and u through explicit products.
Series cyclic_derivation(const Series& f, const Series& g);

/// delta(f) = h(f)(1), by the rotation formula: each cyclic word contributes
/// its m rotations, with t_{m+1} t_1 merged.
Series cyclic_derivative(const Series& f);

/// A right S-module map M -> S, given by psi(s a) in D_{tau(a)} for basis
/// elements s of L(sigma(a)). Missing entries are zero.
struct RightModuleMap {
  std::map<std::pair<int, int>, std::vector<Fp>> values;  // (arrow, s) -> element
};

/// The dual-basis map (s a)*.
RightModuleMap dual_basis_map(const Species& sp, int a, int s);

/// psi_*(m_1 ... m_l) = psi(m_1) m_2 ... m_l; zero on degree 0.
Series psi_star(const RightModuleMap& psi, const Series& f);
Series delta_psi(const RightModuleMap& psi, const Series& f);

/// X_{a*}(P) = sum_{s in L(sigma(a))} delta_{(sa)*}(P) s.
Series jacobian_generator(const Series& potential, int a);

/// Truncated span of R(P): all m1 X_{a*}(P) m2 over basis monomials with total
/// degree <= N.
class IdealSpan {
 public:
  IdealSpan(SpeciesPtr species, int trunc);

  void insert(const Series& f);
  bool contains(const Series& f) const;
  int dimension() const noexcept { return echelon_.rank(); }
  std::vector<Series> basis() const;

 private:
  SparseEchelon::Row to_row(const Series& f, bool grow) const;

  SpeciesPtr species_;
  int trunc_;
  mutable std::map<Monomial, int> index_;
  mutable std::vector<Monomial> monomials_;
  SparseEchelon echelon_;
};

IdealSpan ideal_span_truncated(const Series& potential, int trunc);

/// No degree-2 term.
bool is_2acyclic(const Series& potential);

enum class SupportPolicy { AllCycles, CyclesOnlyMinDegree };

/// Uniform F_p coefficients on B(T) up to degree N (or only its lowest
/// nonempty degree); deterministic in the seed. Sets *warning when B(T) is
/// empty and the zero potential is returned.
Series random_potential(SpeciesPtr species, int trunc, std::uint64_t seed,
                        SupportPolicy policy = SupportPolicy::AllCycles, std::string* warning = nullptr);

/// Algebra endomorphism fixing S, given by arrow images (arrows not in the
/// map are fixed). Images must be legible: e_{sigma(a)} phi(a) e_{tau(a)}.
using ArrowMap = std::map<int, Series>;
Series apply_substitution(const ArrowMap& phi, const Series& f);

/// Moves a series to another species through an arrow renumbering;
/// arrow_map[a] = -1 marks arrows that must not occur.
Series transport(const Series& f, SpeciesPtr target, const std::vector<int>& arrow_map);

/// Human-readable form, with x<v>^k for the power basis of D_v.
std::string to_string(const Series& f);

}  // namespace specpot

#endif  // SPECPOT_SERIES_HPP
