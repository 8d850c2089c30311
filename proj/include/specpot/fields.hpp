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
// Prime fields F_p and their extensions F_{p^d} in the power basis.

#ifndef SPECPOT_FIELDS_HPP
#define SPECPOT_FIELDS_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace specpot {

using Fp = std::uint32_t;
using Poly = std::vector<Fp>;  // coefficients, lowest degree first

class PrimeModulus {
 public:
  /// Throws InvalidArgument unless p is a prime below 2^31.
  explicit PrimeModulus(std::uint32_t p);

  std::uint32_t value() const noexcept { return p_; }

  Fp reduce(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<Fp>(r < 0 ? r + p_ : r);
  }
  Fp add(Fp a, Fp b) const noexcept {
    Fp s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fp sub(Fp a, Fp b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Fp neg(Fp a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Fp mul(Fp a, Fp b) const noexcept {
    return static_cast<Fp>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Fp pow(Fp a, std::uint64_t e) const noexcept;
  /// Throws InvalidArgument on zero.
  Fp inv(Fp a) const;

  bool operator==(const PrimeModulus&) const = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

// Polynomial helpers over F_p. Results are normalized (no trailing zeros).
namespace poly {
void trim(Poly& f);
Poly mul(const PrimeModulus& p, const Poly& a, const Poly& b);
Poly mod(const PrimeModulus& p, Poly a, const Poly& m);
Poly mulmod(const PrimeModulus& p, const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const PrimeModulus& p, Poly base, std::uint64_t e, const Poly& m);
Poly gcd(const PrimeModulus& p, Poly a, Poly b);
/// Rabin's test; f must be monic of degree >= 1.
bool is_irreducible(const PrimeModulus& p, const Poly& f);
}  // namespace poly

/// F_p[x]/(f) for a monic irreducible f of degree d. Elements are length-d
/// coefficient vectors in the power basis {1, x, ..., x^{d-1}}; basis index 0
/// is the unit.
class ExtensionField {
 public:
  ExtensionField(PrimeModulus p, Poly min_poly);

  const PrimeModulus& prime() const noexcept { return p_; }
  int degree() const noexcept { return d_; }
  const Poly& min_poly() const noexcept { return min_poly_; }

  /// x^i * x^j reduced, for 0 <= i, j < d.
  std::span<const Fp> basis_product(int i, int j) const {
    return {powers_.data() + static_cast<std::size_t>(i + j) * d_, static_cast<std::size_t>(d_)};
  }

  std::vector<Fp> zero() const { return std::vector<Fp>(d_, 0); }
  std::vector<Fp> one() const;
  std::vector<Fp> basis(int i) const;
  std::vector<Fp> add(std::span<const Fp> a, std::span<const Fp> b) const;
  std::vector<Fp> sub(std::span<const Fp> a, std::span<const Fp> b) const;
  std::vector<Fp> neg(std::span<const Fp> a) const;
  std::vector<Fp> mul(std::span<const Fp> a, std::span<const Fp> b) const;
  std::vector<Fp> scale(std::span<const Fp> a, Fp c) const;
  /// Throws InvalidArgument on zero.
  std::vector<Fp> inv(std::span<const Fp> a) const;
  bool is_zero(std::span<const Fp> a) const;

  /// Gram matrix of (u, t) -> coefficient of 1 in u*t on the power basis,
  /// row-major d x d.
  std::vector<Fp> unit_pairing_gram() const;

 private:
  PrimeModulus p_;
  int d_;
  Poly min_poly_;
  std::vector<Fp> powers_;  // x^0 .. x^{2d-2} reduced, d entries each
};

using FieldPtr = std::shared_ptr<const ExtensionField>;

/// Field defined by the smallest monic irreducible degree-d polynomial, where
/// candidates are ordered lexicographically on (c_{d-1}, ..., c_1, c_0).
/// Results are cached per (p, d).
FieldPtr make_extension(const PrimeModulus& p, int d);

/// Value type pairing a field with an element of it.
class FieldElement {
 public:
  FieldElement(FieldPtr field, std::vector<Fp> coeffs);
  static FieldElement zero(FieldPtr field);
  static FieldElement one(FieldPtr field);

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<Fp>& coeffs() const noexcept { return c_; }
  bool is_zero() const { return field_->is_zero(c_); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement inv() const;
  bool operator==(const FieldElement& o) const;

 private:
  void check_same(const FieldElement& o) const;

  FieldPtr field_;
  std::vector<Fp> c_;
};

}  // namespace specpot

#endif  // SPECPOT_FIELDS_HPP
