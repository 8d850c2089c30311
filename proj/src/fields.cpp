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
#include "specpot/fields.hpp"

#include <map>
#include <mutex>
#include <string>

#include "specpot/error.hpp"
#include "specpot/linalg.hpp"

namespace specpot {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

PrimeModulus::PrimeModulus(std::uint32_t p) : p_(p) {
  require(p < (1u << 31), ErrorCode::InvalidArgument, "prime modulus must be below 2^31");
  require(is_prime(p), ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
}

Fp PrimeModulus::pow(Fp a, std::uint64_t e) const noexcept {
  Fp r = 1 % p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fp PrimeModulus::inv(Fp a) const {
  require(a % p_ != 0, ErrorCode::InvalidArgument, "inverse of zero");
  return pow(a, p_ - 2);
}

namespace poly {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly mul(const PrimeModulus& p, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = p.add(r[i + j], p.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

Poly mod(const PrimeModulus& p, Poly a, const Poly& m) {
  Poly mm = m;
  trim(mm);
  require(!mm.empty(), ErrorCode::InvalidArgument, "polynomial division by zero");
  trim(a);
  const std::size_t dm = mm.size() - 1;
  const Fp lead_inv = p.inv(mm.back());
  while (a.size() > dm) {
    const Fp c = p.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = p.sub(a[shift + i], p.mul(c, mm[i]));
    trim(a);
  }
  return a;
}

Poly mulmod(const PrimeModulus& p, const Poly& a, const Poly& b, const Poly& m) {
  return mod(p, mul(p, a, b), m);
}

Poly powmod(const PrimeModulus& p, Poly base, std::uint64_t e, const Poly& m) {
  Poly r = mod(p, Poly{1}, m);
  base = mod(p, std::move(base), m);
  while (e) {
    if (e & 1) r = mulmod(p, r, base, m);
    base = mulmod(p, base, base, m);
    e >>= 1;
  }
  return r;
}

Poly gcd(const PrimeModulus& p, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(p, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Fp li = p.inv(a.back());
    for (auto& c : a) c = p.mul(c, li);
  }
  return a;
}

bool is_irreducible(const PrimeModulus& p, const Poly& f) {
  Poly g = f;
  trim(g);
  require(g.size() >= 2 && g.back() == 1, ErrorCode::InvalidArgument,
          "irreducibility test needs a monic polynomial of degree >= 1");
  const int d = static_cast<int>(g.size()) - 1;
  if (d == 1) return true;
  // frob[i] = x^{p^i} mod f
  std::vector<Poly> frob(d + 1);
  frob[0] = mod(p, Poly{0, 1}, g);
  for (int i = 1; i <= d; ++i) frob[i] = powmod(p, frob[i - 1], p.value(), g);
  auto minus_x = [&](Poly h) {
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = p.sub(h[1], 1);
    trim(h);
    return h;
  };
  if (!minus_x(frob[d]).empty()) return false;
  for (int q = 2; q <= d; ++q) {
    if (d % q != 0 || !is_prime(q)) continue;
    Poly h = gcd(p, g, minus_x(frob[d / q]));
    if (h.size() != 1) return false;
  }
  return true;
}

}  // namespace poly

ExtensionField::ExtensionField(PrimeModulus p, Poly min_poly)
    : p_(p), d_(static_cast<int>(min_poly.size()) - 1), min_poly_(std::move(min_poly)) {
  require(d_ >= 1 && min_poly_.back() == 1, ErrorCode::InvalidArgument,
          "minimal polynomial must be monic of degree >= 1");
  for (auto c : min_poly_) require(c < p_.value(), ErrorCode::InvalidArgument, "coefficient not reduced");
  require(poly::is_irreducible(p_, min_poly_), ErrorCode::InvalidArgument, "minimal polynomial is reducible");
  const int count = 2 * d_ - 1;
  powers_.assign(static_cast<std::size_t>(count) * d_, 0);
  std::vector<Fp> cur(d_, 0);
  cur[0] = 1;
  for (int e = 0; e < count; ++e) {
    std::copy(cur.begin(), cur.end(), powers_.begin() + static_cast<std::ptrdiff_t>(e) * d_);
    // multiply by x: shift up, reduce x^d = -sum c_i x^i
    const Fp top = cur[d_ - 1];
    for (int i = d_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (int i = 0; i < d_; ++i) cur[i] = p_.sub(cur[i], p_.mul(top, min_poly_[i]));
  }
}

std::vector<Fp> ExtensionField::one() const { return basis(0); }

std::vector<Fp> ExtensionField::basis(int i) const {
  std::vector<Fp> r(d_, 0);
  r[i] = 1;
  return r;
}

std::vector<Fp> ExtensionField::add(std::span<const Fp> a, std::span<const Fp> b) const {
  std::vector<Fp> r(d_);
  for (int i = 0; i < d_; ++i) r[i] = p_.add(a[i], b[i]);
  return r;
}

std::vector<Fp> ExtensionField::sub(std::span<const Fp> a, std::span<const Fp> b) const {
  std::vector<Fp> r(d_);
  for (int i = 0; i < d_; ++i) r[i] = p_.sub(a[i], b[i]);
  return r;
}

std::vector<Fp> ExtensionField::neg(std::span<const Fp> a) const {
  std::vector<Fp> r(d_);
  for (int i = 0; i < d_; ++i) r[i] = p_.neg(a[i]);
  return r;
}

std::vector<Fp> ExtensionField::scale(std::span<const Fp> a, Fp c) const {
  std::vector<Fp> r(d_);
  for (int i = 0; i < d_; ++i) r[i] = p_.mul(a[i], c);
  return r;
}

std::vector<Fp> ExtensionField::mul(std::span<const Fp> a, std::span<const Fp> b) const {
  std::vector<Fp> r(d_, 0);
  for (int i = 0; i < d_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d_; ++j) {
      if (b[j] == 0) continue;
      const Fp c = p_.mul(a[i], b[j]);
      auto pr = basis_product(i, j);
      for (int k = 0; k < d_; ++k)
        if (pr[k]) r[k] = p_.add(r[k], p_.mul(c, pr[k]));
    }
  }
  return r;
}

bool ExtensionField::is_zero(std::span<const Fp> a) const {
  for (auto c : a)
    if (c) return false;
  return true;
}

std::vector<Fp> ExtensionField::inv(std::span<const Fp> a) const {
  require(!is_zero(a), ErrorCode::InvalidArgument, "inverse of zero field element");
  // Solve (multiplication-by-a) z = 1.
  FpMatrix m(p_, d_, d_);
  for (int j = 0; j < d_; ++j) {
    auto col = mul(a, basis(j));
    for (int i = 0; i < d_; ++i) m(i, j) = col[i];
  }
  auto z = solve_linear(m, one());
  require(z.has_value(), ErrorCode::Internal, "field element not invertible");
  return *z;
}

std::vector<Fp> ExtensionField::unit_pairing_gram() const {
  std::vector<Fp> g(static_cast<std::size_t>(d_) * d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) g[static_cast<std::size_t>(i) * d_ + j] = basis_product(i, j)[0];
  return g;
}

FieldPtr make_extension(const PrimeModulus& p, int d) {
  require(d >= 1, ErrorCode::InvalidArgument, "extension degree must be positive");
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p.value(), d);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  // Odometer over (c_0, ..., c_{d-1}) with c_0 fastest, which enumerates in
  // lexicographic order of (c_{d-1}, ..., c_0).
  Poly f(d + 1, 0);
  f[d] = 1;
  for (;;) {
    if (poly::is_irreducible(p, f)) break;
    int i = 0;
    while (i < d && ++f[i] == p.value()) f[i++] = 0;
    require(i < d, ErrorCode::Internal, "no irreducible polynomial found");
  }
  auto field = std::make_shared<const ExtensionField>(p, f);
  cache.emplace(key, field);
  return field;
}

FieldElement::FieldElement(FieldPtr field, std::vector<Fp> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  require(field_ != nullptr, ErrorCode::InvalidArgument, "null field");
  require(static_cast<int>(c_.size()) == field_->degree(), ErrorCode::InvalidArgument,
          "coefficient vector length differs from field degree");
  for (auto& c : c_) c %= field_->prime().value();
}

FieldElement FieldElement::zero(FieldPtr field) {
  auto z = field->zero();
  return {std::move(field), std::move(z)};
}

FieldElement FieldElement::one(FieldPtr field) {
  auto o = field->one();
  return {std::move(field), std::move(o)};
}

void FieldElement::check_same(const FieldElement& o) const {
  require(field_ == o.field_ || (field_->min_poly() == o.field_->min_poly() && field_->prime() == o.field_->prime()),
          ErrorCode::InvalidArgument, "field elements belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->add(c_, o.c_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->sub(c_, o.c_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(c_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->mul(c_, o.c_)};
}
FieldElement FieldElement::inv() const { return {field_, field_->inv(c_)}; }
bool FieldElement::operator==(const FieldElement& o) const {
  check_same(o);
  return c_ == o.c_;
}

}  // namespace specpot
