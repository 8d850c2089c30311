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
#include "specpot/linalg.hpp"

#include <utility>

#include "specpot/error.hpp"

namespace specpot {

FpMatrix FpMatrix::identity(PrimeModulus p, int n) {
  FpMatrix m(p, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  require(cols_ == o.rows_, ErrorCode::InvalidArgument, "matrix dimension mismatch");
  FpMatrix r(p_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Fp a = (*this)(i, k);
      if (!a) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) = p_.add(r(i, j), p_.mul(a, o(k, j)));
    }
  return r;
}

std::vector<Fp> FpMatrix::apply(const std::vector<Fp>& v) const {
  require(static_cast<int>(v.size()) == cols_, ErrorCode::InvalidArgument, "matrix dimension mismatch");
  std::vector<Fp> r(rows_, 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] = p_.add(r[i], p_.mul((*this)(i, j), v[j]));
  return r;
}

std::vector<int> FpMatrix::rref() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int sel = -1;
    for (int r = row; r < rows_; ++r)
      if ((*this)(r, col)) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < cols_; ++j) std::swap((*this)(sel, j), (*this)(row, j));
    const Fp iv = p_.inv((*this)(row, col));
    for (int j = col; j < cols_; ++j) (*this)(row, j) = p_.mul((*this)(row, j), iv);
    for (int r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const Fp f = (*this)(r, col);
      if (!f) continue;
      for (int j = col; j < cols_; ++j) (*this)(r, j) = p_.sub((*this)(r, j), p_.mul(f, (*this)(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int FpMatrix::rank() const {
  FpMatrix c = *this;
  return static_cast<int>(c.rref().size());
}

std::optional<std::vector<Fp>> solve_linear(const FpMatrix& a, const std::vector<Fp>& b) {
  require(static_cast<int>(b.size()) == a.rows(), ErrorCode::InvalidArgument,
          "right-hand side length differs from row count");
  const int n = a.cols();
  FpMatrix aug(a.prime(), a.rows(), n + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i] % a.prime().value();
  }
  auto piv = aug.rref();
  std::vector<Fp> x(n, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == n) return std::nullopt;
    x[piv[r]] = aug(static_cast<int>(r), n);
  }
  return x;
}

std::vector<std::vector<Fp>> kernel_basis(const FpMatrix& a) {
  FpMatrix m = a;
  auto piv = m.rref();
  const int n = a.cols();
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<Fp>> out;
  const auto& p = a.prime();
  for (int free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    std::vector<Fp> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = p.neg(m(static_cast<int>(r), free));
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<FpMatrix> inverse(const FpMatrix& a) {
  require(a.rows() == a.cols(), ErrorCode::InvalidArgument, "inverse of a non-square matrix");
  const int n = a.rows();
  FpMatrix aug(a.prime(), n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = aug.rref();
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  FpMatrix inv(a.prime(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

SparseEchelon::Row SparseEchelon::reduce(Row row) const {
  for (auto it = row.begin(); it != row.end();) {
    if (it->second == 0) {
      it = row.erase(it);
      continue;
    }
    auto pr = rows_.find(it->first);
    if (pr == rows_.end()) {
      ++it;
      continue;
    }
    const Fp f = it->second;
    const int col = it->first;
    for (const auto& [c, v] : pr->second) {
      Fp& slot = row[c];
      slot = p_.sub(slot, p_.mul(f, v));
    }
    // entries below col were untouched; restart at col (now zero)
    it = row.find(col);
  }
  return row;
}

bool SparseEchelon::insert(Row row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  const int lead = row.begin()->first;
  const Fp iv = p_.inv(row.begin()->second);
  for (auto& [c, v] : row) v = p_.mul(v, iv);
  rows_.emplace(lead, std::move(row));
  return true;
}

std::vector<int> SparseEchelon::pivots() const {
  std::vector<int> out;
  out.reserve(rows_.size());
  for (const auto& [c, r] : rows_) out.push_back(c);
  return out;
}

}  // namespace specpot
