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
#include "specpot/exchange.hpp"

#include <numeric>
#include <queue>
#include <string>

#include "specpot/error.hpp"

namespace specpot {

ExchangeMatrix::ExchangeMatrix(const std::vector<std::vector<std::int64_t>>& rows)
    : n_(static_cast<int>(rows.size())), b_() {
  b_.reserve(rows.size() * rows.size());
  for (const auto& r : rows) {
    require(r.size() == rows.size(), ErrorCode::InvalidArgument, "exchange matrix must be square");
    b_.insert(b_.end(), r.begin(), r.end());
  }
}

ExchangeMatrix::ExchangeMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : ExchangeMatrix(std::vector<std::vector<std::int64_t>>(rows.begin(), rows.end())) {}

std::vector<std::vector<std::int64_t>> ExchangeMatrix::rows() const {
  std::vector<std::vector<std::int64_t>> out(n_);
  for (int i = 0; i < n_; ++i) out[i].assign(b_.begin() + static_cast<std::ptrdiff_t>(i) * n_,
                                              b_.begin() + static_cast<std::ptrdiff_t>(i + 1) * n_);
  return out;
}

bool is_skew_symmetrizer(const ExchangeMatrix& b, const SkewSymmetrizer& d) {
  const int n = b.size();
  if (static_cast<int>(d.diag.size()) != n) return false;
  for (auto v : d.diag)
    if (v <= 0) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (d.diag[i] * b(i, j) != -d.diag[j] * b(j, i)) return false;
  return true;
}

std::optional<SkewSymmetrizer> find_skew_symmetrizer(const ExchangeMatrix& b) {
  const int n = b.size();
  for (int i = 0; i < n; ++i)
    if (b(i, i) != 0) return std::nullopt;
  // Each d_i is held as a reduced fraction num/den relative to its component root.
  std::vector<std::int64_t> num(n, 0), den(n, 1);
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    num[root] = 1;
    comp[root] = ncomp;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int i = q.front();
      q.pop();
      for (int j = 0; j < n; ++j) {
        if (b(i, j) == 0 && b(j, i) == 0) continue;
        // d_i b_ij = -d_j b_ji with opposite nonzero signs
        if (b(i, j) == 0 || b(j, i) == 0 || (b(i, j) > 0) == (b(j, i) > 0)) return std::nullopt;
        std::int64_t nn = num[i] * b(i, j);
        std::int64_t dd = den[i] * -b(j, i);
        if (dd < 0) {
          nn = -nn;
          dd = -dd;
        }
        const std::int64_t g = std::gcd(nn, dd);
        nn /= g;
        dd /= g;
        if (comp[j] < 0) {
          comp[j] = ncomp;
          num[j] = nn;
          den[j] = dd;
          q.push(j);
        } else if (num[j] != nn || den[j] != dd) {
          return std::nullopt;
        }
      }
    }
    ++ncomp;
  }
  SkewSymmetrizer d{std::vector<std::int64_t>(n, 0)};
  for (int c = 0; c < ncomp; ++c) {
    std::int64_t l = 1;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) l = std::lcm(l, den[i]);
    std::int64_t g = 0;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) {
        d.diag[i] = num[i] * (l / den[i]);
        g = std::gcd(g, d.diag[i]);
      }
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) d.diag[i] /= g;
  }
  if (!is_skew_symmetrizer(b, d)) return std::nullopt;
  return d;
}

bool check_divisibility(const ExchangeMatrix& b, const SkewSymmetrizer& d) {
  require(is_skew_symmetrizer(b, d), ErrorCode::Precondition, "D is not a skew-symmetrizer of B");
  const int n = b.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (b(i, j) % d.diag[j] != 0) return false;
  return true;
}

ExchangeMatrix matrix_mutate(const ExchangeMatrix& b, int k) {
  const int n = b.size();
  require(k >= 0 && k < n, ErrorCode::InvalidArgument,
          "mutation index " + std::to_string(k + 1) + " out of range 1.." + std::to_string(n));
  ExchangeMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k) {
        out(i, j) = -b(i, j);
      } else {
        const std::int64_t prod = b(i, k) * b(k, j);
        const std::int64_t sgn = (b(i, k) > 0) - (b(i, k) < 0);
        out(i, j) = b(i, j) + sgn * std::max<std::int64_t>(0, prod);
      }
    }
  return out;
}

ExchangeMatrix family_matrix(std::int64_t a, std::int64_t b) {
  require(a > 0 && b > 0, ErrorCode::InvalidArgument, "a and b must be positive");
  require(a < b, ErrorCode::InvalidArgument, "a must be smaller than b");
  require(b % a != 0, ErrorCode::InvalidArgument, "a must not divide b");
  require(std::gcd(a, b) != 1, ErrorCode::InvalidArgument, "a and b must not be coprime");
  return ExchangeMatrix{{0, -a, 0, b}, {1, 0, -1, 0}, {0, a, 0, -b}, {-1, 0, 1, 0}};
}

bool is_strongly_primitive_proxy(const ExchangeMatrix& b) {
  auto d = find_skew_symmetrizer(b);
  require(d.has_value(), ErrorCode::Precondition, "matrix is not skew-symmetrizable");
  const auto& v = d->diag;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (std::gcd(v[i], v[j]) != 1) return false;
  return true;
}

}  // namespace specpot
