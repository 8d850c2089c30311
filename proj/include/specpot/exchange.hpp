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
// Integer exchange matrices: skew-symmetrizers, matrix mutation and the
// non-coprime 4x4 family.

#ifndef SPECPOT_EXCHANGE_HPP
#define SPECPOT_EXCHANGE_HPP

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

namespace specpot {

class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;
  explicit ExchangeMatrix(int n) : n_(n), b_(static_cast<std::size_t>(n) * n, 0) {}
  /// Throws InvalidArgument unless the rows form a square matrix.
  explicit ExchangeMatrix(const std::vector<std::vector<std::int64_t>>& rows);
  ExchangeMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  int size() const noexcept { return n_; }
  std::int64_t operator()(int i, int j) const { return b_[static_cast<std::size_t>(i) * n_ + j]; }
  std::int64_t& operator()(int i, int j) { return b_[static_cast<std::size_t>(i) * n_ + j]; }
  std::vector<std::vector<std::int64_t>> rows() const;

  bool operator==(const ExchangeMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<std::int64_t> b_;
};

struct SkewSymmetrizer {
  std::vector<std::int64_t> diag;

  bool operator==(const SkewSymmetrizer&) const = default;
};

/// True iff d_i b_ij = -d_j b_ji for all i, j and every d_i > 0.
bool is_skew_symmetrizer(const ExchangeMatrix& b, const SkewSymmetrizer& d);

/// Componentwise-minimal positive skew-symmetrizer, fixed per connected
/// component of the nonzero pattern; nullopt if none exists.
std::optional<SkewSymmetrizer> find_skew_symmetrizer(const ExchangeMatrix& b);

/// d_j | b_ij for all i, j. Throws Precondition if d does not skew-symmetrize b.
bool check_divisibility(const ExchangeMatrix& b, const SkewSymmetrizer& d);

/// Fomin-Zelevinsky mutation at 0-based index k.
ExchangeMatrix matrix_mutate(const ExchangeMatrix& b, int k);

/// The 4x4 family with rows [0,-a,0,b], [1,0,-1,0], [0,a,0,-b], [-1,0,1,0].
/// Requires 0 < a < b, a not dividing b and gcd(a, b) != 1.
ExchangeMatrix family_matrix(std::int64_t a, std::int64_t b);

/// Pairwise coprimality of the minimal skew-symmetrizer's entries, used as a
/// stand-in for strong primitivity. Throws Precondition if b is not
/// skew-symmetrizable.
bool is_strongly_primitive_proxy(const ExchangeMatrix& b);

}  // namespace specpot

#endif  // SPECPOT_EXCHANGE_HPP
