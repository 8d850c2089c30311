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
// Exact linear algebra over F_p.

#ifndef SPECPOT_LINALG_HPP
#define SPECPOT_LINALG_HPP

#include <map>
#include <optional>
#include <vector>

#include "specpot/fields.hpp"

namespace specpot {

class FpMatrix {
 public:
  FpMatrix(PrimeModulus p, int rows, int cols)
      : p_(p), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

  const PrimeModulus& prime() const noexcept { return p_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  Fp& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  Fp operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  static FpMatrix identity(PrimeModulus p, int n);
  FpMatrix operator*(const FpMatrix& o) const;
  std::vector<Fp> apply(const std::vector<Fp>& v) const;

  /// In-place reduced row echelon form; returns pivot columns.
  std::vector<int> rref();
  int rank() const;

 private:
  PrimeModulus p_;
  int rows_;
  int cols_;
  std::vector<Fp> a_;
};

/// Solves A x = b. Returns nullopt when the system is inconsistent; when it is
/// underdetermined the free variables are set to zero.
std::optional<std::vector<Fp>> solve_linear(const FpMatrix& a, const std::vector<Fp>& b);

/// Basis of the right kernel {x : A x = 0}.
std::vector<std::vector<Fp>> kernel_basis(const FpMatrix& a);

/// Inverse of a square matrix, or nullopt if singular.
std::optional<FpMatrix> inverse(const FpMatrix& a);

/// Incremental row echelon basis for sparse rows. A row's leading entry is
/// its smallest column index, so ordering columns by degree makes the pivot
/// set describe the associated graded of the span.
class SparseEchelon {
 public:
  using Row = std::map<int, Fp>;

  explicit SparseEchelon(PrimeModulus p) : p_(p) {}

  /// Reduces the row against the basis; returns true if it enlarged the span.
  bool insert(Row row);
  /// Reduces a row against the current basis without inserting it.
  Row reduce(Row row) const;
  bool contains(const Row& row) const { return reduce(row).empty(); }

  int rank() const noexcept { return static_cast<int>(rows_.size()); }
  std::vector<int> pivots() const;
  const std::map<int, Row>& rows() const noexcept { return rows_; }

 private:
  PrimeModulus p_;
  std::map<int, Row> rows_;  // pivot column -> row with unit leading entry
};

}  // namespace specpot

#endif  // SPECPOT_LINALG_HPP
