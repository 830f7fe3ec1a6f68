#pragma once

#include "afx/linalg/types.hpp"

#include <initializer_list>
#include <optional>
#include <vector>

namespace afx {

using RatMatrix = std::vector<RatVector>;

/// Dense matrix of arbitrary-precision integers, row-major.
///
/// Zero-sized matrices are allowed: a lattice of rank 0 or a homomorphism
/// onto the trivial group is naturally a d x 0 or 0 x d matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);
  static IntMatrix diagonal(const IntVector& diag);
  static IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector col(std::size_t j) const;
  std::vector<IntVector> columns() const;

  IntMatrix transpose() const;
  IntMatrix power(std::size_t k) const;

  bool is_zero() const;
  bool is_nonnegative() const;
  bool is_positive() const;
  Int max_abs_entry() const;

  /// Exact determinant by fraction-free (Bareiss) elimination.
  Int determinant() const;

  /// Rational inverse by Gauss-Jordan elimination; nullopt when singular.
  std::optional<RatMatrix> rational_inverse() const;

  // Row operations on this matrix, used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t target, std::size_t source, const Int& factor);
  void add_col_multiple(std::size_t target, std::size_t source, const Int& factor);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);
  /// rows (a, b) <- (p*a + q*b, r*a + s*b)
  void combine_rows(std::size_t a, std::size_t b, const Int& p, const Int& q, const Int& r, const Int& s);
  void combine_cols(std::size_t a, std::size_t b, const Int& p, const Int& q, const Int& r, const Int& s);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& v);
/// Row vector times matrix: (v^T a)^T.
IntVector left_multiply(const IntVector& v, const IntMatrix& a);
RatVector left_multiply(const RatVector& v, const IntMatrix& a);

std::string to_string(const IntMatrix& m);

}  // namespace afx
