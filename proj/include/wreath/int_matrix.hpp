#pragma once

#include <cstddef>
#include <iosfwd>
#include <initializer_list>
#include <vector>

#include <gmpxx.h>

namespace wreath {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  bool is_zero() const;
  void append_row(const std::vector<mpz_class>& row);
  std::vector<mpz_class> row(std::size_t r) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& k);
  void negate_row(std::size_t r);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Exact determinant of a square matrix (fraction-free Bareiss elimination).
mpz_class determinant(const IntMatrix& m);

struct SmithDecomposition {
  IntMatrix D;  ///< diagonal, d_1 | d_2 | ..., entries >= 0
  IntMatrix U;  ///< unimodular, rows x rows
  IntMatrix V;  ///< unimodular, cols x cols
};

/// Smith normal form with transforms: D = U * M * V.
///
/// Pivoting picks the smallest nonzero absolute value in the active block,
/// ties broken by (row, col). Total function; the zero matrix gives D = 0.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Diagonal of a Smith form, padded with zeros to `cols` entries.
std::vector<mpz_class> smith_diagonal(const IntMatrix& D);

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
///
/// Returns only the nonzero rows: echelon form with positive pivots and the
/// entries above each pivot reduced into [0, pivot). Two generating sets span
/// the same lattice iff their Hermite forms are equal.
IntMatrix hermite_form(const IntMatrix& m);

/// Rank over the rationals.
std::size_t matrix_rank(const IntMatrix& m);

/// Inverse of a unimodular matrix. Throws std::invalid_argument otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace wreath
