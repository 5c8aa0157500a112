#pragma once

#include "kahler/jet.hpp"

#include <vector>

namespace kahler {

/// Dense rectangular matrix of jets sharing one variable count and validity.
class JetMatrix {
 public:
  JetMatrix() = default;
  JetMatrix(int rows, int cols, int n, int valid_degree);

  static JetMatrix identity(int size, int n, int valid_degree);
  /// Row-major construction; validity becomes the minimum over entries.
  static JetMatrix from_rows(const std::vector<std::vector<Jet>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int n() const { return n_; }
  int valid_degree() const { return valid_; }
  bool square() const { return rows_ == cols_; }

  const Jet& operator()(int r, int c) const { return cells_[r * cols_ + c]; }
  /// Replaces one entry, re-truncating to the shared validity.
  void set(int r, int c, const Jet& value);

  JetMatrix operator*(const JetMatrix& o) const;
  JetMatrix operator+(const JetMatrix& o) const;
  JetMatrix operator-(const JetMatrix& o) const;
  JetMatrix transpose() const;
  /// Entrywise conjugation (no transpose).
  JetMatrix conj() const;
  JetMatrix truncated(int degree) const;

  /// Constant terms as a rational matrix, row-major.
  std::vector<Rational> constant_part() const;
  bool is_zero() const;

  friend bool operator==(const JetMatrix&, const JetMatrix&) = default;

 private:
  int rows_ = 0, cols_ = 0, n_ = 0, valid_ = 0;
  std::vector<Jet> cells_;
};

/// Determinant by cofactor expansion with memoised minors.
Jet det(const JetMatrix& m);

/// Inverse via the constant-term inverse and a Neumann series in the
/// non-constant part. Requires an invertible constant matrix.
JetMatrix inverse(const JetMatrix& m);

}  // namespace kahler
