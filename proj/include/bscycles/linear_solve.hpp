#pragma once

#include "bscycles/rational.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace bscycles {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;

/// Exact zero test; Eigen's isZero() uses a precision threshold.
template <typename Derived>
bool is_exact_zero(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != Scalar(0)) return false;
  return true;
}

template <typename Scalar>
Matrix<Scalar> matrix_power(const Matrix<Scalar>& m, unsigned k) {
  Matrix<Scalar> r = Matrix<Scalar>::Identity(m.rows(), m.cols());
  for (unsigned i = 0; i < k; ++i) r = (r * m).eval();
  return r;
}

using SparseVector = std::map<std::size_t, Rational>;

/// Row echelon form over Q built one row at a time. Pivots are always the
/// leftmost surviving column of a row, so a column is a non-pivot column
/// exactly when it lies in the span of the columns to its left.
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t columns) : columns_(columns) {}

  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return pivots_.size(); }

  /// Reduce and insert a row. Returns false when it reduced to zero.
  bool add_row(SparseVector row);

  bool is_pivot(std::size_t column) const { return pivots_.count(column) != 0; }

  /// Solves sum_i x_i col_i = -col_j using only columns i < j, free columns
  /// set to zero; the returned vector has x_j = 1. Requires !is_pivot(j).
  std::vector<Rational> dependency(std::size_t column) const;

  /// Basis of the right nullspace, one vector per free column.
  std::vector<std::vector<Rational>> nullspace() const;

  /// Particular solution of [A | b] where b is column `rhs` (which must not
  /// be a pivot column); other free columns are zero. It is the
  /// dependency of the rhs column with sign flipped.
  std::vector<Rational> particular(std::size_t rhs) const;

 private:
  std::size_t columns_;
  std::map<std::size_t, SparseVector> pivots_;  // pivot column -> row
};

struct AffineSolution {
  QVector particular;
  std::vector<QVector> nullspace;
};

/// Solves A x = b exactly. nullopt when the system is inconsistent. Every
/// returned solution is re-verified by substitution.
std::optional<AffineSolution> solve_linear_exact(const QMatrix& a, const QVector& b);

/// Rank-revealing helper: dimension of the nullspace of A and a basis.
std::vector<QVector> nullspace(const QMatrix& a);

}  // namespace bscycles
