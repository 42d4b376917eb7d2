#pragma once

#include "tautring/rational.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace tautring {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using DenseMatrix = Matrix<Rational>;
using DenseVector = Vector<Rational>;
using Index = Eigen::Index;

template <typename Scalar>
struct RrefResult {
  Matrix<Scalar> reduced;
  std::vector<Index> pivots;  // strictly increasing
};

/// Plain Gauss-Jordan elimination over any exact field.
template <typename Scalar>
RrefResult<Scalar> rref_gauss_jordan(Matrix<Scalar> m) {
  RrefResult<Scalar> out;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    Scalar inv = Scalar(1) / m(row, col);
    for (Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Scalar f = m(r, col);
      for (Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

/// Reduced row echelon form. Rows are cleared of denominators and eliminated
/// fraction-free (Bareiss) before the final normalization.
RrefResult<Rational> rref(const DenseMatrix& m);

Index rank(const DenseMatrix& m);

/// Columns form a basis of {x : m x = 0}.
DenseMatrix kernel_basis(const DenseMatrix& m);

struct LinearSolution {
  DenseVector particular;
  DenseMatrix kernel;  // one basis vector per column
};

/// Exact solve of a x = b. std::nullopt means the system is inconsistent.
std::optional<LinearSolution> solve(const DenseMatrix& a, const DenseVector& b);

/// Incremental row echelon basis over sparse rational rows. The stored rows
/// are monic at their pivot (smallest nonzero column), and each row is reduced
/// against every pivot that existed when it was inserted.
class SparseEchelon {
 public:
  using Row = std::map<Index, Rational>;

  explicit SparseEchelon(Index columns) : columns_(columns) {}

  Index columns() const { return columns_; }
  Index rank() const { return static_cast<Index>(rows_.size()); }
  bool is_pivot(Index col) const { return rows_.count(col) != 0; }
  const std::map<Index, Row>& rows() const { return rows_; }

  /// Reduces `row` and stores it if it is independent. Returns true on growth.
  bool insert(Row row);

  /// Unique representative of `row` modulo the span: zero on every pivot column.
  Row reduce(Row row) const;

  std::vector<Index> non_pivots() const;

 private:
  Index columns_;
  std::map<Index, Row> rows_;
};

}  // namespace tautring
