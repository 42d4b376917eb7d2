#include "tautring/linalg.hpp"

#include <stdexcept>

namespace tautring {

namespace {

using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix clear_denominators(const DenseMatrix& m) {
  IntMatrix out(static_cast<std::size_t>(m.rows()),
                std::vector<mpz_class>(static_cast<std::size_t>(m.cols())));
  for (Index r = 0; r < m.rows(); ++r) {
    mpz_class lcm = 1;
    for (Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).get_den_mpz_t());
    }
    for (Index c = 0; c < m.cols(); ++c) {
      out[r][c] = m(r, c).get_num() * (lcm / m(r, c).get_den());
    }
  }
  return out;
}

}  // namespace

RrefResult<Rational> rref(const DenseMatrix& m) {
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  IntMatrix a = clear_denominators(m);

  // Fraction-free forward elimination. Every division by the previous pivot
  // is exact (Sylvester's identity), skipped columns included.
  std::vector<Index> pivots;
  mpz_class prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && a[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[row]);
    const mpz_class& piv = a[row][col];
    for (std::size_t r = row + 1; r < rows; ++r) {
      if (a[r][col] == 0) {
        for (std::size_t c = col + 1; c < cols; ++c) {
          if (a[r][c] == 0) continue;
          a[r][c] *= piv;
          mpz_divexact(a[r][c].get_mpz_t(), a[r][c].get_mpz_t(), prev.get_mpz_t());
        }
        continue;
      }
      mpz_class f = a[r][col];
      for (std::size_t c = col + 1; c < cols; ++c) {
        mpz_class v = piv * a[r][c] - f * a[row][c];
        mpz_divexact(a[r][c].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[r][col] = 0;
    }
    prev = piv;
    pivots.push_back(static_cast<Index>(col));
    ++row;
  }

  // Normalize pivots to one and clear above them.
  DenseMatrix red = DenseMatrix::Zero(m.rows(), m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    auto pc = static_cast<std::size_t>(pivots[r]);
    Rational inv(1);
    inv /= Rational(a[r][pc]);
    for (std::size_t c = pc; c < cols; ++c) {
      if (a[r][c] != 0) red(static_cast<Index>(r), static_cast<Index>(c)) = Rational(a[r][c]) * inv;
    }
  }
  for (std::size_t r = pivots.size(); r-- > 0;) {
    Index pc = pivots[r];
    for (std::size_t above = 0; above < r; ++above) {
      Rational f = red(static_cast<Index>(above), pc);
      if (f == 0) continue;
      for (Index c = pc; c < m.cols(); ++c) {
        if (red(static_cast<Index>(r), c) != 0)
          red(static_cast<Index>(above), c) -= f * red(static_cast<Index>(r), c);
      }
    }
  }
  return {std::move(red), std::move(pivots)};
}

Index rank(const DenseMatrix& m) {
  if (m.size() == 0) return 0;
  return static_cast<Index>(rref(m).pivots.size());
}

DenseMatrix kernel_basis(const DenseMatrix& m) {
  auto [red, pivots] = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  DenseMatrix k = DenseMatrix::Zero(m.cols(), m.cols() - static_cast<Index>(pivots.size()));
  Index out = 0;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    k(free, out) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) k(pivots[r], out) = -red(static_cast<Index>(r), free);
    ++out;
  }
  return k;
}

std::optional<LinearSolution> solve(const DenseMatrix& a, const DenseVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  DenseMatrix aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  auto [red, pivots] = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  LinearSolution sol;
  sol.particular = DenseVector::Zero(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) sol.particular(pivots[r]) = red(static_cast<Index>(r), a.cols());
  sol.kernel = kernel_basis(a);
  return sol;
}

bool SparseEchelon::insert(Row row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  Index pivot = row.begin()->first;
  Rational inv(1);
  inv /= row.begin()->second;
  for (auto& [c, v] : row) v *= inv;
  rows_.emplace(pivot, std::move(row));
  return true;
}

SparseEchelon::Row SparseEchelon::reduce(Row row) const {
  for (auto it = row.begin(); it != row.end();) {
    if (it->second == 0) {
      it = row.erase(it);
      continue;
    }
    Index col = it->first;
    auto piv = rows_.find(col);
    if (piv == rows_.end()) {
      ++it;
      continue;
    }
    Rational f = it->second;
    for (const auto& [c, v] : piv->second) {
      auto [slot, inserted] = row.try_emplace(c, 0);
      slot->second -= f * v;
    }
    it = row.upper_bound(col);
    // Later entries may have cancelled to zero; they are dropped lazily above.
  }
  for (auto it = row.begin(); it != row.end();) it = (it->second == 0) ? row.erase(it) : std::next(it);
  return row;
}

std::vector<Index> SparseEchelon::non_pivots() const {
  std::vector<Index> out;
  for (Index c = 0; c < columns_; ++c)
    if (!is_pivot(c)) out.push_back(c);
  return out;
}

}  // namespace tautring
