#include "bscycles/linear_solve.hpp"

#include <stdexcept>

namespace bscycles {

bool SparseEchelon::add_row(SparseVector row) {
  auto it = row.begin();
  while (it != row.end()) {
    const auto piv = pivots_.find(it->first);
    if (piv == pivots_.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    const Rational factor = it->second;
    for (const auto& [c, v] : piv->second) {
      auto [slot, inserted] = row.try_emplace(c, -factor * v);
      if (!inserted) {
        slot->second -= factor * v;
        if (slot->second == 0) row.erase(slot);
      }
    }
    // The pivot entry itself cancels; continue after it.
    it = row.upper_bound(col);
  }
  if (row.empty()) return false;
  const std::size_t lead = row.begin()->first;
  const Rational inv = Rational(1) / row.begin()->second;
  for (auto& [c, v] : row) v *= inv;
  pivots_.emplace(lead, std::move(row));
  return true;
}

std::vector<Rational> SparseEchelon::dependency(std::size_t column) const {
  if (column >= columns_) throw std::out_of_range("dependency column");
  if (is_pivot(column)) throw std::logic_error("dependency of a pivot column");
  std::vector<Rational> x(columns_);
  x[column] = 1;
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    const std::size_t p = it->first;
    if (p > column) continue;
    Rational acc = 0;
    for (const auto& [c, v] : it->second)
      if (c != p && x[c] != 0) acc += v * x[c];
    x[p] = -acc;
  }
  return x;
}

std::vector<std::vector<Rational>> SparseEchelon::nullspace() const {
  std::vector<std::vector<Rational>> basis;
  for (std::size_t c = 0; c < columns_; ++c) {
    if (is_pivot(c)) continue;
    // For a nullspace vector every later pivot is still determined by
    // back-substitution, so solve over all pivot rows.
    std::vector<Rational> x(columns_);
    x[c] = 1;
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const std::size_t p = it->first;
      Rational acc = 0;
      for (const auto& [col, v] : it->second)
        if (col != p && x[col] != 0) acc += v * x[col];
      x[p] = -acc;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<Rational> SparseEchelon::particular(std::size_t rhs) const {
  auto x = dependency(rhs);
  for (auto& v : x) v = -v;
  x[rhs] = 0;
  return x;
}

namespace {

std::vector<SparseVector> sparse_rows(const QMatrix& a, const QVector* b) {
  std::vector<SparseVector> rows(std::size_t(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) rows[std::size_t(i)].emplace(std::size_t(j), a(i, j));
    if (b && (*b)(i) != 0) rows[std::size_t(i)].emplace(std::size_t(a.cols()), (*b)(i));
  }
  return rows;
}

}  // namespace

std::vector<QVector> nullspace(const QMatrix& a) {
  SparseEchelon ech(std::size_t(a.cols()));
  for (auto& row : sparse_rows(a, nullptr)) ech.add_row(std::move(row));
  std::vector<QVector> out;
  for (const auto& v : ech.nullspace()) {
    QVector q(a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) q(j) = v[std::size_t(j)];
    if (!is_exact_zero(a * q)) throw std::logic_error("nullspace verification failed");
    out.push_back(std::move(q));
  }
  return out;
}

std::optional<AffineSolution> solve_linear_exact(const QMatrix& a, const QVector& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear_exact: dimension mismatch");
  const std::size_t n = std::size_t(a.cols());
  SparseEchelon ech(n + 1);
  for (auto& row : sparse_rows(a, &b)) ech.add_row(std::move(row));
  if (ech.is_pivot(n)) return std::nullopt;

  AffineSolution sol;
  const auto part = ech.particular(n);
  sol.particular = QVector(a.cols());
  for (std::size_t j = 0; j < n; ++j) sol.particular(Eigen::Index(j)) = part[j];
  for (const auto& v : ech.nullspace()) {
    if (v[n] != 0) continue;  // the rhs column itself
    QVector q(a.cols());
    for (std::size_t j = 0; j < n; ++j) q(Eigen::Index(j)) = v[j];
    sol.nullspace.push_back(std::move(q));
  }
  if (!is_exact_zero(a * sol.particular - b))
    throw std::logic_error("solve_linear_exact: particular solution failed substitution");
  for (const auto& v : sol.nullspace)
    if (!is_exact_zero(a * v))
      throw std::logic_error("solve_linear_exact: nullspace vector failed substitution");
  return sol;
}

}  // namespace bscycles
