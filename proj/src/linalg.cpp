#include "whmf/linalg.hpp"

#include <algorithm>

namespace whmf {

namespace {

// Reduces rows in place to echelon form; returns pivot columns per pivot row.
std::vector<int> echelon(RationalMatrix& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

}  // namespace

int rational_rank(RationalMatrix rows) { return static_cast<int>(echelon(rows).size()); }

std::vector<int> independent_rows(const RationalMatrix& rows) {
  std::vector<int> keep;
  RationalMatrix acc;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RationalMatrix trial = acc;
    trial.push_back(rows[i]);
    if (rational_rank(trial) > static_cast<int>(acc.size())) {
      acc.push_back(rows[i]);
      keep.push_back(static_cast<int>(i));
    }
  }
  return keep;
}

RationalMatrix coefficient_matrix(const std::vector<QSeries>& series, int lo, int hi) {
  RationalMatrix m;
  for (const auto& s : series) {
    std::vector<Rational> row;
    row.reserve(std::max(0, hi - lo));
    for (int n = lo; n < hi; ++n) row.push_back(s.coeff(n));
    m.push_back(std::move(row));
  }
  return m;
}

SpanSolution solve_in_span(const RationalMatrix& rows, const std::vector<Rational>& target) {
  // Solve A^T c = target via elimination on the augmented column system.
  SpanSolution out;
  const std::size_t k = rows.size();
  const std::size_t n = target.size();
  RationalMatrix aug(n, std::vector<Rational>(k + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) aug[j][i] = rows[i][j];
    aug[j][k] = target[j];
  }
  std::vector<int> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && aug[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(aug[r], aug[piv]);
    Rational inv = 1 / aug[r][c];
    for (std::size_t j = c; j <= k; ++j) aug[r][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      Rational f = aug[i][c];
      for (std::size_t j = c; j <= k; ++j) aug[i][j] -= f * aug[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  for (std::size_t i = r; i < n; ++i) {
    if (aug[i][k] != 0) return out;
  }
  out.ok = true;
  out.coefficients.assign(k, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) out.coefficients[pivots[i]] = aug[i][k];
  return out;
}

}  // namespace whmf
