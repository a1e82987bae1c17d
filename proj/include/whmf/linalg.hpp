#pragma once

#include <vector>

#include "whmf/series.hpp"

namespace whmf {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Rank over Q by Gaussian elimination.
int rational_rank(RationalMatrix rows);

// Indices of a maximal linearly independent subset of the rows, chosen
// greedily in order.
std::vector<int> independent_rows(const RationalMatrix& rows);

// Coefficient rows of q-expansions over exponents [lo, hi).
RationalMatrix coefficient_matrix(const std::vector<QSeries>& series, int lo, int hi);

// Solves sum_i c_i rows[i] = target exactly; returns nullopt-like empty
// vector with ok = false when target is not in the span.
struct SpanSolution {
  bool ok = false;
  std::vector<Rational> coefficients;
};
SpanSolution solve_in_span(const RationalMatrix& rows, const std::vector<Rational>& target);

}  // namespace whmf
