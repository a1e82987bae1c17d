#pragma once

#include <string>
#include <vector>

#include "whmf/characters.hpp"
#include "whmf/level.hpp"
#include "whmf/series.hpp"

namespace whmf {

// One spanning element f_k(l z; chi1, chi2) of the Eisenstein space
// E_k(N, chi) for Gamma_0(N). Before scaling, the coefficient of q^n (n >= 1)
// is sum_{d|n} chi1(n/d) chi2(d) d^{k-1}; the constant term is
// -B_{k,chi2}/(2k) when chi1 is trivial and 0 otherwise.
struct EisBasisElement {
  int weight = 0;
  RealCharacter chi1;
  RealCharacter chi2;
  int scale = 1;
  // Weight two, trivial character: E_2(z) - p E_2(p z), with p = special_prime.
  bool weight_two_special = false;
  int special_prime = 0;
  QSeries series;

  std::string label() const;
};

// Unscaled series for the pair (chi1, chi2), both primitive.
QSeries eisenstein_pair_series(int k, const RealCharacter& chi1, const RealCharacter& chi2, int precision);
// E_2 = 1 - 24 sum sigma_1(n) q^n (quasimodular).
QSeries e2_series(int precision);

// The spanning list of E_k(N, chi). Weight 0 returns the constant 1 for the
// trivial character. Throws ParityMismatch or EmptyFamily.
std::vector<EisBasisElement> eisenstein_basis(const LevelData& level, int k, const RealCharacter& chi, int precision);

// d_k(N, chi) by the case table for prime and biprime N. Weight 0 and the
// trivial character in weight 1 give 0 where the table says so; any other
// parity mismatch throws ParityMismatch.
int dimension_d(const LevelData& level, int k, const RealCharacter& chi);

// ceil(k * sigma1(N) / 12) + 5.
int rank_precision_bound(const LevelData& level, int k);

// Rank over Q of the coefficient matrix on exponents 0..P-1. Throws
// InsufficientPrecision when P is below rank_precision_bound.
int rank_check(const LevelData& level, const std::vector<EisBasisElement>& basis, int precision);

}  // namespace whmf
