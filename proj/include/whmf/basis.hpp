#pragma once

#include <optional>
#include <vector>

#include "whmf/hauptmodul.hpp"

namespace whmf {

// Smallest k' >= 0 with k' = k mod k1 and M_{k'}(Gamma_0(N)^+, chi psi^{k'-k})
// nonzero, by ascending search over the plus-space emptiness rules. Throws
// ParityMismatch, or HypothesisViolated for characters with inconsistent
// W-values (no weight carries forms).
int k_min(const LevelData& level, const CharacterPlus& chi, int k);

// The case table of the minimal weight theorem. Empty when the table's
// branches overlap (k1 <= 2) and so do not determine k'.
std::optional<int> k_min_closed_form(const LevelData& level, const CharacterPlus& chi, int k);

// E_{k'} (E_{k1}^{(psi^k1)})^r Delta^s, r + s = (k - k')/k1, ordered by s.
// Throws EmptyBelowMinimalWeight when k < k'.
std::vector<QSeries> holomorphic_basis(const LevelData& level, const CharacterPlus& chi, int k, int precision,
                                       const ProjectionConfig& config = {});

struct BasisElement {
  LevelData level{2};
  int weight = 0;
  CharacterPlus chi;
  int m = 0;
  int k_prime = 0;
  int ell = 0;
  int degree = 0;
  QSeries series;
  // Faber polynomial, highest degree first; monic.
  std::vector<Rational> faber;

  bool is_integral() const;
};

// f_{k,m} for m = -ell .. m_max, all to O(q^precision). Throws
// IndexBelowRange. Integrality is left to the caller.
std::vector<BasisElement> f_family(const LevelData& level, const CharacterPlus& chi, int k, int m_max, int precision,
                                   const ProjectionConfig& config = {});
BasisElement f_basis(const LevelData& level, const CharacterPlus& chi, int k, int m, int precision,
                     const ProjectionConfig& config = {});

// Delta^ell E_{k'} F(j_N), recomputed from the Faber polynomial.
QSeries factorized_form(const BasisElement& f, int precision, const ProjectionConfig& config = {});

// a_k(m, n): the coefficient of q^n in f_{k,m}. Throws IndexBelowRange,
// NonIntegralCoefficient.
Integer coefficient_a(const LevelData& level, const CharacterPlus& chi, int k, int m, int n,
                      const ProjectionConfig& config = {});

}  // namespace whmf
