#pragma once

#include <optional>
#include <string>
#include <vector>

#include "whmf/characters.hpp"
#include "whmf/eisenstein.hpp"
#include "whmf/numeric.hpp"

namespace whmf {

struct ProjectionConfig {
  int bits = 256;
  // Extra bits carried through the numeric solve on top of `bits`, so that the
  // reconstruction tolerance 10^-(digits(bits) - 10) is met after the loss
  // from conditioning.
  int guard_bits = 128;
  int precision = 200;
  long long denominator_bound = 1000000000;
  double residual_tolerance = 1e-25;
};

struct VerificationRecord {
  int basis_size = 0;
  int independent_size = 0;
  int nullspace_dimension = 0;
  bool span_membership = false;
  std::optional<bool> closed_form_match;
  double max_heldout_residual = 0;
  int evaluation_terms = 0;
  std::vector<std::string> identities;
};

struct PlusEisenstein {
  LevelData level{2};
  int weight = 0;
  CharacterPlus chi;
  QSeries series;
  VerificationRecord record;
};

// Dimension of the numeric solution space of the W_m eigen-equations on the
// Gamma_0(N) Eisenstein space (0 when that space is empty or the character
// has the wrong parity). By default only real combinations of the rational
// basis are searched, which is where a series with rational coefficients
// must lie; complex_coefficients gives the dimension over C.
int plus_nullspace_dimension(const LevelData& level, int k, const CharacterPlus& chi, const ProjectionConfig& config = {},
                             bool complex_coefficients = false);

// The normalized generator E_k^(chi). Throws EmptyPlusSpace,
// AmbiguousPlusSpace, ReconstructionFailed, ZeroConstantTerm,
// InvarianceFailure, ParityMismatch. Results are memoized per process.
PlusEisenstein project_plus(const LevelData& level, int k, const CharacterPlus& chi, const ProjectionConfig& config = {});

// The series of project_plus to O(q^precision); the projection runs at a
// rounded-up precision so that nearby requests share one memo entry.
QSeries plus_series(const LevelData& level, int k, const CharacterPlus& chi, int precision,
                    const ProjectionConfig& config = {});

// a + b sqrt(d), d squarefree and possibly negative.
struct QuadraticSeries {
  int d = 1;
  QSeries a;
  QSeries b;
};

QuadraticSeries mul(const QuadraticSeries& x, const QuadraticSeries& y);

// E_k^(chi) over Q(i) or a quadratic field Q(sqrt(+-d)) with d | N, for the
// generators that have no rational form. The rational generator comes back
// with d = 1, b = 0. For real fields the Galois conjugate is the generator
// for chi with the W-values at the primes of d negated. Throws what
// project_plus throws, ReconstructionFailed when no field fits.
QuadraticSeries plus_series_quadratic(const LevelData& level, int k, const CharacterPlus& chi, int precision,
                                      const ProjectionConfig& config = {});

// Whether the plus space is expected to vanish: wrong parity or inconsistent
// W-values, weight 0 with nontrivial chi, weight 1 unless chi is psi or the
// default auxiliary character, weight 2 with trivial chi.
bool plus_space_expected_empty(const LevelData& level, int k, const CharacterPlus& chi);

// (E(z) + eps N^{k/2} E(N z)) / (1 + eps N^{k/2}) for the level one
// Eisenstein series E of even weight k >= 4 and prime N.
QSeries closed_symmetrization(const LevelData& level, int k, int eps, int precision);

// Candidates for the auxiliary character whose weight one plus space is
// nonzero over C, in the order of aux_candidates.
std::vector<CharacterPlus> aux_weight_one_candidates(const LevelData& level, const ProjectionConfig& config = {});

}  // namespace whmf
