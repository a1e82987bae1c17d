#pragma once

#include <string>
#include <vector>

#include "whmf/plus_projection.hpp"

namespace whmf {

// j_N = q^-1 + sum_{n>=1} c_n q^n.
struct Hauptmodul {
  LevelData level{2};
  QSeries series;
  // c[n] for 0 <= n < precision; c[0] = 0.
  std::vector<Integer> c;
};

// j_N = integrate_theta(-E_{2+k1} / Delta_N), known to O(q^precision).
// Throws ConstantTermObstruction, NonIntegralCoefficient. Memoized per level.
Hauptmodul hauptmodul(const LevelData& level, int precision, const ProjectionConfig& config = {});

struct InvarianceReport {
  int points = 0;
  double max_residual = 0;
  std::vector<std::string> checks;  // e.g. "T", "gamma=(1,0;N,1)", "W_N"
};

// |j(g z) - j(z)| / max(1, |j(z)|) below tolerance for g = T, (1,0;N,1) and
// W_N at `points` points each. The series must carry enough terms for the
// requested tolerance (terms_for_invariance). Throws InvarianceFailure or
// TailBoundTooLarge.
InvarianceReport verify_numeric_invariance(const Hauptmodul& h, int points = 10, double tolerance = 1e-20, int bits = 256);
// Truncation that makes the tail of j_N negligible at the invariance sample
// points.
int terms_for_invariance(const LevelData& level, int bits = 256);

struct FactorizationReport {
  bool skipped = false;
  bool holds = false;
  bool matches_hauptmodul = false;
  int weight = 0;
  int complement_weight = 0;
  std::string chi;
  std::string chi_tilde;
};

// E_k^(chi) E_{2+k1-k}^(chi~) = E_{2+k1}^(chi^(N)) = -theta(j_N) Delta_N with
// chi chi~ = psi^{k1}, exactly to O(q^precision). Requires k = k'(N, chi, k)
// (HypothesisViolated otherwise); k = 2+k1 is reported as skipped. Throws
// IdentityFailure when an equality fails.
FactorizationReport verify_factorization(const LevelData& level, const CharacterPlus& chi, int k, int precision,
                                         const ProjectionConfig& config = {});

}  // namespace whmf
