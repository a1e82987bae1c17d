#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "whmf/basis.hpp"

namespace whmf {

struct VerificationReport {
  std::string suite;
  nlohmann::json parameters = nlohmann::json::object();
  bool passed = true;
  long long checks = 0;
  // Indices and both values of the first failure; null on success.
  nlohmann::json witness;
  int precision = 0;
  double wall_seconds = 0;
  std::vector<std::string> notes;

  // Wall time is left out unless asked for, so that reports are byte-stable.
  nlohmann::json to_json(bool with_timing = false) const;
  void fail(nlohmann::json w);
};

// sum_{m >= -ell} f_{k,m}(z) q^m = f_k(z) f_{2-k}(tau) / (j(tau) - j(z)) as a
// bivariate expansion, compared with the f-family for m = -ell..M to O(p^P).
VerificationReport check_genfun(const LevelData& level, const CharacterPlus& chi, int k, int M, int P,
                                const ProjectionConfig& config = {});
// Same with a hook applied to the series f_{2-k} before the division (used by
// the mutation tests).
VerificationReport check_genfun(const LevelData& level, const CharacterPlus& chi, int k, int M, int P,
                                const std::function<void(QSeries&)>& mutate_dual, const ProjectionConfig& config = {});

// a_k(m, n) = -a_{2-k}(n, m) with the characters chi and chi psi^{-2k}, for
// -ell <= m <= m_max and 1 + ell <= n <= n_max.
VerificationReport check_duality(const LevelData& level, const CharacterPlus& chi, int k, int m_max, int n_max,
                                 const ProjectionConfig& config = {});

// n^{k-1} | a_k(m, n) for gcd(m, n) = 1 = gcd(N, m), 1 <= m <= m_max,
// 1 <= n <= n_max. Throws HypothesisViolated unless k = k'(N, chi, k).
VerificationReport check_divisibility(const LevelData& level, const CharacterPlus& chi, int k, int m_max, int n_max,
                                      const ProjectionConfig& config = {});

// Gap structure, monic integral Faber polynomials of degree ell + m, integral
// coefficients, and agreement with the factorized form.
VerificationReport check_integrality(const LevelData& level, const CharacterPlus& chi, int k, int m_max, int P,
                                     const ProjectionConfig& config = {});

// rank_check against dimension_d for every restriction and k = 0..5.
VerificationReport check_dimensions(const LevelData& level);

// Product identities between plus-space Eisenstein series.
VerificationReport check_products(const LevelData& level, int P, const ProjectionConfig& config = {});

// Hauptmodul: obstruction, integrality, round trip and numeric invariance;
// plus the factorization identity for every minimal (k, chi).
VerificationReport check_hauptmodul(const LevelData& level, int P, const ProjectionConfig& config = {});
VerificationReport check_factorization(const LevelData& level, int P, const ProjectionConfig& config = {});

// The psi-power characters that are consistent at this level.
std::vector<CharacterPlus> psi_family(const LevelData& level);

// Suite names accepted by run_suite: genfun, duality, divisibility,
// integrality, dimensions, products, hauptmodul, factorization.
const std::vector<std::string>& suite_names();

// Runs one suite at its default grid. chi and k select the instance where the
// suite takes one (empty chi / k unset means the suite's default sweep).
std::vector<VerificationReport> run_suite(const std::string& name, const LevelData& level, const std::string& chi,
                                          std::optional<int> k, int precision);

}  // namespace whmf
