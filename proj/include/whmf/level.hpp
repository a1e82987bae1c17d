#pragma once

#include <map>
#include <vector>

#include "whmf/series.hpp"

namespace whmf {

// The nine levels for which Gamma_0(N)^+ has genus zero and Delta_N is an
// eta product: 2, 3, 5, 6, 7, 11, 14, 15, 23.
const std::vector<int>& admitted_levels();

std::vector<int> divisors(int n);
std::vector<int> prime_factors(int n);
long long divisor_sigma(int power, long long n);

class LevelData {
 public:
  // Throws UnsupportedLevel outside the admitted list.
  explicit LevelData(int n);

  int n() const { return n_; }
  const std::vector<int>& divisors() const { return divisors_; }
  const std::vector<int>& primes() const { return primes_; }
  int sigma0() const { return sigma0_; }
  int sigma1() const { return sigma1_; }
  // Weight of Delta_N: 12 sigma0 / sigma1.
  int k1() const { return k1_; }
  bool is_prime() const { return primes_.size() == 1; }
  // Index of Gamma_0(N) in SL_2(Z) (sigma1 for squarefree N).
  int index() const { return sigma1_; }

  friend bool operator==(const LevelData& a, const LevelData& b) { return a.n_ == b.n_; }

 private:
  int n_;
  std::vector<int> divisors_;
  std::vector<int> primes_;
  int sigma0_;
  int sigma1_;
  int k1_;
};

// prod_m eta(m z)^{e_m}.
struct EtaQuotient {
  std::map<int, Rational> exponents;

  // sum m e_m / 24, the q-power carried by the eta prefactors.
  Rational offset() const;
};

// prod_{n>=1} (1 - q^n) to O(q^P), via the pentagonal-number theorem.
QSeries eta_core(int precision);
// The same product multiplied out term by term; O(P^2), used as an oracle.
QSeries eta_core_naive(int precision);

// Throws FractionalValuation when the offset is not an integer (or an
// exponent is not an integer).
QSeries expand_eta_quotient(const EtaQuotient& eq, int precision);

EtaQuotient delta_eta_quotient(const LevelData& level);
// Delta_N = prod_{m|N} eta(mz)^{24/sigma1(N)}: valuation 1, leading 1,
// weight k1(N).
QSeries delta_N(const LevelData& level, int precision);

}  // namespace whmf
