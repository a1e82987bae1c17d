#include "whmf/level.hpp"

#include <algorithm>

#include "whmf/errors.hpp"

namespace whmf {

const std::vector<int>& admitted_levels() {
  static const std::vector<int> levels{2, 3, 5, 6, 7, 11, 14, 15, 23};
  return levels;
}

std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

long long divisor_sigma(int power, long long n) {
  long long s = 0;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    long long e = n / d;
    long long a = 1, b = 1;
    for (int i = 0; i < power; ++i) {
      a *= d;
      b *= e;
    }
    s += a;
    if (e != d) s += b;
  }
  return s;
}

LevelData::LevelData(int n) : n_(n) {
  const auto& adm = admitted_levels();
  if (std::find(adm.begin(), adm.end(), n) == adm.end()) {
    throw MathError(ErrorKind::UnsupportedLevel, "level " + std::to_string(n) + " is not one of 2,3,5,6,7,11,14,15,23");
  }
  divisors_ = whmf::divisors(n);
  primes_ = prime_factors(n);
  sigma0_ = static_cast<int>(divisors_.size());
  sigma1_ = static_cast<int>(divisor_sigma(1, n));
  k1_ = 12 * sigma0_ / sigma1_;
}

Rational EtaQuotient::offset() const {
  Rational s = 0;
  for (const auto& [m, e] : exponents) s += m * e;
  s /= 24;
  s.canonicalize();
  return s;
}

QSeries eta_core(int precision) {
  if (precision < 1) precision = 1;
  std::vector<Rational> cs(precision);
  cs[0] = 1;
  // Exponents k(3k-1)/2 and k(3k+1)/2 carry the sign (-1)^k.
  for (long long k = 1;; ++k) {
    long long a = k * (3 * k - 1) / 2;
    if (a >= precision) break;
    int sign = (k % 2 == 0) ? 1 : -1;
    cs[a] += sign;
    long long b = k * (3 * k + 1) / 2;
    if (b < precision) cs[b] += sign;
  }
  return QSeries::from_coeffs(0, std::move(cs), precision);
}

QSeries eta_core_naive(int precision) {
  if (precision < 1) precision = 1;
  std::vector<Integer> cs(precision);
  cs[0] = 1;
  for (int n = 1; n < precision; ++n) {
    // multiply by (1 - q^n) in place, descending.
    for (int i = precision - 1; i >= n; --i) cs[i] -= cs[i - n];
  }
  std::vector<Rational> out(cs.begin(), cs.end());
  return QSeries::from_coeffs(0, std::move(out), precision);
}

QSeries expand_eta_quotient(const EtaQuotient& eq, int precision) {
  Rational off = eq.offset();
  if (off.get_den() != 1) {
    throw MathError(ErrorKind::FractionalValuation, "eta quotient has q-offset " + off.get_str());
  }
  for (const auto& [m, e] : eq.exponents) {
    if (e.get_den() != 1) throw MathError(ErrorKind::FractionalValuation, "non-integral eta exponent " + e.get_str());
  }
  const int v = static_cast<int>(off.get_num().get_si());
  const int rel = precision - v;  // relative precision of the product
  QSeries prod = QSeries::one(std::max(rel, 0));
  for (const auto& [m, e] : eq.exponents) {
    int ex = static_cast<int>(e.get_num().get_si());
    if (ex == 0) continue;
    int base_prec = (rel + m - 1) / m;
    QSeries factor = scale_exponents(eta_core(std::max(base_prec, 1)), m).truncate(std::max(rel, 0));
    prod = mul(prod, pow(factor, ex));
  }
  return shift(prod.truncate(std::max(rel, 0)), v);
}

EtaQuotient delta_eta_quotient(const LevelData& level) {
  EtaQuotient eq;
  for (int m : level.divisors()) eq.exponents[m] = Rational(24, level.sigma1());
  for (auto& [m, e] : eq.exponents) e.canonicalize();
  return eq;
}

QSeries delta_N(const LevelData& level, int precision) {
  return expand_eta_quotient(delta_eta_quotient(level), precision);
}

}  // namespace whmf
