#include "whmf/eisenstein.hpp"

#include <algorithm>

#include "whmf/errors.hpp"
#include "whmf/linalg.hpp"

namespace whmf {

namespace {

Integer ipow(int base, int e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return r;
}

int product(const std::vector<int>& xs) {
  int p = 1;
  for (int x : xs) p *= x;
  return p;
}

void check_parity(int k, const RealCharacter& chi) {
  if (chi.parity() != (k % 2 == 0 ? 1 : -1)) {
    throw MathError(ErrorKind::ParityMismatch,
                    "character " + chi.to_string() + " has the wrong parity for weight " + std::to_string(k));
  }
}

}  // namespace

std::string EisBasisElement::label() const {
  if (weight_two_special) {
    return "k=2 E2(z)-" + std::to_string(special_prime) + "E2(" + std::to_string(special_prime) + "z) l=" +
           std::to_string(scale);
  }
  return "k=" + std::to_string(weight) + " chi1=" + std::to_string(chi1.conductor()) +
         " chi2=" + std::to_string(chi2.conductor()) + " l=" + std::to_string(scale);
}

QSeries eisenstein_pair_series(int k, const RealCharacter& chi1, const RealCharacter& chi2, int precision) {
  if (precision <= 0) return QSeries::zero(precision);
  std::vector<Integer> a(precision, 0);
  for (int d = 1; d < precision; ++d) {
    int c2 = chi2(d);
    if (c2 == 0) continue;
    Integer dk = ipow(d, k - 1);
    if (c2 < 0) dk = -dk;
    for (int m = 1; m * d < precision; ++m) {
      int c1 = chi1(m);
      if (c1 > 0) {
        a[m * d] += dk;
      } else if (c1 < 0) {
        a[m * d] -= dk;
      }
    }
  }
  std::vector<Rational> coeffs(precision);
  for (int n = 1; n < precision; ++n) coeffs[n] = Rational(a[n]);
  if (chi1.is_trivial()) coeffs[0] = -bernoulli_chi(k, chi2) / (2 * k);
  return QSeries::from_coeffs(0, std::move(coeffs));
}

QSeries e2_series(int precision) {
  if (precision <= 0) return QSeries::zero(precision);
  std::vector<Rational> c(precision);
  c[0] = 1;
  for (int n = 1; n < precision; ++n) c[n] = Rational(static_cast<long>(-24 * divisor_sigma(1, n)));
  return QSeries::from_coeffs(0, std::move(c));
}

std::vector<EisBasisElement> eisenstein_basis(const LevelData& level, int k, const RealCharacter& chi, int precision) {
  const int n = level.n();
  if (chi.modulus() != n) throw MathError(ErrorKind::BadCharacter, "character modulus differs from the level");
  if (k < 0) throw MathError(ErrorKind::EmptyFamily, "negative weight");
  if (k == 1 && chi.is_trivial()) throw MathError(ErrorKind::EmptyFamily, "weight 1 with trivial character");
  check_parity(k, chi);

  std::vector<EisBasisElement> out;
  if (k == 0) {
    if (!chi.is_trivial()) throw MathError(ErrorKind::EmptyFamily, "weight 0 with nontrivial character");
    EisBasisElement e;
    e.weight = 0;
    e.chi1 = RealCharacter::trivial(1);
    e.chi2 = RealCharacter::trivial(1);
    e.series = QSeries::one(precision);
    out.push_back(std::move(e));
    return out;
  }

  if (k == 2 && chi.is_trivial()) {
    const QSeries e2 = e2_series(precision);
    for (int p : level.primes()) {
      QSeries base = e2 - Rational(p) * scale_exponents(e2, p).truncate(precision);
      for (int l : divisors(n / p)) {
        EisBasisElement e;
        e.weight = 2;
        e.chi1 = RealCharacter::trivial(1);
        e.chi2 = RealCharacter::trivial(1);
        e.scale = l;
        e.weight_two_special = true;
        e.special_prime = p;
        e.series = scale_exponents(base, l).truncate(precision);
        out.push_back(std::move(e));
      }
    }
    return out;
  }

  const int f = chi.conductor();
  const std::vector<int> ps = prime_factors(f);
  const int subsets = 1 << ps.size();
  for (int mask = 0; mask < subsets; ++mask) {
    std::vector<int> s1, s2;
    for (std::size_t i = 0; i < ps.size(); ++i) ((mask >> i) & 1 ? s1 : s2).push_back(ps[i]);
    const int n1 = product(s1);
    const int n2 = product(s2);
    if (k == 1 && n1 > n2) continue;
    const RealCharacter c1(n1, n1);
    const RealCharacter c2(n2, n2);
    const QSeries base = eisenstein_pair_series(k, c1, c2, precision);
    for (int l : divisors(n / f)) {
      EisBasisElement e;
      e.weight = k;
      e.chi1 = c1;
      e.chi2 = c2;
      e.scale = l;
      e.series = scale_exponents(base, l).truncate(precision);
      out.push_back(std::move(e));
    }
  }
  return out;
}

int dimension_d(const LevelData& level, int k, const RealCharacter& chi) {
  if (k < 0) return 0;
  if (k == 0) return chi.is_trivial() ? 1 : 0;
  if (k == 1) {
    if (chi.is_trivial()) return 0;
    check_parity(k, chi);
    return level.is_prime() ? 1 : 2;
  }
  check_parity(k, chi);
  if (k == 2) {
    if (level.is_prime()) return chi.is_trivial() ? 1 : 2;
    return chi.is_trivial() ? 3 : 4;
  }
  return level.is_prime() ? 2 : 4;
}

int rank_precision_bound(const LevelData& level, int k) {
  return (std::max(k, 0) * level.sigma1() + 11) / 12 + 5;
}

int rank_check(const LevelData& level, const std::vector<EisBasisElement>& basis, int precision) {
  if (basis.empty()) return 0;
  const int need = rank_precision_bound(level, basis.front().weight);
  if (precision < need) {
    throw MathError(ErrorKind::InsufficientPrecision,
                    "rank check needs " + std::to_string(need) + " coefficients, got " + std::to_string(precision));
  }
  std::vector<QSeries> rows;
  rows.reserve(basis.size());
  for (const auto& e : basis) rows.push_back(e.series);
  return rational_rank(coefficient_matrix(rows, 0, precision));
}

}  // namespace whmf
