#pragma once

// Exact truncated Laurent series over the rationals.
//
// A QSeries is known modulo O(q^P). Coefficients are stored for exponents
// valuation..P-1 and the leading stored coefficient is nonzero; the series
// that is zero to its precision has valuation == precision and no stored
// coefficients. Arithmetic never invents coefficients beyond what the
// operands determine: precision follows the min-rule.

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

namespace whmf {

using Rational = mpq_class;
using Integer = mpz_class;

class QSeries {
 public:
  // The zero series known to O(q^0).
  QSeries() = default;

  static QSeries zero(int precision);
  static QSeries one(int precision);
  static QSeries constant(const Rational& c, int precision);
  static QSeries monomial(const Rational& c, int exponent, int precision);
  // coeffs[i] is the coefficient of q^(start + i); precision is start + size
  // unless given explicitly (it may not exceed start + size).
  static QSeries from_coeffs(int start, std::vector<Rational> coeffs);
  static QSeries from_coeffs(int start, std::vector<Rational> coeffs, int precision);

  int valuation() const { return valuation_; }
  int precision() const { return precision_; }
  bool is_zero() const { return coeffs_.empty(); }

  // Coefficient of q^n; zero below the valuation. Throws PrecisionExceeded for
  // n >= precision.
  const Rational& coeff(int n) const;
  const Rational& leading() const;
  std::span<const Rational> coeffs() const { return coeffs_; }

  bool is_integral() const;
  QSeries truncate(int precision) const;

  friend bool operator==(const QSeries& a, const QSeries& b) = default;

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& b);
  QSeries& operator-=(const QSeries& b);
  QSeries& operator*=(const Rational& c);

  std::string to_string(int max_terms = 8) const;

 private:
  void normalize();

  int valuation_ = 0;
  int precision_ = 0;
  std::vector<Rational> coeffs_;
  static const Rational kZero;
};

QSeries operator+(QSeries a, const QSeries& b);
QSeries operator-(QSeries a, const QSeries& b);
QSeries operator*(QSeries a, const Rational& c);
QSeries operator*(const Rational& c, QSeries a);

QSeries mul(const QSeries& a, const QSeries& b);
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }

// Two-sided inverse; throws ZeroLeadingCoefficient on the zero series.
QSeries invert(const QSeries& a);
QSeries divide(const QSeries& num, const QSeries& den);
// a^e for any integer e (negative powers go through invert).
QSeries pow(const QSeries& a, int e);

// q d/dq.
QSeries theta(const QSeries& a);
// Inverse of theta on series with vanishing constant term; the result has
// zero constant term. Throws NonzeroConstantTerm.
QSeries integrate_theta(const QSeries& a);

// q -> q^factor.
QSeries scale_exponents(const QSeries& a, int factor);
// Multiplication by q^shift.
QSeries shift(const QSeries& a, int shift);

// True when both series agree on every exponent below min(P_a, P_b).
bool agrees(const QSeries& a, const QSeries& b);

// Bivariate series: outer variable q, inner coefficients are QSeries in p.
class BiSeries {
 public:
  BiSeries() = default;
  BiSeries(int outer_valuation, std::vector<QSeries> coeffs, int outer_precision);

  // Series in q with constant (in p) coefficients.
  static BiSeries from_outer(const QSeries& outer, int inner_precision);
  // A p-series sitting at q^0.
  static BiSeries from_inner(const QSeries& inner, int outer_precision);

  int outer_valuation() const { return valuation_; }
  int outer_precision() const { return precision_; }
  // Smallest inner precision over the stored coefficients.
  int inner_precision() const;
  // The p-series at q^m (zero of full inner precision below the valuation).
  QSeries coeff(int m) const;
  std::span<const QSeries> coeffs() const { return coeffs_; }

  BiSeries& operator+=(const BiSeries& b);
  BiSeries& operator-=(const BiSeries& b);

  friend BiSeries mul(const BiSeries& a, const BiSeries& b);

 private:
  void normalize();

  int valuation_ = 0;
  int precision_ = 0;
  std::vector<QSeries> coeffs_;
  // Inner precision carried by a series with no stored outer coefficients.
  int inner_zero_ = 0;
};

BiSeries operator+(BiSeries a, const BiSeries& b);
BiSeries operator-(BiSeries a, const BiSeries& b);
BiSeries mul(const BiSeries& a, const BiSeries& b);
// Throws NonUnitDenominator when the leading outer coefficient of den is not
// invertible.
BiSeries bi_divide(const BiSeries& num, const BiSeries& den);

// "a/b" decimal strings, as used by the cache and the CLI.
std::vector<std::string> serialize_coeffs(const QSeries& a);
QSeries deserialize_series(int valuation, int precision, std::span<const std::string> coeffs);

}  // namespace whmf
