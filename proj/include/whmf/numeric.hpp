#pragma once

// Multiprecision evaluation of q-expansions at points of the upper half
// plane, the weight-k slash action, and rational reconstruction.

#include <boost/multiprecision/mpfr.hpp>
#include <complex>
#include <string>

#include "whmf/atkin_lehner.hpp"
#include "whmf/series.hpp"

namespace whmf {

using Real = boost::multiprecision::mpfr_float;

// Sets the default MPFR precision (in bits) for newly created Reals and
// restores the previous setting on destruction.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned previous_digits_;
};

int bits_to_digits(int bits);
Real real_from(const Rational& x);
Real real_pi();

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& b);
  Complex& operator-=(const Complex& b);
  Complex& operator*=(const Complex& b);
  Complex& operator/=(const Complex& b);
  std::complex<double> to_double() const;
  std::string to_string(int digits = 20) const;
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);
Complex operator*(const Real& s, Complex a);
Complex operator-(const Complex& a);
Real abs(const Complex& a);
Real norm(const Complex& a);
Complex conj(const Complex& a);
Complex exp(const Complex& a);
// a^e for any integer e.
Complex ipow(Complex a, int e);
// e^{2 pi i z}.
Complex q_of(const Complex& z);
// i^e.
Complex root4(int e);

// How fast the coefficients may grow: |a_n| <= A n^exponent, or
// |a_n| <= A exp(c sqrt(n)) for weight 0 hauptmoduls.
struct GrowthModel {
  enum class Kind { Polynomial, SubExponential };
  Kind kind = Kind::Polynomial;
  double parameter = 0;

  static GrowthModel weight(int k) { return {Kind::Polynomial, static_cast<double>(k + 1)}; }
  static GrowthModel polynomial(double exponent) { return {Kind::Polynomial, exponent}; }
  static GrowthModel subexponential(double c) { return {Kind::SubExponential, c}; }
};

// A point z with the working precision used to evaluate there.
struct EvalPoint {
  Complex z;
  int bits = 256;
};

struct Evaluation {
  Complex value;
  // Tail estimate: sum over n >= P of the envelope A * g(n) |q|^n with the
  // fitted constant doubled.
  Real tail;
  Real radius;
};

// Sums the stored coefficients and bounds the tail. Throws TailBoundTooLarge
// when the envelope does not converge or the tail exceeds max_tail.
Evaluation evaluate(const QSeries& f, const EvalPoint& pt, const GrowthModel& growth, const Real& max_tail);
Evaluation evaluate(const QSeries& f, const EvalPoint& pt, const GrowthModel& growth);

// Terms needed so that the envelope tail at |q| = radius drops below
// 10^-target_digits, given the series' coefficients up to its precision.
int terms_needed(double radius, const GrowthModel& growth, double log10_envelope, int target_digits);

Complex mobius(const IntMatrix& w, const Complex& z);
// det(w)^{k/2} (c z + d)^{-k}.
Complex slash_factor(const IntMatrix& w, const Complex& z, int k);

// First continued-fraction convergent p/q of x with q <= denominator_bound
// and |x - p/q| < tolerance. Throws ReconstructionFailed.
Rational rational_reconstruct(const Real& x, const Integer& denominator_bound, const Real& tolerance);
// Same with tolerance 10^-(working_digits - 10).
Rational rational_reconstruct(const Real& x, const Integer& denominator_bound, int working_digits);

}  // namespace whmf
