#include "whmf/numeric.hpp"

#include <cmath>
#include <sstream>

#include "whmf/errors.hpp"

namespace whmf {

PrecisionScope::PrecisionScope(int bits) : previous_digits_(Real::default_precision()) {
  Real::default_precision(bits_to_digits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(previous_digits_); }

int bits_to_digits(int bits) { return static_cast<int>(std::ceil(bits * 0.30102999566398120)); }

Real real_from(const Rational& x) {
  Real r;
  mpfr_set_q(r.backend().data(), x.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real real_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Complex& Complex::operator+=(const Complex& b) {
  re += b.re;
  im += b.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& b) {
  re -= b.re;
  im -= b.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& b) {
  Real r = re * b.re - im * b.im;
  im = re * b.im + im * b.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& b) {
  Real den = b.re * b.re + b.im * b.im;
  Real r = (re * b.re + im * b.im) / den;
  im = (im * b.re - re * b.im) / den;
  re = std::move(r);
  return *this;
}

std::complex<double> Complex::to_double() const { return {re.convert_to<double>(), im.convert_to<double>()}; }

std::string Complex::to_string(int digits) const {
  std::ostringstream os;
  os.precision(digits);
  os << re << (im < 0 ? " - " : " + ") << boost::multiprecision::abs(im) << "i";
  return os.str();
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
Complex operator*(const Real& s, Complex a) {
  a.re *= s;
  a.im *= s;
  return a;
}
Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }

Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
Real abs(const Complex& a) { return boost::multiprecision::sqrt(norm(a)); }
Complex conj(const Complex& a) { return Complex(a.re, -a.im); }

Complex exp(const Complex& a) {
  Real m = boost::multiprecision::exp(a.re);
  return Complex(m * boost::multiprecision::cos(a.im), m * boost::multiprecision::sin(a.im));
}

Complex ipow(Complex a, int e) {
  if (e < 0) return Complex(Real(1)) / ipow(std::move(a), -e);
  Complex r(Real(1));
  while (e > 0) {
    if (e & 1) r *= a;
    a *= a;
    e >>= 1;
  }
  return r;
}

Complex q_of(const Complex& z) {
  Real twopi = 2 * real_pi();
  return exp(Complex(-twopi * z.im, twopi * z.re));
}

Complex root4(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return Complex(Real(1));
    case 1: return Complex(Real(0), Real(1));
    case 2: return Complex(Real(-1));
    default: return Complex(Real(0), Real(-1));
  }
}

namespace {

// log of the envelope shape g(n).
double log_shape(const GrowthModel& g, double n) {
  return g.kind == GrowthModel::Kind::Polynomial ? g.parameter * std::log(n) : g.parameter * std::sqrt(n);
}

Real real_log_shape(const GrowthModel& g, const Real& n) {
  return g.kind == GrowthModel::Kind::Polynomial ? Real(g.parameter) * boost::multiprecision::log(n)
                                                 : Real(g.parameter) * boost::multiprecision::sqrt(n);
}

}  // namespace

Evaluation evaluate(const QSeries& f, const EvalPoint& pt, const GrowthModel& growth, const Real& max_tail) {
  PrecisionScope scope(pt.bits);
  if (pt.z.im <= 0) throw MathError(ErrorKind::TailBoundTooLarge, "point is not in the upper half plane");
  const Complex q = q_of(pt.z);
  const Real r = abs(q);
  const int v = f.valuation();
  const int p = f.precision();

  Evaluation out;
  out.radius = r;
  Complex sum;
  Complex qn = ipow(q, v);
  for (const Rational& c : f.coeffs()) {
    if (c != 0) sum += real_from(c) * qn;
    qn *= q;
  }
  out.value = sum;

  // Envelope constant from the coefficients with n >= 1.
  Real log_a = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (int n = std::max(v, 1); n < p; ++n) {
    const Rational& c = f.coeff(n);
    if (c == 0) continue;
    Real l = boost::multiprecision::log(boost::multiprecision::abs(real_from(c))) - real_log_shape(growth, Real(n));
    if (!any || l > log_a) log_a = l;
    any = true;
  }
  if (!any || p < 1) {
    out.tail = 0;
    return out;
  }
  log_a += boost::multiprecision::log(Real(2));
  const double pp = std::max(p, 1);
  const double step = growth.kind == GrowthModel::Kind::Polynomial
                          ? growth.parameter * std::log1p(1.0 / pp)
                          : growth.parameter * (std::sqrt(pp + 1) - std::sqrt(pp));
  const Real ratio = boost::multiprecision::exp(Real(step)) * r;
  if (ratio >= 1) {
    throw MathError(ErrorKind::TailBoundTooLarge, "coefficient envelope does not converge at |q| = " + r.str(6));
  }
  out.tail = boost::multiprecision::exp(log_a + real_log_shape(growth, Real(p)) + Real(p) * boost::multiprecision::log(r)) /
             (1 - ratio);
  if (out.tail > max_tail) {
    throw MathError(ErrorKind::TailBoundTooLarge,
                    "tail bound " + out.tail.str(6) + " exceeds " + max_tail.str(6) + " with " + std::to_string(p) + " terms");
  }
  return out;
}

Evaluation evaluate(const QSeries& f, const EvalPoint& pt, const GrowthModel& growth) {
  PrecisionScope scope(pt.bits);
  return evaluate(f, pt, growth, Real("1e-25"));
}

int terms_needed(double radius, const GrowthModel& growth, double log10_envelope, int target_digits) {
  if (radius >= 1) throw MathError(ErrorKind::TailBoundTooLarge, "|q| >= 1");
  const double lr = std::log10(radius);
  for (int n = 1; n < 1000000; ++n) {
    double step = growth.kind == GrowthModel::Kind::Polynomial ? growth.parameter * std::log1p(1.0 / n) / std::log(10.0)
                                                               : growth.parameter * (std::sqrt(n + 1.0) - std::sqrt(n)) / std::log(10.0);
    if (step + lr >= 0) continue;
    double tail = log10_envelope + log_shape(growth, n) / std::log(10.0) + n * lr - std::log10(1 - std::pow(10.0, step + lr));
    if (tail < -target_digits) return n;
  }
  throw MathError(ErrorKind::TailBoundTooLarge, "no truncation reaches the target");
}

Complex mobius(const IntMatrix& w, const Complex& z) {
  Complex num = Real(static_cast<double>(w.a)) * z + Complex(Real(static_cast<double>(w.b)));
  Complex den = Real(static_cast<double>(w.c)) * z + Complex(Real(static_cast<double>(w.d)));
  return num / den;
}

Complex slash_factor(const IntMatrix& w, const Complex& z, int k) {
  Complex den = Real(static_cast<double>(w.c)) * z + Complex(Real(static_cast<double>(w.d)));
  Real s = boost::multiprecision::sqrt(Real(static_cast<double>(w.det())));
  Complex factor = ipow(den, -k);
  Real sk = boost::multiprecision::pow(s, k);
  return sk * factor;
}

Rational rational_reconstruct(const Real& x, const Integer& denominator_bound, const Real& tolerance) {
  // Convergents h/k of the continued fraction of x.
  Integer h_prev = 1, h = 0, k_prev = 0, k = 1;
  Real rest = x;
  for (int iter = 0; iter < 200; ++iter) {
    Real fl = boost::multiprecision::floor(rest);
    Integer a;
    mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDN);
    Integer h_next = a * h_prev + h;
    Integer k_next = a * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    if (k_prev > denominator_bound) break;
    Rational cand(h_prev, k_prev);
    cand.canonicalize();
    if (boost::multiprecision::abs(x - real_from(cand)) < tolerance) return cand;
    Real frac = rest - fl;
    if (frac == 0) break;
    rest = 1 / frac;
  }
  throw MathError(ErrorKind::ReconstructionFailed, "no convergent of " + x.str(30) + " within the bounds");
}

Rational rational_reconstruct(const Real& x, const Integer& denominator_bound, int working_digits) {
  Real tol = boost::multiprecision::pow(Real(10), -(working_digits - 10));
  return rational_reconstruct(x, denominator_bound, tol);
}

}  // namespace whmf
