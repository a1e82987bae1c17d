#include "whmf/series.hpp"

#include <algorithm>
#include <sstream>

#include "whmf/errors.hpp"

namespace whmf {

const Rational QSeries::kZero{0};

namespace {

// Common denominator of the coefficients; 1 for integral series.
Integer common_denominator(std::span<const Rational> cs) {
  Integer l = 1;
  for (const auto& c : cs) {
    if (c.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  return l;
}

std::vector<Integer> scaled_numerators(std::span<const Rational> cs, const Integer& l, std::size_t n) {
  std::vector<Integer> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = cs[i];
    if (l == 1) {
      out[i] = c.get_num();
    } else {
      Integer f = l / c.get_den();
      out[i] = c.get_num() * f;
    }
  }
  return out;
}

}  // namespace

QSeries QSeries::zero(int precision) {
  QSeries s;
  s.valuation_ = precision;
  s.precision_ = precision;
  return s;
}

QSeries QSeries::one(int precision) { return constant(Rational(1), precision); }

QSeries QSeries::constant(const Rational& c, int precision) { return monomial(c, 0, precision); }

QSeries QSeries::monomial(const Rational& c, int exponent, int precision) {
  if (exponent >= precision || c == 0) return zero(precision);
  std::vector<Rational> cs(precision - exponent);
  cs[0] = c;
  return from_coeffs(exponent, std::move(cs));
}

QSeries QSeries::from_coeffs(int start, std::vector<Rational> coeffs) {
  int p = start + static_cast<int>(coeffs.size());
  return from_coeffs(start, std::move(coeffs), p);
}

QSeries QSeries::from_coeffs(int start, std::vector<Rational> coeffs, int precision) {
  if (precision < start) precision = start;
  if (precision - start < static_cast<int>(coeffs.size())) coeffs.resize(precision - start);
  if (precision - start > static_cast<int>(coeffs.size())) {
    throw MathError(ErrorKind::PrecisionExceeded, "precision beyond supplied coefficients");
  }
  QSeries s;
  s.valuation_ = start;
  s.precision_ = precision;
  s.coeffs_ = std::move(coeffs);
  for (auto& c : s.coeffs_) c.canonicalize();
  s.normalize();
  return s;
}

void QSeries::normalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    valuation_ = precision_;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    valuation_ += static_cast<int>(lead);
  }
}

const Rational& QSeries::coeff(int n) const {
  if (n >= precision_) {
    throw MathError(ErrorKind::PrecisionExceeded,
                    "coefficient q^" + std::to_string(n) + " requested from series known to O(q^" +
                        std::to_string(precision_) + ")");
  }
  if (n < valuation_) return kZero;
  return coeffs_[n - valuation_];
}

const Rational& QSeries::leading() const {
  if (is_zero()) throw MathError(ErrorKind::ZeroLeadingCoefficient, "zero series has no leading coefficient");
  return coeffs_.front();
}

bool QSeries::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

QSeries QSeries::truncate(int precision) const {
  if (precision >= precision_) return *this;
  QSeries s = *this;
  s.precision_ = precision;
  if (precision <= valuation_) {
    s.coeffs_.clear();
    s.valuation_ = precision;
  } else {
    s.coeffs_.resize(precision - valuation_);
  }
  return s;
}

QSeries QSeries::operator-() const {
  QSeries s = *this;
  for (auto& c : s.coeffs_) c = -c;
  return s;
}

QSeries& QSeries::operator+=(const QSeries& b) {
  int p = std::min(precision_, b.precision_);
  int v = std::min(valuation_, b.valuation_);
  if (v >= p) {
    *this = zero(p);
    return *this;
  }
  std::vector<Rational> out(p - v);
  for (int n = v; n < p; ++n) {
    Rational& o = out[n - v];
    if (n >= valuation_) o = coeffs_[n - valuation_];
    if (n >= b.valuation_) o += b.coeffs_[n - b.valuation_];
  }
  valuation_ = v;
  precision_ = p;
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& b) { return *this += -b; }

QSeries& QSeries::operator*=(const Rational& c) {
  if (c == 0) {
    *this = zero(precision_);
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

std::string QSeries::to_string(int max_terms) const {
  std::ostringstream os;
  int shown = 0;
  for (int n = valuation_; n < precision_ && shown < max_terms; ++n) {
    const Rational& c = coeff(n);
    if (c == 0) continue;
    if (shown > 0) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Rational a = abs(c);
    if (a != 1 || n == 0) os << a.get_str();
    if (n != 0) os << (a != 1 ? "*" : "") << "q" << (n != 1 ? "^" + std::to_string(n) : "");
    ++shown;
  }
  if (shown == 0) os << "0";
  os << " + O(q^" << precision_ << ")";
  return os.str();
}

QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
QSeries operator*(const Rational& c, QSeries a) { return a *= c; }

QSeries mul(const QSeries& a, const QSeries& b) {
  const int v = a.valuation() + b.valuation();
  const int p = std::min(a.precision() + b.valuation(), b.precision() + a.valuation());
  if (a.is_zero() || b.is_zero() || v >= p) return QSeries::zero(p);
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  const std::size_t len = static_cast<std::size_t>(p - v);

  // Convolve integer numerators over the common denominators; this keeps the
  // inner loop free of per-term gcds.
  Integer la = common_denominator(ac.first(std::min(len, ac.size())));
  Integer lb = common_denominator(bc.first(std::min(len, bc.size())));
  std::vector<Integer> ai = scaled_numerators(ac, la, std::min(len, ac.size()));
  std::vector<Integer> bi = scaled_numerators(bc, lb, std::min(len, bc.size()));

  std::vector<Rational> out(len);
  Integer acc;
  const Integer den = la * lb;
  for (std::size_t n = 0; n < len; ++n) {
    acc = 0;
    std::size_t lo = n >= bi.size() ? n - bi.size() + 1 : 0;
    std::size_t hi = std::min(n, ai.size() - 1);
    for (std::size_t i = lo; i <= hi; ++i) {
      if (ai[i] == 0) continue;
      mpz_addmul(acc.get_mpz_t(), ai[i].get_mpz_t(), bi[n - i].get_mpz_t());
    }
    out[n] = Rational(acc, den);
  }
  return QSeries::from_coeffs(v, std::move(out), p);
}

QSeries invert(const QSeries& a) {
  if (a.is_zero()) throw MathError(ErrorKind::ZeroLeadingCoefficient, "cannot invert a series that is zero to its precision");
  const int v = a.valuation();
  const int len = a.precision() - v;
  const auto ac = a.coeffs();
  std::vector<Rational> out(len);
  const Rational& lead = ac[0];
  if (a.is_integral() && (lead == 1 || lead == -1)) {
    // b_0 = 1/a_0, b_n = -(1/a_0) sum_{i=1}^n a_i b_{n-i}; stays integral.
    std::vector<Integer> ai(len), bi(len);
    for (int i = 0; i < len; ++i) ai[i] = ac[i].get_num();
    const bool neg = lead < 0;
    bi[0] = neg ? -1 : 1;
    Integer acc;
    for (int n = 1; n < len; ++n) {
      acc = 0;
      for (int i = 1; i <= n; ++i) {
        if (ai[i] == 0) continue;
        mpz_addmul(acc.get_mpz_t(), ai[i].get_mpz_t(), bi[n - i].get_mpz_t());
      }
      bi[n] = neg ? Integer(acc) : Integer(-acc);
    }
    for (int i = 0; i < len; ++i) out[i] = Rational(bi[i]);
  } else {
    Rational inv_lead = 1 / lead;
    out[0] = inv_lead;
    Rational acc;
    for (int n = 1; n < len; ++n) {
      acc = 0;
      for (int i = 1; i <= n; ++i) {
        if (ac[i] == 0) continue;
        acc += ac[i] * out[n - i];
      }
      out[n] = -acc * inv_lead;
    }
  }
  return QSeries::from_coeffs(-v, std::move(out), -v + len);
}

QSeries divide(const QSeries& num, const QSeries& den) { return mul(num, invert(den)); }

QSeries pow(const QSeries& a, int e) {
  if (e < 0) return pow(invert(a), -e);
  // Precision of a^e relative to its valuation matches that of a.
  QSeries result = QSeries::one(a.precision() - a.valuation());
  QSeries base = a;
  bool first = true;
  while (e > 0) {
    if (e & 1) {
      result = first ? base : mul(result, base);
      first = false;
    }
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

QSeries theta(const QSeries& a) {
  if (a.is_zero()) return a;
  std::vector<Rational> out(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= a.valuation() + static_cast<int>(i);
  return QSeries::from_coeffs(a.valuation(), std::move(out), a.precision());
}

QSeries integrate_theta(const QSeries& a) {
  if (a.precision() <= 0) {
    throw MathError(ErrorKind::PrecisionExceeded, "constant term is not determined by the series");
  }
  if (a.coeff(0) != 0) {
    throw MathError(ErrorKind::NonzeroConstantTerm, "constant term " + a.coeff(0).get_str() + " obstructs integration");
  }
  if (a.is_zero()) return a;
  std::vector<Rational> out(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    int n = a.valuation() + static_cast<int>(i);
    if (n != 0) out[i] /= n;
  }
  return QSeries::from_coeffs(a.valuation(), std::move(out), a.precision());
}

QSeries scale_exponents(const QSeries& a, int factor) {
  if (factor == 1) return a;
  const int p = a.precision() * factor;
  if (a.is_zero()) return QSeries::zero(p);
  const int v = a.valuation() * factor;
  std::vector<Rational> out(p - v);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) out[i * factor] = a.coeffs()[i];
  // The last stored coefficient is at (P-1)*factor; exponents up to P*factor-1
  // are known to vanish.
  return QSeries::from_coeffs(v, std::move(out), p);
}

QSeries shift(const QSeries& a, int s) {
  if (a.is_zero()) return QSeries::zero(a.precision() + s);
  return QSeries::from_coeffs(a.valuation() + s, std::vector<Rational>(a.coeffs().begin(), a.coeffs().end()),
                              a.precision() + s);
}

bool agrees(const QSeries& a, const QSeries& b) {
  int p = std::min(a.precision(), b.precision());
  int v = std::min(a.valuation(), b.valuation());
  for (int n = v; n < p; ++n) {
    if (a.coeff(n) != b.coeff(n)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

BiSeries::BiSeries(int outer_valuation, std::vector<QSeries> coeffs, int outer_precision)
    : valuation_(outer_valuation), precision_(outer_precision), coeffs_(std::move(coeffs)) {
  if (precision_ - valuation_ < static_cast<int>(coeffs_.size())) coeffs_.resize(std::max(0, precision_ - valuation_));
  if (precision_ - valuation_ > static_cast<int>(coeffs_.size())) {
    throw MathError(ErrorKind::PrecisionExceeded, "outer precision beyond supplied coefficients");
  }
  normalize();
}

void BiSeries::normalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead == coeffs_.size()) {
    // Keep one zero coefficient so the inner precision survives.
    if (!coeffs_.empty()) {
      QSeries z = QSeries::zero(inner_precision());
      coeffs_.clear();
      valuation_ = precision_;
      inner_zero_ = z.precision();
    }
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    valuation_ += static_cast<int>(lead);
  }
}

BiSeries BiSeries::from_outer(const QSeries& outer, int inner_precision) {
  std::vector<QSeries> cs;
  for (const auto& c : outer.coeffs()) cs.push_back(QSeries::constant(c, inner_precision));
  BiSeries b(outer.valuation(), std::move(cs), outer.precision());
  if (b.coeffs_.empty()) b.inner_zero_ = inner_precision;
  return b;
}

BiSeries BiSeries::from_inner(const QSeries& inner, int outer_precision) {
  if (outer_precision <= 0) {
    BiSeries b;
    b.valuation_ = b.precision_ = outer_precision;
    b.inner_zero_ = inner.precision();
    return b;
  }
  std::vector<QSeries> cs(outer_precision, QSeries::zero(inner.precision()));
  cs[0] = inner;
  BiSeries b(0, std::move(cs), outer_precision);
  if (b.coeffs_.empty()) b.inner_zero_ = inner.precision();
  return b;
}

int BiSeries::inner_precision() const {
  if (coeffs_.empty()) return inner_zero_;
  int p = coeffs_.front().precision();
  for (const auto& c : coeffs_) p = std::min(p, c.precision());
  return p;
}

QSeries BiSeries::coeff(int m) const {
  if (m >= precision_) {
    throw MathError(ErrorKind::PrecisionExceeded, "outer coefficient q^" + std::to_string(m) + " beyond precision");
  }
  if (m < valuation_) return QSeries::zero(inner_precision());
  return coeffs_[m - valuation_];
}

BiSeries& BiSeries::operator+=(const BiSeries& b) {
  int p = std::min(precision_, b.precision_);
  int v = std::min(valuation_, b.valuation_);
  int ip = std::min(inner_precision(), b.inner_precision());
  if (v >= p) {
    coeffs_.clear();
    valuation_ = precision_ = p;
    inner_zero_ = ip;
    return *this;
  }
  std::vector<QSeries> out;
  out.reserve(p - v);
  for (int m = v; m < p; ++m) out.push_back(coeff(m) + b.coeff(m));
  *this = BiSeries(v, std::move(out), p);
  if (coeffs_.empty()) inner_zero_ = ip;
  return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& b) {
  std::vector<QSeries> neg;
  for (const auto& c : b.coeffs_) neg.push_back(-c);
  BiSeries nb(b.valuation_, std::move(neg), b.precision_);
  nb.inner_zero_ = b.inner_zero_;
  return *this += nb;
}

BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }

BiSeries mul(const BiSeries& a, const BiSeries& b) {
  const int v = a.outer_valuation() + b.outer_valuation();
  const int p = std::min(a.outer_precision() + b.outer_valuation(), b.outer_precision() + a.outer_valuation());
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  if (ac.empty() || bc.empty() || v >= p) {
    BiSeries z;
    z.valuation_ = z.precision_ = p;
    z.inner_zero_ = std::min(a.inner_precision(), b.inner_precision());
    return z;
  }
  const int len = p - v;
  std::vector<QSeries> out;
  out.reserve(len);
  for (int n = 0; n < len; ++n) {
    QSeries acc;
    bool first = true;
    for (int i = 0; i <= n; ++i) {
      if (i >= static_cast<int>(ac.size()) || n - i >= static_cast<int>(bc.size())) continue;
      QSeries t = mul(ac[i], bc[n - i]);
      if (first) {
        acc = std::move(t);
        first = false;
      } else {
        acc += t;
      }
    }
    out.push_back(std::move(acc));
  }
  return BiSeries(v, std::move(out), p);
}

BiSeries bi_divide(const BiSeries& num, const BiSeries& den) {
  const auto dc = den.coeffs();
  if (dc.empty() || dc.front().is_zero()) {
    throw MathError(ErrorKind::NonUnitDenominator, "leading outer coefficient of the denominator is not invertible");
  }
  const QSeries lead_inv = invert(dc.front());
  const int len = den.outer_precision() - den.outer_valuation();
  // b_0 = d_0^{-1}, b_n = -d_0^{-1} sum_{i=1}^n d_i b_{n-i}.
  std::vector<QSeries> inv;
  inv.reserve(len);
  inv.push_back(lead_inv);
  for (int n = 1; n < len; ++n) {
    QSeries acc;
    bool first = true;
    for (int i = 1; i <= n; ++i) {
      if (i >= static_cast<int>(dc.size())) break;
      QSeries t = mul(dc[i], inv[n - i]);
      if (first) {
        acc = std::move(t);
        first = false;
      } else {
        acc += t;
      }
    }
    inv.push_back(first ? QSeries::zero(lead_inv.precision()) : -mul(lead_inv, acc));
  }
  BiSeries den_inv(-den.outer_valuation(), std::move(inv), -den.outer_valuation() + len);
  return mul(num, den_inv);
}

std::vector<std::string> serialize_coeffs(const QSeries& a) {
  std::vector<std::string> out;
  out.reserve(a.coeffs().size());
  for (const auto& c : a.coeffs()) out.push_back(c.get_str());
  return out;
}

QSeries deserialize_series(int valuation, int precision, std::span<const std::string> coeffs) {
  std::vector<Rational> cs;
  cs.reserve(coeffs.size());
  for (const auto& s : coeffs) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw MathError(ErrorKind::Usage, "malformed rational '" + s + "'");
    r.canonicalize();
    if (r.get_den() <= 0) throw MathError(ErrorKind::Usage, "malformed rational '" + s + "'");
    cs.push_back(std::move(r));
  }
  if (static_cast<int>(cs.size()) != precision - valuation) {
    throw MathError(ErrorKind::Usage, "coefficient count does not match (valuation, precision)");
  }
  return QSeries::from_coeffs(valuation, std::move(cs), precision);
}

}  // namespace whmf
