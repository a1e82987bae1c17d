#include <doctest.h>

#include <algorithm>
#include <random>

#include "whmf/errors.hpp"
#include "whmf/series.hpp"

using namespace whmf;

namespace {

QSeries poly(int start, std::vector<int> c, int precision) {
  std::vector<Rational> r(c.begin(), c.end());
  r.resize(std::max<int>(r.size(), precision - start));
  return QSeries::from_coeffs(start, r, precision);
}

QSeries random_series(std::mt19937& rng, int precision) {
  std::uniform_int_distribution<int> val(-2, 1), num(-9, 9), den(1, 4);
  const int v = val(rng);
  std::vector<Rational> c;
  for (int n = v; n < precision; ++n) c.push_back(Rational(num(rng), den(rng)));
  c[0] = Rational(1 + den(rng));
  return QSeries::from_coeffs(v, c, precision);
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("products track valuation and the min-rule") {
    CHECK(mul(poly(0, {1, -1}, 3), poly(0, {1, 1}, 3)) == poly(0, {1, 0, -1}, 3));
    CHECK(mul(QSeries::monomial(1, -1, 5), QSeries::monomial(1, 1, 5)).coeff(0) == 1);
    const QSeries p = mul(QSeries::one(2), poly(-1, {1}, 4));
    CHECK(p.valuation() == -1);
    CHECK(p.precision() == 1);
  }

  TEST_CASE("invert") {
    const QSeries g = invert(poly(0, {1, -1}, 8));
    for (int n = 0; n < 8; ++n) CHECK(g.coeff(n) == 1);
    const QSeries h = invert(poly(1, {1, 1}, 8));
    CHECK(h.valuation() == -1);
    CHECK(h.coeff(-1) == 1);
    CHECK(h.coeff(0) == -1);
    CHECK(h.coeff(1) == 1);
    try {
      invert(QSeries::zero(5));
      FAIL("expected an error");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::ZeroLeadingCoefficient);
    }
  }

  TEST_CASE("theta and its inverse") {
    CHECK(theta(QSeries::monomial(1, -1, 3)) == QSeries::monomial(-1, -1, 3));
    CHECK(theta(QSeries::constant(5, 4)).is_zero());
    CHECK(theta(QSeries::monomial(1, 3, 6)).coeff(3) == 3);
    CHECK(integrate_theta(QSeries::monomial(-1, -1, 3)) == QSeries::monomial(1, -1, 3));
    CHECK(integrate_theta(QSeries::monomial(6, 3, 6)).coeff(3) == 2);
    try {
      integrate_theta(poly(0, {1, 1}, 4));
      FAIL("expected an error");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::NonzeroConstantTerm);
    }
  }

  TEST_CASE("ring axioms on random series") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 25; ++trial) {
      const QSeries a = random_series(rng, 12), b = random_series(rng, 10), c = random_series(rng, 11);
      CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
      const QSeries lhs = mul(a, b + c), rhs = mul(a, b) + mul(a, c);
      CHECK(agrees(lhs, rhs));
      const QSeries one = mul(a, invert(a));
      CHECK(one.valuation() == 0);
      CHECK(agrees(one, QSeries::one(one.precision())));
    }
  }

  TEST_CASE("theta undoes integrate_theta") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
      QSeries a = random_series(rng, 15);
      if (a.valuation() <= 0) a -= QSeries::constant(a.coeff(0), a.precision());
      CHECK(theta(integrate_theta(a)) == a);
    }
  }

  TEST_CASE("precision never exceeds what the operands justify") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
      const QSeries a = random_series(rng, 30), b = random_series(rng, 30);
      const QSeries lo = mul(a.truncate(12), invert(b.truncate(15)));
      const QSeries hi = mul(a, invert(b));
      CHECK(lo.precision() <= hi.precision());
      CHECK(agrees(lo, hi));
    }
  }

  TEST_CASE("bivariate division") {
    // 1 / (q^{-1} (1 - q s(p))) = q (1 + q s + q^2 s^2 + ...)
    const int P = 6, M = 6;
    const QSeries s = poly(0, {1, 2, 3}, P);
    std::vector<QSeries> den_coeffs(M + 1, QSeries::zero(P));
    den_coeffs[0] = QSeries::one(P);
    den_coeffs[1] = -s;
    const BiSeries den(-1, den_coeffs, M);
    const BiSeries one = BiSeries::from_inner(QSeries::one(P), M);
    const BiSeries r = bi_divide(one, den);
    CHECK(r.outer_valuation() == 1);
    QSeries power = QSeries::one(P);
    for (int m = 1; m < std::min(M, r.outer_precision()); ++m) {
      CHECK(agrees(r.coeff(m), power));
      power = mul(power, s);
    }
    std::vector<QSeries> xs(M, QSeries::zero(P));
    xs[0] = poly(0, {2, 1}, P);
    xs[1] = poly(0, {0, 1}, P);
    const BiSeries x(0, xs, M);
    const BiSeries id = bi_divide(x, x);
    CHECK(agrees(id.coeff(0), QSeries::one(P)));
    for (int m = 1; m < id.outer_precision(); ++m) CHECK(id.coeff(m).is_zero());
  }

  TEST_CASE("serialization round trip") {
    const QSeries a = QSeries::from_coeffs(-1, {Rational(1), Rational(0), Rational(-3, 7)}, 2);
    const auto text = serialize_coeffs(a);
    CHECK(text[2] == "-3/7");
    CHECK(deserialize_series(a.valuation(), a.precision(), text) == a);
  }
}
