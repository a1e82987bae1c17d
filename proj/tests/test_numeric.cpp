#include <doctest.h>

#include "whmf/errors.hpp"
#include "whmf/numeric.hpp"

using namespace whmf;

TEST_SUITE("numeric") {
  TEST_CASE("Atkin-Lehner matrices") {
    for (int n : admitted_levels()) {
      const LevelData level(n);
      const IntMatrix wn = al_matrix(level, n).matrix;
      CHECK(wn == IntMatrix{0, -1, n, 0});
      CHECK(al_matrix(level, 1).matrix == IntMatrix{});
      for (int m : level.divisors()) {
        const IntMatrix w = al_matrix(level, m).matrix;
        CHECK(w.det() == m);
        CHECK(is_al_shape(n, m, w));
      }
    }
    CHECK(al_matrix(LevelData(6), 2).matrix == IntMatrix{4, 1, 6, 2});
    try {
      al_matrix(LevelData(6), 4);
      FAIL("expected an error");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::NotADivisor);
    }
  }

  TEST_CASE("evaluation with tail bounds") {
    PrecisionScope scope(128);
    const Complex i(Real(0), Real(1));
    const Evaluation one = evaluate(QSeries::one(10), EvalPoint{i, 128}, GrowthModel::weight(0));
    CHECK(boost::multiprecision::abs(one.value.re - 1) == 0);
    std::vector<Rational> ones(60, Rational(1));
    const QSeries geo = QSeries::from_coeffs(0, ones, 60);
    const Evaluation g = evaluate(geo, EvalPoint{i, 128}, GrowthModel::polynomial(0));
    const Real q = boost::multiprecision::exp(-2 * real_pi());
    const Real exact = 1 / (1 - q);
    CHECK(boost::multiprecision::abs(g.value.re - exact) <= g.tail + Real("1e-35"));
    // |q| = 0.9
    const Complex far(Real(0), -boost::multiprecision::log(Real("0.9")) / (2 * real_pi()));
    const QSeries short_geo = QSeries::from_coeffs(0, std::vector<Rational>(50, Rational(1)), 50);
    try {
      evaluate(short_geo, EvalPoint{far, 128}, GrowthModel::polynomial(0), Real("1e-20"));
      FAIL("expected an error");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::TailBoundTooLarge);
    }
  }

  TEST_CASE("rational reconstruction") {
    PrecisionScope scope(160);
    const Integer bound(1000000000);
    CHECK(rational_reconstruct(Real("0.25"), bound, 40) == Rational(1, 4));
    CHECK(rational_reconstruct(Real("0.3333333333333333333333333333333333333333"), bound, 40) == Rational(1, 3));
    CHECK(rational_reconstruct(Real(-22) / Real(7), bound, 40) == Rational(-22, 7));
    try {
      rational_reconstruct(boost::multiprecision::sqrt(Real(2)), bound, 40);
      FAIL("expected an error");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::ReconstructionFailed);
    }
  }
}
