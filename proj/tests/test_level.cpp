#include <doctest.h>

#include "oracles.hpp"
#include "whmf/errors.hpp"
#include "whmf/level.hpp"

using namespace whmf;

TEST_SUITE("level") {
  TEST_CASE("admitted levels and k1") {
    const std::map<int, int> k1{{2, 8}, {3, 6}, {5, 4}, {6, 4}, {7, 3}, {11, 2}, {14, 2}, {15, 2}, {23, 1}};
    for (int n : admitted_levels()) {
      const LevelData level(n);
      CHECK(level.k1() == k1.at(n));
      CHECK(level.k1() * level.sigma1() == 12 * level.sigma0());
    }
    for (int bad : {1, 4, 9, 13, 30}) {
      try {
        LevelData level(bad);
        FAIL("accepted level " << bad);
      } catch (const MathError& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedLevel);
      }
    }
  }

  TEST_CASE("eta core") {
    const QSeries e = eta_core(20);
    const std::map<int, int> expected{{0, 1}, {1, -1}, {2, -1}, {5, 1}, {7, 1}, {12, -1}, {15, -1}};
    for (int n = 0; n < 20; ++n) CHECK(e.coeff(n) == (expected.count(n) ? expected.at(n) : 0));
    CHECK(eta_core(100) == eta_core_naive(100));
    const oracle::Poly ref = oracle::eta_product({{1, 1}}, 100);
    for (int n = 0; n < 100; ++n) CHECK(eta_core(100).coeff(n) == ref[n]);
    CHECK(agrees(mul(eta_core(30), invert(eta_core(30))), QSeries::one(30)));
  }

  TEST_CASE("eta quotients") {
    EtaQuotient d23;
    d23.exponents = {{1, 1}, {23, 1}};
    const QSeries s = expand_eta_quotient(d23, 40);
    CHECK(s.valuation() == 1);
    CHECK(s.coeff(1) == 1);
    const oracle::Poly ref = oracle::eta_product({{1, 1}, {23, 1}}, 40);
    for (int n = 1; n < 40; ++n) CHECK(s.coeff(n) == ref[n - 1]);
    EtaQuotient lone;
    lone.exponents = {{1, 1}};
    try {
      expand_eta_quotient(lone, 10);
      FAIL("expected an error");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::FractionalValuation);
    }
  }

  TEST_CASE("Delta_N against the naive product") {
    for (int n : admitted_levels()) {
      const LevelData level(n);
      CAPTURE(n);
      const QSeries d = delta_N(level, 200);
      CHECK(d.valuation() == 1);
      CHECK(d.coeff(1) == 1);
      CHECK(d.is_integral());
      CHECK(delta_eta_quotient(level).offset() == 1);
      std::map<int, int> exps;
      for (int m : level.divisors()) exps[m] = 24 / level.sigma1();
      const oracle::Poly ref = oracle::eta_product(exps, 199);
      for (int k = 1; k < 200; ++k) CHECK(d.coeff(k) == ref[k - 1]);
    }
  }
}
