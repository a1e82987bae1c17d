#include <doctest.h>

#include "oracles.hpp"
#include "whmf/errors.hpp"
#include "whmf/numeric.hpp"
#include "whmf/plus_projection.hpp"

using namespace whmf;

TEST_SUITE("characters") {
  TEST_CASE("kronecker symbol") {
    CHECK(kronecker(-11, 1) == 1);
    CHECK(kronecker(-7, 3) == -1);
    CHECK(kronecker(-3, 2) == -1);
    for (long long a = -40; a <= 40; ++a) {
      for (long long n = 1; n <= 60; ++n) {
        CAPTURE(a);
        CAPTURE(n);
        CHECK(kronecker(a, n) == oracle::kronecker(a, n));
      }
    }
  }

  TEST_CASE("psi values") {
    const CharacterPlus psi2 = CharacterPlus::psi(LevelData(2));
    for (int a : {1, 3, 5, 7, -1, 99}) CHECK(psi2.restriction_value(a) == 1);
    const LevelData seven(7);
    const CharacterPlus psi7 = CharacterPlus::psi(seven);
    CHECK(psi7.restriction_value(3) == -1);
    CHECK(psi7.restriction_value(-1) == -1);
    for (int n : admitted_levels()) {
      const LevelData level(n);
      const CharacterPlus psi = CharacterPlus::psi(level);
      CHECK(psi.w_value(n) == Root4(3));
      CHECK(psi.pow(4).is_trivial());
    }
    CHECK(CharacterPlus::psi(LevelData(6)).w_value(2) == Root4(0));
    CHECK(CharacterPlus::psi(LevelData(14)).w_value(2) == Root4(0));
    CHECK(CharacterPlus::psi(LevelData(15)).w_value(3) == Root4(0));
    try {
      psi7.restriction_value(14);
      FAIL("expected an error");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::NotCoprime);
    }
  }

  TEST_CASE("odd powers of psi are inconsistent at composite levels") {
    for (int n : {2, 5, 6, 14, 15}) {
      const LevelData level(n);
      CHECK_FALSE(CharacterPlus::psi(level).is_consistent());
      CHECK(CharacterPlus::psi(level).pow(2).is_consistent());
    }
    for (int n : {3, 7, 11, 23}) CHECK(CharacterPlus::psi(LevelData(n)).is_consistent());
  }

  TEST_CASE("generalized Bernoulli numbers") {
    CHECK(bernoulli_chi(2, RealCharacter(1, 1)) == Rational(1, 6));
    CHECK(bernoulli_chi(1, RealCharacter(3, 3)) == Rational(-1, 3));
    for (int f : {1, 3, 5, 7, 11, 15, 23}) {
      const RealCharacter chi(f, f);
      auto fn = [&](long long a) { return chi(a); };
      for (int k = 0; k <= 8; ++k) {
        CAPTURE(f);
        CAPTURE(k);
        const Rational b = bernoulli_chi(k, chi);
        CHECK(b == oracle::bernoulli_chi(k, f, fn));
        if (k > 1 && chi.parity() != (k % 2 == 0 ? 1 : -1)) CHECK(b == 0);
      }
    }
  }

  TEST_CASE("inverse equals the psi^{-2k} twist on admissible pairs") {
    for (int n : admitted_levels()) {
      const LevelData level(n);
      const CharacterPlus psi = CharacterPlus::psi(level);
      for (int r = 0; r < 4; ++r) {
        const CharacterPlus chi = psi.pow(r);
        if (!chi.is_consistent()) continue;
        for (int k = -4; k <= 12; ++k) {
          if (!chi.is_admissible(k)) continue;
          CHECK(chi.inverse() == chi * psi.pow(-2 * k));
        }
      }
    }
  }

  TEST_CASE("delta_character matches the measured eigenvalues of Delta_N") {
    PrecisionScope scope(192);
    for (int n : admitted_levels()) {
      const LevelData level(n);
      const CharacterPlus chi = CharacterPlus::delta_character(level);
      CHECK(chi == CharacterPlus::psi(level).pow(level.k1()));
      const QSeries d = delta_N(level, 300);
      for (int p : level.primes()) {
        const IntMatrix w = al_matrix(level, p).matrix;
        // a point near the fixed point of w
        const Complex z(Real(-static_cast<double>(w.d)) / Real(static_cast<double>(w.c)) + Real("0.03"),
                        boost::multiprecision::sqrt(Real(p)) / Real(static_cast<double>(w.c)) * Real("1.05"));
        const Complex dz = evaluate(d, EvalPoint{z, 192}, GrowthModel::weight(level.k1())).value;
        const Complex dw = evaluate(d, EvalPoint{mobius(w, z), 192}, GrowthModel::weight(level.k1())).value;
        const std::complex<double> ratio = (slash_factor(w, z, level.k1()) * dw / dz).to_double();
        const std::complex<double> expected = root4(chi.w_value(p).e).to_double();
        CAPTURE(n);
        CAPTURE(p);
        CHECK(std::abs(ratio - expected) < 1e-30);
      }
    }
  }

  TEST_CASE("auxiliary candidates with a nonzero weight one plus space") {
    const LevelData l14(14), l15(15);
    const auto c14 = aux_weight_one_candidates(l14);
    REQUIRE(c14.size() == 2);
    CHECK(c14[0] == xi(l14));
    CHECK(c14[0].w_value(2) == Root4(0));
    CHECK(c14[0].w_value(7) == Root4(3));
    CHECK(c14[1].w_value(2) == Root4(2));
    const auto c15 = aux_weight_one_candidates(l15);
    REQUIRE(c15.size() == 2);
    CHECK(c15[0] == xi(l15));
    CHECK(c15[0].w_value(3) == Root4(0));
    CHECK(c15[0].w_value(5) == Root4(1));
  }

  TEST_CASE("parsing") {
    const LevelData level(5);
    CHECK(parse_character(level, "1").is_trivial());
    CHECK(parse_character(level, "psi^k1") == CharacterPlus::delta_character(level));
    CHECK(parse_character(level, "psi^2") == CharacterPlus::psi(level).pow(2));
    const CharacterPlus c = parse_character(level, "chi[res=(./5);W5=-1]");
    CHECK(c.restriction().conductor() == 5);
    CHECK(c.w_value(5) == Root4(2));
    CHECK(parse_character(level, c.describe()) == c);
    CHECK(parse_character(LevelData(14), "psi^2*xi7") == CharacterPlus::psi(LevelData(14)).pow(2) * xi(LevelData(14)));
    for (const char* bad : {"", "phi", "psi^x", "chi[res=(./7);W5=1]", "chi[W5=2]"}) {
      try {
        parse_character(level, bad);
        FAIL("accepted " << bad);
      } catch (const MathError& e) {
        CHECK(e.kind() == ErrorKind::BadCharacter);
      }
    }
  }
}
