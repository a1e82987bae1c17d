#include <doctest.h>

#include "whmf/errors.hpp"
#include "whmf/theorems.hpp"

using namespace whmf;

TEST_SUITE("theorems") {
  TEST_CASE("generating function") {
    const LevelData two(2);
    const CharacterPlus one = CharacterPlus::trivial(two);
    const VerificationReport r = check_genfun(two, one, 0, 10, 10);
    CHECK(r.passed);
    CHECK(r.checks > 0);
    CHECK(r.witness.is_null());
    const VerificationReport bad =
        check_genfun(two, one, 0, 10, 10, [](QSeries& s) { s = s + QSeries::monomial(1, 3, s.precision()); });
    CHECK_FALSE(bad.passed);
    CHECK_FALSE(bad.witness.is_null());
  }

  TEST_CASE("duality") {
    for (int n : {2, 23}) {
      const LevelData level(n);
      for (const CharacterPlus& chi : psi_family(level)) {
        for (int k = -level.k1(); k <= 2 + level.k1(); ++k) {
          if (!chi.is_admissible(k)) continue;
          const VerificationReport r = check_duality(level, chi, k, 8, 8);
          CAPTURE(n);
          CAPTURE(k);
          CHECK(r.passed);
        }
      }
    }
  }

  TEST_CASE("divisibility") {
    const LevelData two(2);
    const CharacterPlus one = CharacterPlus::trivial(two);
    CHECK(check_divisibility(two, one, 4, 10, 20).passed);
    CHECK(check_divisibility(two, one, 0, 10, 20).passed);
    try {
      check_divisibility(two, one, 12, 5, 5);
      FAIL("expected an error");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::HypothesisViolated);
    }
  }

  TEST_CASE("integrality, dimensions, products") {
    const LevelData two(2), three(3);
    CHECK(check_integrality(two, CharacterPlus::trivial(two), 0, 6, 40).passed);
    CHECK(check_integrality(three, CharacterPlus::trivial(three), 6, 6, 40).passed);
    for (int n : admitted_levels()) CHECK(check_dimensions(LevelData(n)).passed);
    for (int n : {2, 3, 5}) CHECK(check_products(LevelData(n), 60).passed);
  }

  TEST_CASE("reports") {
    CHECK(suite_names().size() == 8);
    const auto r = run_suite("dimensions", LevelData(7), "", std::nullopt, 50);
    REQUIRE(r.size() == 1);
    const auto j = r[0].to_json();
    CHECK(j["suite"] == "dimensions");
    CHECK_FALSE(j.contains("wall_seconds"));
    CHECK(r[0].to_json(true).contains("wall_seconds"));
    CHECK_THROWS_AS(run_suite("nonsense", LevelData(2), "", std::nullopt, 50), MathError);
  }
}
