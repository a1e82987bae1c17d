#include <doctest.h>

#include "oracles.hpp"
#include "whmf/errors.hpp"
#include "whmf/plus_projection.hpp"

using namespace whmf;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const MathError& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Usage;
}

std::vector<mpq_class> coefficients(const QSeries& s, int P) {
  std::vector<mpq_class> c;
  for (int n = 0; n < P; ++n) c.push_back(s.is_zero() ? Rational(0) : s.coeff(n));
  return c;
}

// (f|W)(z) / f(z) for f = a + sqrt(d) b in double precision.
std::complex<double> w_ratio(const QuadraticSeries& f, int k, const IntMatrix& w, std::complex<double> z) {
  const std::complex<double> root = std::sqrt(std::complex<double>(f.d));
  const int P = f.a.precision();
  auto value = [&](std::complex<double> t) {
    return oracle::evaluate(coefficients(f.a, P), 0, t) + root * oracle::evaluate(coefficients(f.b, P), 0, t);
  };
  const std::complex<double> wz = (double(w.a) * z + double(w.b)) / (double(w.c) * z + double(w.d));
  const std::complex<double> factor =
      std::pow(std::sqrt(double(w.det())), k) * std::pow(double(w.c) * z + double(w.d), -k);
  return factor * value(wz) / value(z);
}

// A point near the fixed point of w, where z and w z are equally high.
std::complex<double> near_fixed(const IntMatrix& w, double u, double s) {
  const double t = std::sqrt(double(w.det())) / double(w.c);
  return {-double(w.d) / double(w.c) + t * u, t * s};
}

}  // namespace

TEST_SUITE("plus") {
  TEST_CASE("empty plus spaces") {
    const LevelData level(2);
    CHECK(kind_of([&] { project_plus(level, 2, CharacterPlus::trivial(level)); }) == ErrorKind::EmptyPlusSpace);
    CHECK(kind_of([&] { project_plus(LevelData(7), 1, CharacterPlus::psi(LevelData(7)).pow(3)); }) ==
          ErrorKind::EmptyPlusSpace);
    CHECK(kind_of([&] { project_plus(LevelData(3), 2, CharacterPlus::psi(LevelData(3))); }) == ErrorKind::ParityMismatch);
  }

  TEST_CASE("even weight trivial character equals the symmetrization") {
    for (int n : {2, 3, 5, 7, 11, 23}) {
      const LevelData level(n);
      for (int k : {4, 6, 8}) {
        CAPTURE(n);
        CAPTURE(k);
        const PlusEisenstein e = project_plus(level, k, CharacterPlus::trivial(level));
        CHECK(e.record.nullspace_dimension == 1);
        CHECK(e.record.span_membership);
        CHECK(e.record.max_heldout_residual < 1e-25);
        const oracle::Poly ref = oracle::symmetrization(n, k, 200);
        for (int i = 0; i < 200; ++i) CHECK(e.series.coeff(i) == ref[i]);
      }
    }
  }

  TEST_CASE("weight one at level 3") {
    const LevelData level(3);
    const PlusEisenstein e = project_plus(level, 1, CharacterPlus::psi(level));
    CHECK(e.series.coeff(0) == 1);
    CHECK(e.record.nullspace_dimension == 1);
    // theta series of x^2 + xy + y^2: 1 + 6 sum_{d|n} (d/3) q^n
    for (int n = 1; n < 100; ++n) {
      long long s = 0;
      for (int d = 1; d <= n; ++d) {
        if (n % d == 0) s += oracle::kronecker(d, 3);
      }
      CHECK(e.series.coeff(n) == Rational(6 * static_cast<long>(s)));
    }
  }

  TEST_CASE("product identities at levels 2 and 3") {
    const LevelData two(2), three(3);
    const CharacterPlus p2 = CharacterPlus::psi(two).pow(2);
    CHECK(mul(plus_series(two, 2, p2, 200), plus_series(two, 4, p2, 200)) ==
          plus_series(two, 6, CharacterPlus::trivial(two), 200));
    const CharacterPlus psi = CharacterPlus::psi(three);
    const QSeries e1 = plus_series(three, 1, psi, 200);
    const QSeries e4 = plus_series(three, 4, CharacterPlus::trivial(three), 200);
    CHECK(pow(e1, 4) == e4);
    CHECK(pow(plus_series(three, 2, psi.pow(2), 200), 2) == e4);
    CHECK(mul(plus_series(three, 3, psi, 200), plus_series(three, 3, psi.pow(3), 200)) ==
          plus_series(three, 6, CharacterPlus::trivial(three), 200));
  }

  TEST_CASE("generators over quadratic fields") {
    const LevelData five(5);
    for (int e : {0, 2}) {
      const CharacterPlus chi(five, RealCharacter(5, 5), {{5, Root4(e)}});
      CHECK(kind_of([&] { project_plus(five, 2, chi); }) == ErrorKind::ReconstructionFailed);
      const QuadraticSeries f = plus_series_quadratic(five, 2, chi, 120);
      CHECK(f.d == 5);
      const int sign = e == 0 ? 1 : -1;
      const std::vector<int> a{1, -5, 5, 10, -15}, b{0, -5, -5, -10, -15};
      for (int n = 0; n < 5; ++n) {
        CHECK(f.a.coeff(n) == a[n]);
        CHECK(f.b.coeff(n) == sign * b[n]);
      }
      for (std::complex<double> z : {std::complex<double>(0.03, 0.47), std::complex<double>(-0.11, 0.41)}) {
        CHECK(std::abs(w_ratio(f, 2, {0, -1, 5, 0}, z) - double(sign)) < 1e-9);
      }
    }
    const LevelData l14(14), l15(15);
    const QuadraticSeries x14 = plus_series_quadratic(l14, 1, xi(l14), 150);
    CHECK(x14.d == 2);
    const IntMatrix w2 = al_matrix(l14, 2).matrix, w7 = al_matrix(l14, 7).matrix;
    CHECK(std::abs(w_ratio(x14, 1, w2, near_fixed(w2, 0.1, 1.05)) - 1.0) < 1e-8);
    CHECK(std::abs(w_ratio(x14, 1, w7, near_fixed(w7, -0.2, 0.9)) - std::complex<double>(0, -1)) < 1e-8);
    const QuadraticSeries x15 = plus_series_quadratic(l15, 1, xi(l15), 150);
    CHECK(x15.d == -1);
    const IntMatrix w3 = al_matrix(l15, 3).matrix, w5 = al_matrix(l15, 5).matrix;
    CHECK(std::abs(w_ratio(x15, 1, w3, near_fixed(w3, 0.15, 1.1)) - 1.0) < 1e-8);
    CHECK(std::abs(w_ratio(x15, 1, w5, near_fixed(w5, -0.3, 0.95)) - std::complex<double>(0, 1)) < 1e-8);
    CHECK(kind_of([&] { project_plus(l15, 1, xi(l15)); }) == ErrorKind::ReconstructionFailed);
    // rational generators come back unchanged
    const QuadraticSeries r = plus_series_quadratic(five, 4, CharacterPlus::trivial(five), 50);
    CHECK(r.b.is_zero());
    CHECK(r.a == plus_series(five, 4, CharacterPlus::trivial(five), 50));
  }

  TEST_CASE("expected emptiness matches the nullspace over C") {
    for (int n : admitted_levels()) {
      const LevelData level(n);
      std::vector<CharacterPlus> chars;
      for (int r = 0; r < 4; ++r) chars.push_back(CharacterPlus::psi(level).pow(r));
      if (aux_modulus(level) != 0) {
        chars.push_back(xi(level));
        chars.push_back(CharacterPlus::psi(level).pow(2) * xi(level));
      }
      for (const auto& chi : chars) {
        for (int k = 1; k <= 2 + level.k1(); ++k) {
          if (!chi.is_admissible(k)) continue;
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(chi.describe());
          const int dim = plus_nullspace_dimension(level, k, chi, {}, true);
          CHECK(dim == (plus_space_expected_empty(level, k, chi) ? 0 : 1));
        }
      }
    }
  }
}
