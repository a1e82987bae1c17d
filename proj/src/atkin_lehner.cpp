#include "whmf/atkin_lehner.hpp"

#include <numeric>
#include <sstream>

#include "whmf/errors.hpp"

namespace whmf {

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "(" << a << ", " << b << "; " << c << ", " << d << ")";
  return os.str();
}

namespace {

// Returns (g, s, t) with s*x + t*y = g.
std::array<std::int64_t, 3> ext_gcd(std::int64_t x, std::int64_t y) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (y != 0) {
    std::int64_t q = x / y;
    std::tie(x, y) = std::make_pair(y, x - q * y);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  return {x, s0, t0};
}

}  // namespace

ALMatrix al_matrix(const LevelData& level, int m) {
  const int n = level.n();
  if (m <= 0 || n % m != 0) {
    throw MathError(ErrorKind::NotADivisor, std::to_string(m) + " does not divide " + std::to_string(n));
  }
  ALMatrix w{n, m, {}};
  if (m == 1) return w;
  if (m == n) {
    w.matrix = {0, -1, n, 0};
    return w;
  }
  // det (m x, y; N z, m w) = m  <=>  m x w - (N/m) y z = 1.  Take z = 1, y = -t
  // and x w = s from s m + t (N/m) = 1; pick x = s, w = 1.
  const std::int64_t cof = n / m;
  auto [g, s, t] = ext_gcd(m, cof);
  if (g != 1) throw MathError(ErrorKind::NotADivisor, "divisor is not a Hall divisor of the level");
  // Normalize to s > 0 so that entries are small and positive where possible.
  while (s <= 0) {
    s += cof;
    t -= m;
  }
  w.matrix = {m * s, -t, n, m};
  return w;
}

bool is_al_shape(int level, int m, const IntMatrix& w) {
  if (m <= 0 || level % m != 0) return false;
  if (w.det() != m) return false;
  return w.a % m == 0 && w.c % level == 0 && w.d % m == 0;
}

IntMatrix gamma_relative_to(const ALMatrix& wm, const IntMatrix& w) {
  // W_m^{-1} = adj(W_m) / m.
  const IntMatrix& x = wm.matrix;
  IntMatrix adj{x.d, -x.b, -x.c, x.a};
  IntMatrix p = adj * w;
  const std::int64_t m = wm.m;
  if (p.a % m || p.b % m || p.c % m || p.d % m) {
    throw MathError(ErrorKind::NotADivisor, "matrix " + w.to_string() + " is not in the W_" + std::to_string(m) + " coset");
  }
  IntMatrix g{p.a / m, p.b / m, p.c / m, p.d / m};
  if (g.det() != 1 || g.c % wm.level != 0) {
    throw MathError(ErrorKind::NotADivisor, "matrix " + w.to_string() + " is not in the W_" + std::to_string(m) + " coset");
  }
  return g;
}

}  // namespace whmf
