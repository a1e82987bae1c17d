#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "whmf/level.hpp"

namespace whmf {

// 2x2 integer matrix (a b; c d).
struct IntMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return a * d - b * c; }
  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  std::string to_string() const;
};

// Atkin-Lehner matrix W_m = (m x, y; N z, m w) with determinant m.
struct ALMatrix {
  int level = 1;
  int m = 1;
  IntMatrix matrix;
};

// Deterministic choice via the extended gcd on (m, N/m); m = N gives
// (0, -1; N, 0) and m = 1 the identity. Throws NotADivisor.
ALMatrix al_matrix(const LevelData& level, int m);

// True when w has the Atkin-Lehner shape for the divisor m = det(w).
bool is_al_shape(int level, int m, const IntMatrix& w);

// For w of Atkin-Lehner shape with determinant m, the element
// gamma = W_m^{-1} w of Gamma_0(N).
IntMatrix gamma_relative_to(const ALMatrix& wm, const IntMatrix& w);

}  // namespace whmf
