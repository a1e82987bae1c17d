#pragma once

// Real Dirichlet characters on Gamma_0(N) and their extensions to
// Gamma_0(N)^+. A CharacterPlus is pure data: its restriction to Gamma_0(N)
// plus a fourth root of unity for each Atkin-Lehner involution W_p, p | N
// prime. Values on composite W_m follow from the group law.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "whmf/atkin_lehner.hpp"
#include "whmf/level.hpp"
#include "whmf/series.hpp"

namespace whmf {

// Kronecker symbol (a/n), with (a/0) = [a = +-1], (a/-1) = sign(a),
// (a/2) = 0, 1, -1 for a even, a = +-1 mod 8, a = +-3 mod 8.
int kronecker(long long a, long long n);

// A real Dirichlet character modulo `modulus`, given by its conductor f
// (a squarefree product of odd primes dividing the modulus):
// chi(a) = (a/f) for gcd(a, modulus) = 1 and 0 otherwise.
class RealCharacter {
 public:
  RealCharacter() = default;
  RealCharacter(int modulus, int conductor);

  static RealCharacter trivial(int modulus) { return {modulus, 1}; }

  int modulus() const { return modulus_; }
  int conductor() const { return conductor_; }
  bool is_trivial() const { return conductor_ == 1; }
  int operator()(long long a) const;
  // chi(-1).
  int parity() const;
  // The same character regarded as primitive modulo its conductor.
  RealCharacter primitive() const { return {conductor_, conductor_}; }

  friend RealCharacter operator*(const RealCharacter& x, const RealCharacter& y);
  friend bool operator==(const RealCharacter&, const RealCharacter&) = default;

  std::string to_string() const;

 private:
  int modulus_ = 1;
  int conductor_ = 1;
};

// All real characters modulo n (one per subset of the odd primes of n).
std::vector<RealCharacter> real_characters(int n);

// A fourth root of unity i^e, e in {0,1,2,3}.
struct Root4 {
  int e = 0;

  Root4() = default;
  explicit Root4(int exponent) : e(((exponent % 4) + 4) % 4) {}
  static Root4 from_sign(int s) { return Root4(s > 0 ? 0 : 2); }

  friend Root4 operator*(Root4 x, Root4 y) { return Root4(x.e + y.e); }
  friend Root4 operator/(Root4 x, Root4 y) { return Root4(x.e - y.e); }
  friend bool operator==(Root4, Root4) = default;
  Root4 squared() const { return Root4(2 * e); }
  std::string to_string() const;
};

class CharacterPlus {
 public:
  CharacterPlus() = default;
  // w maps each prime p | N to the value on W_p = al_matrix(level, p).
  CharacterPlus(LevelData level, RealCharacter restriction, std::map<int, Root4> w);

  static CharacterPlus trivial(const LevelData& level);
  // psi: restriction (-N/.) for prime N = 3 mod 4 and trivial otherwise,
  // psi(W_N) = i^{-1}, psi(W_2) = 1 for N in {6, 14}, psi(W_3) = 1 for N = 15
  // (so that psi^2 is the character of Delta_15).
  static CharacterPlus psi(const LevelData& level);
  // chi^(N) = psi^{k1(N)}, the character of Delta_N.
  static CharacterPlus delta_character(const LevelData& level);

  const LevelData& level() const { return level_; }
  const RealCharacter& restriction() const { return restriction_; }
  const std::map<int, Root4>& prime_w_values() const { return w_; }

  // Throws NotCoprime when gcd(a, N) > 1.
  int restriction_value(long long a) const;
  int parity() const { return restriction_.parity(); }
  // Value on al_matrix(level, m) for any m | N. Throws NotADivisor.
  Root4 w_value(int m) const;
  // Value on an arbitrary matrix of Atkin-Lehner shape (or of Gamma_0(N)).
  Root4 value(const IntMatrix& w) const;

  bool is_trivial() const;
  // chi(-1) = (-1)^k and every W_m squares to the value its square forces
  // (W_m^2 = m * gamma with gamma in Gamma_0(N)). Only consistent characters
  // can carry nonzero forms of weight k.
  bool is_admissible(int k) const;
  bool is_consistent() const;

  CharacterPlus inverse() const;
  CharacterPlus pow(int e) const;
  friend CharacterPlus operator*(const CharacterPlus& x, const CharacterPlus& y);
  friend bool operator==(const CharacterPlus& x, const CharacterPlus& y) {
    return x.level_ == y.level_ && x.restriction_ == y.restriction_ && x.w_ == y.w_;
  }

  // "1", "psi^r", "xi7", "psi^r*xi15", or a raw descriptor when the character
  // is outside the psi/xi family.
  std::string name() const;
  std::string describe() const;

 private:
  LevelData level_{2};
  RealCharacter restriction_;
  std::map<int, Root4> w_;
};

// Auxiliary Legendre character: (./7) at N = 14 and (./15) at N = 15, 0
// elsewhere.
int aux_modulus(const LevelData& level);
// All consistent W-value assignments for the auxiliary restriction.
std::vector<CharacterPlus> aux_candidates(const LevelData& level);
// The default auxiliary character xi (see the README for how the W-values
// were fixed). Throws BadCharacter at levels without one.
CharacterPlus xi(const LevelData& level);
// Same with explicit W-values on the primes of N.
CharacterPlus xi(const LevelData& level, const std::map<int, Root4>& w);

// "1", "psi", "psi^3", "psi^k1", "xi7", "psi^2*xi15". Throws BadCharacter.
CharacterPlus parse_character(const LevelData& level, const std::string& text);

// Generalized Bernoulli number B_{k,chi} for chi primitive modulo its
// conductor, from sum_a chi(a) t e^{at}/(e^{ft}-1) = sum B_{n,chi} t^n/n!.
Rational bernoulli_chi(int k, const RealCharacter& chi);

}  // namespace whmf
