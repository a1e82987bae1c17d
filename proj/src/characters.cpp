#include "whmf/characters.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "whmf/errors.hpp"

namespace whmf {

namespace {

int jacobi(long long a, long long n) {
  // n odd, positive.
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long long r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace

int kronecker(long long a, long long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (a % 2 == 0) return 0;
    long long r = ((a % 8) + 8) % 8;
    if ((r == 3 || r == 5) && (v % 2 == 1)) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(a, n);
}

RealCharacter::RealCharacter(int modulus, int conductor) : modulus_(modulus), conductor_(conductor) {
  if (conductor < 1 || modulus % conductor != 0 || conductor % 2 == 0) {
    throw MathError(ErrorKind::BadCharacter,
                    "conductor " + std::to_string(conductor) + " is not an odd divisor of " + std::to_string(modulus));
  }
  for (int p : prime_factors(conductor)) {
    if ((conductor / p) % p == 0) throw MathError(ErrorKind::BadCharacter, "conductor must be squarefree");
  }
}

int RealCharacter::operator()(long long a) const {
  if (std::gcd(a < 0 ? -a : a, static_cast<long long>(modulus_)) != 1) return 0;
  if (conductor_ == 1) return 1;
  return jacobi(a, conductor_);
}

int RealCharacter::parity() const { return conductor_ == 1 ? 1 : jacobi(-1, conductor_); }

RealCharacter operator*(const RealCharacter& x, const RealCharacter& y) {
  int g = std::gcd(x.conductor_, y.conductor_);
  int m = std::lcm(x.modulus_, y.modulus_);
  return {m, (x.conductor_ / g) * (y.conductor_ / g)};
}

std::string RealCharacter::to_string() const {
  if (conductor_ == 1) return "1";
  return "(./" + std::to_string(conductor_) + ")";
}

std::vector<RealCharacter> real_characters(int n) {
  std::vector<int> odd;
  for (int p : prime_factors(n)) {
    if (p != 2) odd.push_back(p);
  }
  std::vector<RealCharacter> out;
  for (unsigned mask = 0; mask < (1u << odd.size()); ++mask) {
    int f = 1;
    for (std::size_t i = 0; i < odd.size(); ++i) {
      if (mask & (1u << i)) f *= odd[i];
    }
    out.emplace_back(n, f);
  }
  return out;
}

std::string Root4::to_string() const {
  static const char* names[] = {"1", "i", "-1", "-i"};
  return names[e];
}

// ---------------------------------------------------------------------------

CharacterPlus::CharacterPlus(LevelData level, RealCharacter restriction, std::map<int, Root4> w)
    : level_(level), restriction_(restriction), w_(std::move(w)) {
  if (restriction_.modulus() != level_.n()) restriction_ = RealCharacter(level_.n(), restriction_.conductor());
  for (int p : level_.primes()) {
    if (!w_.count(p)) throw MathError(ErrorKind::BadCharacter, "missing W_" + std::to_string(p) + " value");
  }
  for (const auto& [p, v] : w_) {
    if (level_.n() % p != 0) throw MathError(ErrorKind::BadCharacter, "W_" + std::to_string(p) + " is not an involution of this level");
  }
}

CharacterPlus CharacterPlus::trivial(const LevelData& level) {
  std::map<int, Root4> w;
  for (int p : level.primes()) w[p] = Root4(0);
  return {level, RealCharacter::trivial(level.n()), w};
}

CharacterPlus CharacterPlus::psi(const LevelData& level) {
  const int n = level.n();
  std::map<int, Root4> w;
  if (level.is_prime()) {
    RealCharacter res = (n % 4 == 3) ? RealCharacter(n, n) : RealCharacter::trivial(n);
    w[n] = Root4(3);
    return {level, res, w};
  }
  // Composite levels: psi is trivial on Gamma_0(N); the value on the second
  // prime follows from psi(W_N) = i^{-1} and the group law.
  const int fixed = (n == 15) ? 3 : 2;
  const int other = n / fixed;
  w[fixed] = Root4(0);
  w[other] = Root4(0);
  CharacterPlus probe(level, RealCharacter::trivial(n), w);
  // probe(W_N) = w_fixed * w_other / chi(gamma); solve for w_other.
  Root4 base = probe.w_value(n);
  w[other] = Root4(3) / base;
  return {level, RealCharacter::trivial(n), w};
}

CharacterPlus CharacterPlus::delta_character(const LevelData& level) { return psi(level).pow(level.k1()); }

int CharacterPlus::restriction_value(long long a) const {
  if (std::gcd(a < 0 ? -a : a, static_cast<long long>(level_.n())) != 1) {
    throw MathError(ErrorKind::NotCoprime, std::to_string(a) + " is not coprime to " + std::to_string(level_.n()));
  }
  return restriction_(a);
}

Root4 CharacterPlus::w_value(int m) const {
  const int n = level_.n();
  if (m <= 0 || n % m != 0) throw MathError(ErrorKind::NotADivisor, std::to_string(m) + " does not divide " + std::to_string(n));
  if (m == 1) return Root4(0);
  auto ps = prime_factors(m);
  if (ps.size() == 1) return w_.at(m);
  // W_p1 W_p2 = W_m gamma  =>  chi(W_m) = chi(W_p1) chi(W_p2) / chi(gamma).
  IntMatrix prod = al_matrix(level_, ps[0]).matrix * al_matrix(level_, ps[1]).matrix;
  IntMatrix g = gamma_relative_to(al_matrix(level_, m), prod);
  return w_.at(ps[0]) * w_.at(ps[1]) / Root4::from_sign(restriction_(g.d));
}

Root4 CharacterPlus::value(const IntMatrix& w) const {
  const auto det = w.det();
  if (det == 1) {
    if (w.c % level_.n() != 0) throw MathError(ErrorKind::NotADivisor, "matrix is not in Gamma_0(N)");
    return Root4::from_sign(restriction_(w.d));
  }
  if (det <= 0 || level_.n() % det != 0) throw MathError(ErrorKind::NotADivisor, "determinant does not divide the level");
  ALMatrix wm = al_matrix(level_, static_cast<int>(det));
  IntMatrix g = gamma_relative_to(wm, w);
  return w_value(static_cast<int>(det)) * Root4::from_sign(restriction_(g.d));
}

bool CharacterPlus::is_trivial() const { return *this == trivial(level_); }

bool CharacterPlus::is_consistent() const {
  for (int m : level_.divisors()) {
    if (m == 1) continue;
    const IntMatrix& x = al_matrix(level_, m).matrix;
    IntMatrix sq = x * x;
    // sq = m * gamma.
    IntMatrix g{sq.a / m, sq.b / m, sq.c / m, sq.d / m};
    if (w_value(m).squared() != Root4::from_sign(restriction_(g.d))) return false;
  }
  return true;
}

bool CharacterPlus::is_admissible(int k) const {
  const int sign = (k % 2 == 0) ? 1 : -1;
  return parity() == sign && is_consistent();
}

CharacterPlus CharacterPlus::inverse() const {
  std::map<int, Root4> w;
  for (const auto& [p, v] : w_) w[p] = Root4(-v.e);
  return {level_, restriction_, w};
}

CharacterPlus CharacterPlus::pow(int e) const {
  CharacterPlus base = e < 0 ? inverse() : *this;
  int k = e < 0 ? -e : e;
  CharacterPlus r = trivial(level_);
  for (int i = 0; i < k % 4; ++i) r = r * base;  // chi^4 = 1
  return r;
}

CharacterPlus operator*(const CharacterPlus& x, const CharacterPlus& y) {
  if (!(x.level_ == y.level_)) throw MathError(ErrorKind::BadCharacter, "characters of different levels");
  std::map<int, Root4> w;
  for (const auto& [p, v] : x.w_) w[p] = v * y.w_.at(p);
  return {x.level_, x.restriction_ * y.restriction_, w};
}

std::string CharacterPlus::describe() const {
  std::ostringstream os;
  os << "chi[N=" << level_.n() << ";res=" << restriction_.to_string();
  for (const auto& [p, v] : w_) os << ";W" << p << "=" << v.to_string();
  os << "]";
  return os.str();
}

std::string CharacterPlus::name() const {
  const CharacterPlus p = psi(level_);
  auto psi_name = [](int r) -> std::string {
    if (r == 0) return "";
    if (r == 1) return "psi";
    return "psi^" + std::to_string(r);
  };
  for (int r = 0; r < 4; ++r) {
    if (p.pow(r) == *this) return r == 0 ? "1" : psi_name(r);
  }
  if (aux_modulus(level_) != 0) {
    const CharacterPlus x = xi(level_);
    const std::string xn = "xi" + std::to_string(aux_modulus(level_));
    for (int r = 0; r < 4; ++r) {
      if (p.pow(r) * x == *this) return r == 0 ? xn : psi_name(r) + "*" + xn;
    }
  }
  return describe();
}

int aux_modulus(const LevelData& level) {
  if (level.n() == 14) return 7;
  if (level.n() == 15) return 15;
  return 0;
}

std::vector<CharacterPlus> aux_candidates(const LevelData& level) {
  const int f = aux_modulus(level);
  if (f == 0) throw MathError(ErrorKind::BadCharacter, "no auxiliary character at level " + std::to_string(level.n()));
  std::vector<CharacterPlus> out;
  const auto& ps = level.primes();
  for (int e0 = 0; e0 < 4; ++e0) {
    for (int e1 = 0; e1 < 4; ++e1) {
      CharacterPlus c(level, RealCharacter(level.n(), f), {{ps[0], Root4(e0)}, {ps[1], Root4(e1)}});
      if (c.is_consistent()) out.push_back(c);
    }
  }
  return out;
}

namespace {

// W-values of the default auxiliary character on (W_p1, W_p2), p1 < p2. Two
// consistent assignments carry a nonzero weight one plus space at each level;
// this is the first of them in the order of aux_candidates. The
// plus_projection tests recompute the search.
std::map<int, Root4> default_aux_w(const LevelData& level) {
  if (level.n() == 14) return {{2, Root4(0)}, {7, Root4(3)}};
  return {{3, Root4(0)}, {5, Root4(1)}};
}

}  // namespace

CharacterPlus xi(const LevelData& level) { return xi(level, default_aux_w(level)); }

CharacterPlus xi(const LevelData& level, const std::map<int, Root4>& w) {
  const int f = aux_modulus(level);
  if (f == 0) throw MathError(ErrorKind::BadCharacter, "no auxiliary character at level " + std::to_string(level.n()));
  CharacterPlus c(level, RealCharacter(level.n(), f), w);
  if (!c.is_consistent()) throw MathError(ErrorKind::BadCharacter, "inconsistent W-values for the auxiliary character");
  return c;
}

namespace {

// The describe() form, e.g. chi[N=5;res=(./5);W5=-1]; N may be omitted.
CharacterPlus parse_explicit(const LevelData& level, const std::string& text) {
  auto bad = [&] { return MathError(ErrorKind::BadCharacter, "cannot parse character '" + text + "'"); };
  if (text.size() < 5 || text.back() != ']') throw bad();
  std::stringstream ss(text.substr(4, text.size() - 5));
  std::string tok;
  int conductor = 1;
  std::map<int, Root4> w;
  while (std::getline(ss, tok, ';')) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw bad();
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "N") {
        if (std::stoi(val) != level.n()) throw bad();
      } else if (key == "res") {
        conductor = val == "1" ? 1 : std::stoi(val.substr(val.rfind('/') + 1));
      } else if (key.size() > 1 && key[0] == 'W') {
        static const char* names[] = {"1", "i", "-1", "-i"};
        const auto* it = std::find(std::begin(names), std::end(names), val);
        if (it == std::end(names)) throw bad();
        w[std::stoi(key.substr(1))] = Root4(static_cast<int>(it - std::begin(names)));
      } else {
        throw bad();
      }
    } catch (const std::invalid_argument&) {
      throw bad();
    } catch (const std::out_of_range&) {
      throw bad();
    }
  }
  if (level.n() % conductor != 0) throw bad();
  return CharacterPlus(level, RealCharacter(level.n(), conductor), w);
}

}  // namespace

CharacterPlus parse_character(const LevelData& level, const std::string& text) {
  if (text.rfind("chi[", 0) == 0) return parse_explicit(level, text);
  CharacterPlus result = CharacterPlus::trivial(level);
  std::stringstream ss(text);
  std::string tok;
  bool any = false;
  while (std::getline(ss, tok, '*')) {
    any = true;
    if (tok == "1") continue;
    if (tok.rfind("psi", 0) == 0) {
      int r = 1;
      if (tok.size() > 3) {
        if (tok[3] != '^') throw MathError(ErrorKind::BadCharacter, "cannot parse '" + tok + "'");
        std::string ex = tok.substr(4);
        if (ex == "k1") {
          r = level.k1();
        } else {
          try {
            std::size_t used = 0;
            r = std::stoi(ex, &used);
            if (used != ex.size()) throw std::invalid_argument(ex);
          } catch (const std::exception&) {
            throw MathError(ErrorKind::BadCharacter, "cannot parse exponent in '" + tok + "'");
          }
        }
      }
      result = result * CharacterPlus::psi(level).pow(r);
      continue;
    }
    if (tok == "xi" || tok == "xi" + std::to_string(aux_modulus(level))) {
      result = result * xi(level);
      continue;
    }
    throw MathError(ErrorKind::BadCharacter, "cannot parse character '" + text + "' at level " + std::to_string(level.n()));
  }
  if (!any) throw MathError(ErrorKind::BadCharacter, "empty character");
  return result;
}

Rational bernoulli_chi(int k, const RealCharacter& chi) {
  if (k < 0) throw MathError(ErrorKind::BadCharacter, "negative Bernoulli index");
  const int f = chi.conductor();
  const RealCharacter prim = chi.primitive();
  const int len = k + 1;
  // numerator: sum_a chi(a) e^{a t};  denominator: (e^{f t} - 1)/t.
  std::vector<Rational> num(len), den(len);
  Integer fact = 1;
  for (int n = 0; n < len; ++n) {
    if (n > 0) fact *= n;
    Rational s = 0;
    for (int a = 1; a <= f; ++a) {
      int c = prim(a);
      if (c == 0) continue;
      Integer an;
      mpz_ui_pow_ui(an.get_mpz_t(), a, n);
      s += c * Rational(an);
    }
    num[n] = s / Rational(fact);
    Integer fn;
    mpz_ui_pow_ui(fn.get_mpz_t(), f, n + 1);
    den[n] = Rational(fn) / Rational(fact * (n + 1));
  }
  QSeries q = divide(QSeries::from_coeffs(0, num), QSeries::from_coeffs(0, den));
  Integer kf = 1;
  for (int i = 2; i <= k; ++i) kf *= i;
  return q.coeff(k) * Rational(kf);
}

}  // namespace whmf
