#include "whmf/basis.hpp"

#include <cstdlib>
#include <map>
#include <mutex>

#include "whmf/errors.hpp"

namespace whmf {

namespace {

int floor_mod(int a, int m) { return ((a % m) + m) % m; }

std::string where(const LevelData& level, const CharacterPlus& chi, int k) {
  return "N=" + std::to_string(level.n()) + " chi=" + chi.name() + " k=" + std::to_string(k);
}

QSeries eisenstein_or_one(const LevelData& level, int k, const CharacterPlus& chi, int precision,
                          const ProjectionConfig& config) {
  if (k == 0) return QSeries::one(precision);
  return plus_series(level, k, chi, precision, config);
}

struct FamilyKey {
  int n;
  std::string chi;
  int k;
  auto operator<=>(const FamilyKey&) const = default;
};

std::mutex memo_mutex;
std::map<FamilyKey, std::vector<BasisElement>>& memo() {
  static std::map<FamilyKey, std::vector<BasisElement>> m;
  return m;
}

std::vector<BasisElement> build_family(const LevelData& level, const CharacterPlus& chi, int k, int m_max, int precision,
                                       const ProjectionConfig& config) {
  const int k1 = level.k1();
  const int kp = k_min(level, chi, k);
  const int ell = (k - kp) / k1;
  const CharacterPlus tw = chi * CharacterPlus::psi(level).pow(kp - k);
  const int steps = m_max + ell;
  // Each multiplication by j_N costs one term; invert costs two per power.
  const int w0 = precision + steps + 3 * std::abs(ell) + 2;

  QSeries start = eisenstein_or_one(level, kp, tw, w0, config);
  if (ell != 0) start = mul(start, pow(delta_N(level, w0), ell));
  const Hauptmodul h = hauptmodul(level, w0 + m_max + std::abs(ell) + 2, config);

  std::vector<BasisElement> out;
  BasisElement first;
  first.level = level;
  first.weight = k;
  first.chi = chi;
  first.m = -ell;
  first.k_prime = kp;
  first.ell = ell;
  first.degree = 0;
  first.series = start;
  first.faber = {1};
  out.push_back(first);

  // Faber polynomials kept in ascending degree while building.
  std::vector<std::vector<Rational>> polys{{1}};
  for (int m = -ell + 1; m <= m_max; ++m) {
    QSeries g = mul(h.series, out.back().series);
    std::vector<Rational> f(polys.back().size() + 1, 0);
    for (std::size_t i = 0; i < polys.back().size(); ++i) f[i + 1] = polys.back()[i];
    for (int mp = m - 1; mp >= -ell; --mp) {
      const Rational c = g.coeff(-mp);
      if (c == 0) continue;
      const std::size_t idx = mp + ell;
      g -= out[idx].series * c;
      for (std::size_t i = 0; i < polys[idx].size(); ++i) f[i] -= c * polys[idx][i];
    }
    BasisElement e = first;
    e.m = m;
    e.degree = ell + m;
    e.series = g;
    polys.push_back(f);
    out.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].series.precision() < precision) {
      throw MathError(ErrorKind::PrecisionExceeded, where(level, chi, k) + ": lost precision in the Faber recursion");
    }
    out[i].series = out[i].series.truncate(precision);
    out[i].faber.assign(polys[i].rbegin(), polys[i].rend());
  }
  return out;
}

}  // namespace

bool BasisElement::is_integral() const {
  for (const Rational& c : faber) {
    if (c.get_den() != 1) return false;
  }
  return series.is_integral();
}

int k_min(const LevelData& level, const CharacterPlus& chi, int k) {
  if (chi.parity() != (k % 2 == 0 ? 1 : -1)) throw MathError(ErrorKind::ParityMismatch, where(level, chi, k));
  if (!chi.is_consistent()) {
    throw MathError(ErrorKind::HypothesisViolated, where(level, chi, k) + ": no weight carries forms for this character");
  }
  const int k1 = level.k1();
  const CharacterPlus psi = CharacterPlus::psi(level);
  for (int kp = floor_mod(k, k1); kp < 3 * k1 + 3; kp += k1) {
    if (!plus_space_expected_empty(level, kp, chi * psi.pow(kp - k))) return kp;
  }
  throw MathError(ErrorKind::HypothesisViolated, where(level, chi, k) + ": minimal weight search did not terminate");
}

std::optional<int> k_min_closed_form(const LevelData& level, const CharacterPlus& chi, int k) {
  const int k1 = level.k1();
  if (k1 <= 2) return std::nullopt;
  const CharacterPlus psi = CharacterPlus::psi(level);
  const int r = floor_mod(k, k1);
  if (r == 0) return (chi == psi.pow(k)) ? 0 : k1;
  if (r == 1) return (chi * psi.pow(-k)).is_trivial() ? 1 : 1 + k1;
  if (r == 2) return (chi * psi.pow(2 - k)).is_trivial() ? 2 + k1 : 2;
  return r;
}

std::vector<QSeries> holomorphic_basis(const LevelData& level, const CharacterPlus& chi, int k, int precision,
                                       const ProjectionConfig& config) {
  const int k1 = level.k1();
  const int kp = k_min(level, chi, k);
  if (k < kp) {
    throw MathError(ErrorKind::EmptyBelowMinimalWeight,
                    where(level, chi, k) + " lies below the minimal weight " + std::to_string(kp));
  }
  const int n = (k - kp) / k1;
  const CharacterPlus psi = CharacterPlus::psi(level);
  const QSeries e = eisenstein_or_one(level, kp, chi * psi.pow(kp - k), precision, config);
  const QSeries ek1 = plus_series(level, k1, psi.pow(k1), precision, config);
  const QSeries d = delta_N(level, precision);
  std::vector<QSeries> out;
  for (int s = 0; s <= n; ++s) {
    QSeries f = mul(mul(e, pow(ek1, n - s)), pow(d, s)).truncate(precision);
    if (f.valuation() != s) throw MathError(ErrorKind::IdentityFailure, where(level, chi, k) + ": leading exponents collide");
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<BasisElement> f_family(const LevelData& level, const CharacterPlus& chi, int k, int m_max, int precision,
                                   const ProjectionConfig& config) {
  const int kp = k_min(level, chi, k);
  const int ell = (k - kp) / level.k1();
  if (m_max < -ell) {
    throw MathError(ErrorKind::IndexBelowRange,
                    where(level, chi, k) + ": m=" + std::to_string(m_max) + " < -ell=" + std::to_string(-ell));
  }
  const FamilyKey key{level.n(), chi.describe(), k};
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo().find(key);
    if (it != memo().end() && it->second.back().m >= m_max && it->second.front().series.precision() >= precision) {
      std::vector<BasisElement> out(it->second.begin(), it->second.begin() + (m_max + ell + 1));
      for (auto& e : out) e.series = e.series.truncate(precision);
      return out;
    }
  }
  auto out = build_family(level, chi, k, m_max, precision, config);
  std::lock_guard<std::mutex> lock(memo_mutex);
  auto& slot = memo()[key];
  if (slot.empty() || (slot.back().m <= m_max && slot.front().series.precision() <= precision)) slot = out;
  return out;
}

BasisElement f_basis(const LevelData& level, const CharacterPlus& chi, int k, int m, int precision,
                     const ProjectionConfig& config) {
  return f_family(level, chi, k, m, precision, config).back();
}

QSeries factorized_form(const BasisElement& f, int precision, const ProjectionConfig& config) {
  const LevelData& level = f.level;
  const int w = precision + f.degree + 3 * std::abs(f.ell) + 2;
  const Hauptmodul h = hauptmodul(level, w + f.degree + 2, config);
  // Horner in j_N.
  QSeries poly = QSeries::constant(f.faber.front(), w + f.degree + 2);
  for (std::size_t i = 1; i < f.faber.size(); ++i) {
    poly = mul(poly, h.series) + QSeries::constant(f.faber[i], w + f.degree + 2);
  }
  const CharacterPlus tw = f.chi * CharacterPlus::psi(level).pow(f.k_prime - f.weight);
  QSeries base = eisenstein_or_one(level, f.k_prime, tw, w, config);
  if (f.ell != 0) base = mul(base, pow(delta_N(level, w), f.ell));
  QSeries out = mul(base, poly);
  if (out.precision() < precision) throw MathError(ErrorKind::PrecisionExceeded, "factorized form");
  return out.truncate(precision);
}

Integer coefficient_a(const LevelData& level, const CharacterPlus& chi, int k, int m, int n,
                      const ProjectionConfig& config) {
  const BasisElement f = f_basis(level, chi, k, m, std::max(n + 1, 1), config);
  const Rational& c = f.series.coeff(n);
  if (c.get_den() != 1) {
    throw MathError(ErrorKind::NonIntegralCoefficient,
                    where(level, chi, k) + ": a(" + std::to_string(m) + "," + std::to_string(n) + ") = " + c.get_str());
  }
  return c.get_num();
}

}  // namespace whmf
