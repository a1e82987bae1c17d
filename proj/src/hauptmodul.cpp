#include "whmf/hauptmodul.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "whmf/basis.hpp"
#include "whmf/errors.hpp"

namespace whmf {

namespace {

std::mutex memo_mutex;
std::map<int, Hauptmodul>& memo() {
  static std::map<int, Hauptmodul> m;
  return m;
}

Hauptmodul truncated(const Hauptmodul& h, int precision) {
  Hauptmodul out = h;
  out.series = h.series.truncate(precision);
  out.c.resize(precision);
  return out;
}

Hauptmodul compute(const LevelData& level, int precision, const ProjectionConfig& config) {
  const int n = level.n();
  const QSeries e = plus_series(level, 2 + level.k1(), CharacterPlus::delta_character(level), precision + 2, config);
  const QSeries d = delta_N(level, precision + 2);
  const QSeries g = -divide(e, d);
  if (g.valuation() != -1 || g.coeff(-1) != -1) {
    throw MathError(ErrorKind::IdentityFailure, "-E/Delta does not start with -q^-1 at N=" + std::to_string(n));
  }
  if (g.coeff(0) != 0) {
    throw MathError(ErrorKind::ConstantTermObstruction,
                    "constant term " + g.coeff(0).get_str() + " at N=" + std::to_string(n));
  }
  Hauptmodul h;
  h.level = level;
  h.series = integrate_theta(g).truncate(precision);
  h.c.assign(precision, 0);
  for (int m = 1; m < precision; ++m) {
    const Rational& c = h.series.coeff(m);
    if (c.get_den() != 1) {
      throw MathError(ErrorKind::NonIntegralCoefficient,
                      "c_" + std::to_string(m) + " = " + c.get_str() + " at N=" + std::to_string(n));
    }
    h.c[m] = c.get_num();
  }
  return h;
}

struct InvariancePoint {
  IntMatrix g;
  Complex z;
};

// T at points of height about 1/sqrt N, gamma = (1,0;N,1) around its cusp
// -1/N, W_N around its fixed point i/sqrt N.
std::vector<InvariancePoint> invariance_points(const LevelData& level, int points) {
  const int n = level.n();
  const Real rn = boost::multiprecision::sqrt(Real(n));
  std::vector<InvariancePoint> out;
  for (int i = 0; i < points; ++i) {
    const double t = points > 1 ? static_cast<double>(i) / (points - 1) : 0.5;
    const Real u(-0.2 + 0.4 * t);
    const Real s(0.9 + 0.2 * std::fmod(0.618 * (i + 1), 1.0));
    out.push_back({{1, 1, 0, 1}, Complex(u, s / rn)});
    out.push_back({{1, 0, n, 1}, Complex((u - 1) / Real(n), s / Real(n))});
    out.push_back({al_matrix(level, n).matrix, Complex(u / rn, s / rn)});
  }
  return out;
}

GrowthModel hauptmodul_growth(const LevelData& level) {
  return GrowthModel::subexponential(4 * M_PI / std::sqrt(static_cast<double>(level.n())));
}

}  // namespace

Hauptmodul hauptmodul(const LevelData& level, int precision, const ProjectionConfig& config) {
  if (precision < 1) throw MathError(ErrorKind::PrecisionExceeded, "precision must be positive");
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo().find(level.n());
    if (it != memo().end() && it->second.series.precision() >= precision) return truncated(it->second, precision);
  }
  Hauptmodul h = compute(level, precision, config);
  std::lock_guard<std::mutex> lock(memo_mutex);
  auto& slot = memo()[level.n()];
  if (slot.series.precision() < precision) slot = h;
  return h;
}

int terms_for_invariance(const LevelData& level, int bits) {
  PrecisionScope scope(bits);
  double min_im = 1e9;
  for (const auto& p : invariance_points(level, 10)) {
    min_im = std::min({min_im, p.z.im.convert_to<double>(), mobius(p.g, p.z).im.convert_to<double>()});
  }
  return terms_needed(std::exp(-2 * M_PI * min_im), hauptmodul_growth(level), 1.0, 30);
}

InvarianceReport verify_numeric_invariance(const Hauptmodul& h, int points, double tolerance, int bits) {
  PrecisionScope scope(bits);
  const GrowthModel growth = hauptmodul_growth(h.level);
  const Real max_tail(tolerance / 100);
  InvarianceReport rep;
  rep.checks = {"T", "gamma=(1,0;N,1)", "W_N"};
  for (const auto& p : invariance_points(h.level, points)) {
    const Complex fz = evaluate(h.series, EvalPoint{p.z, bits}, growth, max_tail).value;
    const Complex fg = evaluate(h.series, EvalPoint{mobius(p.g, p.z), bits}, growth, max_tail).value;
    const Real scale = std::max(Real(1), abs(fz));
    const double r = (abs(fg - fz) / scale).convert_to<double>();
    rep.max_residual = std::max(rep.max_residual, r);
    ++rep.points;
    if (!(r < tolerance)) {
      throw MathError(ErrorKind::InvarianceFailure, "j_" + std::to_string(h.level.n()) + " under " + p.g.to_string() +
                                                        " at z = " + p.z.to_string(12) + ": residual " +
                                                        std::to_string(r));
    }
  }
  return rep;
}

FactorizationReport verify_factorization(const LevelData& level, const CharacterPlus& chi, int k, int precision,
                                         const ProjectionConfig& config) {
  const int top = 2 + level.k1();
  const CharacterPlus chi_n = CharacterPlus::delta_character(level);
  FactorizationReport rep;
  rep.weight = k;
  rep.complement_weight = top - k;
  rep.chi = chi.name();
  const CharacterPlus tilde = chi_n * chi.inverse();
  rep.chi_tilde = tilde.name();
  if (k_min(level, chi, k) != k) {
    throw MathError(ErrorKind::HypothesisViolated,
                    "k=" + std::to_string(k) + " is not minimal for " + chi.name() + " at N=" + std::to_string(level.n()));
  }
  if (k == top) {
    rep.skipped = true;
    return rep;
  }
  const QSeries a = k == 0 ? QSeries::one(precision) : plus_series(level, k, chi, precision, config);
  const QSeries b = plus_series(level, top - k, tilde, precision, config);
  const QSeries e = plus_series(level, top, chi_n, precision, config);
  rep.holds = (a * b).truncate(precision) == e;
  const Hauptmodul h = hauptmodul(level, precision + 1, config);
  rep.matches_hauptmodul = (-(theta(h.series) * delta_N(level, precision + 1))).truncate(precision) == e;
  const std::string what = "k=" + std::to_string(k) + " chi=" + rep.chi + " N=" + std::to_string(level.n());
  if (!rep.holds) throw MathError(ErrorKind::IdentityFailure, what + ": E_k E_{2+k1-k} != E_{2+k1}");
  if (!rep.matches_hauptmodul) throw MathError(ErrorKind::IdentityFailure, what + ": E_{2+k1} != -theta(j) Delta");
  return rep;
}

}  // namespace whmf
