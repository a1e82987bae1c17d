#include "whmf/theorems.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <cstdlib>
#include <numeric>

#include "whmf/errors.hpp"

namespace whmf {

using nlohmann::json;

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

VerificationReport start(const std::string& suite, const LevelData& level, const CharacterPlus* chi, const int* k) {
  VerificationReport r;
  r.suite = suite;
  r.parameters["level"] = level.n();
  if (chi) r.parameters["chi"] = chi->name();
  if (k) r.parameters["k"] = *k;
  return r;
}

json error_witness(const std::exception& e) { return json{{"error", e.what()}}; }

// The first exponent where two series differ below min precision.
std::optional<int> first_difference(const QSeries& a, const QSeries& b) {
  const int p = std::min(a.precision(), b.precision());
  for (int n = std::min(a.valuation(), b.valuation()); n < p; ++n) {
    if (a.coeff(n) != b.coeff(n)) return n;
  }
  return std::nullopt;
}

bool coprime(long a, long b) { return std::gcd(a, b) == 1; }

int smallest_weight(const CharacterPlus& chi) { return chi.parity() == 1 ? 0 : 1; }

}  // namespace

json VerificationReport::to_json(bool with_timing) const {
  json j;
  j["suite"] = suite;
  j["parameters"] = parameters;
  j["passed"] = passed;
  j["checks"] = checks;
  j["witness"] = witness;
  j["precision"] = precision;
  j["notes"] = notes;
  if (with_timing) j["wall_seconds"] = wall_seconds;
  return j;
}

void VerificationReport::fail(json w) {
  if (passed) witness = std::move(w);
  passed = false;
}

std::vector<CharacterPlus> psi_family(const LevelData& level) {
  std::vector<CharacterPlus> out;
  const CharacterPlus psi = CharacterPlus::psi(level);
  for (int r = 0; r < 4; ++r) {
    CharacterPlus c = psi.pow(r);
    if (!c.is_consistent()) continue;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

VerificationReport check_genfun(const LevelData& level, const CharacterPlus& chi, int k, int M, int P,
                                const std::function<void(QSeries&)>& mutate_dual, const ProjectionConfig& config) {
  Stopwatch sw;
  VerificationReport r = start("genfun", level, &chi, &k);
  r.parameters["M"] = M;
  r.precision = P;
  try {
    const int kp = k_min(level, chi, k);
    const int ell = (k - kp) / level.k1();
    if (M < -ell) throw MathError(ErrorKind::IndexBelowRange, "M below -ell");
    const CharacterPlus dual_chi = chi * CharacterPlus::psi(level).pow(-2 * k);
    const int dual_kp = k_min(level, dual_chi, 2 - k);
    const int dual_ell = (2 - k - dual_kp) / level.k1();
    if (dual_ell != -1 - ell) {
      r.fail({{"dual_ell", dual_ell}, {"expected", -1 - ell}});
      r.wall_seconds = sw.seconds();
      return r;
    }
    const int outer = M + std::abs(ell) + 6;
    const int inner = P + 2 * (M + std::abs(ell)) + 6;
    const auto family = f_family(level, chi, k, M, P, config);
    QSeries fk = f_family(level, chi, k, -ell, inner, config).front().series;
    QSeries dual = f_family(level, dual_chi, 2 - k, -dual_ell, outer, config).front().series;
    if (mutate_dual) mutate_dual(dual);
    const QSeries j_outer = hauptmodul(level, outer + 2, config).series;
    const QSeries j_inner = hauptmodul(level, inner, config).series;

    const BiSeries num = mul(BiSeries::from_inner(fk, outer), BiSeries::from_outer(dual, inner));
    const BiSeries den = BiSeries::from_outer(j_outer, inner) - BiSeries::from_inner(j_inner, outer + 2);
    const BiSeries quot = bi_divide(num, den);
    if (quot.outer_precision() <= M) {
      throw MathError(ErrorKind::PrecisionExceeded, "bivariate quotient known only below q^" +
                                                        std::to_string(quot.outer_precision()));
    }
    for (int m = -ell; m <= M; ++m) {
      const QSeries lhs = quot.coeff(m);
      if (lhs.precision() < P) throw MathError(ErrorKind::PrecisionExceeded, "inner precision at q^" + std::to_string(m));
      const QSeries& rhs = family[m + ell].series;
      ++r.checks;
      if (auto n = first_difference(lhs.truncate(P), rhs)) {
        r.fail({{"m", m}, {"n", *n}, {"bivariate", lhs.coeff(*n).get_str()}, {"f_basis", rhs.coeff(*n).get_str()}});
        break;
      }
    }
  } catch (const MathError& e) {
    r.fail(error_witness(e));
  }
  r.wall_seconds = sw.seconds();
  return r;
}

VerificationReport check_genfun(const LevelData& level, const CharacterPlus& chi, int k, int M, int P,
                                const ProjectionConfig& config) {
  return check_genfun(level, chi, k, M, P, nullptr, config);
}

VerificationReport check_duality(const LevelData& level, const CharacterPlus& chi, int k, int m_max, int n_max,
                                 const ProjectionConfig& config) {
  Stopwatch sw;
  VerificationReport r = start("duality", level, &chi, &k);
  r.parameters["m_max"] = m_max;
  r.parameters["n_max"] = n_max;
  r.precision = std::max(m_max, n_max) + 1;
  try {
    const CharacterPlus dual_chi = chi * CharacterPlus::psi(level).pow(-2 * k);
    r.parameters["dual_chi"] = dual_chi.name();
    const int ell = (k - k_min(level, chi, k)) / level.k1();
    const int dual_ell = (2 - k - k_min(level, dual_chi, 2 - k)) / level.k1();
    if (dual_ell != -1 - ell) {
      r.fail({{"dual_ell", dual_ell}, {"expected", -1 - ell}});
    } else if (m_max >= -ell && n_max >= 1 + ell) {
      const auto fk = f_family(level, chi, k, m_max, n_max + 1, config);
      const auto gk = f_family(level, dual_chi, 2 - k, n_max, m_max + 1, config);
      for (int m = -ell; m <= m_max && r.passed; ++m) {
        for (int n = 1 + ell; n <= n_max; ++n) {
          const Rational& a = fk[m + ell].series.coeff(n);
          const Rational& b = gk[n + dual_ell].series.coeff(m);
          ++r.checks;
          if (a != -b) {
            r.fail({{"m", m}, {"n", n}, {"a_k(m,n)", a.get_str()}, {"a_2-k(n,m)", b.get_str()}});
            break;
          }
        }
      }
    }
  } catch (const MathError& e) {
    r.fail(error_witness(e));
  }
  r.wall_seconds = sw.seconds();
  return r;
}

VerificationReport check_divisibility(const LevelData& level, const CharacterPlus& chi, int k, int m_max, int n_max,
                                      const ProjectionConfig& config) {
  const int kp = k_min(level, chi, k);
  if (kp != k) {
    throw MathError(ErrorKind::HypothesisViolated, "k=" + std::to_string(k) + " but k'=" + std::to_string(kp) +
                                                       " for " + chi.name() + " at N=" + std::to_string(level.n()));
  }
  Stopwatch sw;
  VerificationReport r = start("divisibility", level, &chi, &k);
  r.parameters["m_max"] = m_max;
  r.parameters["n_max"] = n_max;
  r.precision = n_max + 1;
  if (k < 1) {
    r.notes.push_back("k - 1 < 0: nothing to divide");
    r.wall_seconds = sw.seconds();
    return r;
  }
  try {
    const int ell = (k - kp) / level.k1();
    const auto fam = f_family(level, chi, k, m_max, n_max + 1, config);
    // Failures counted by the value of the restriction of chi at n.
    std::map<int, long long> failures{{1, 0}, {-1, 0}, {0, 0}};
    for (int m = std::max(1, -ell); m <= m_max; ++m) {
      if (!coprime(m, level.n())) continue;
      for (int n = 1; n <= n_max; ++n) {
        if (!coprime(m, n)) continue;
        const Rational& a = fam[m + ell].series.coeff(n);
        Integer d;
        mpz_ui_pow_ui(d.get_mpz_t(), n, k - 1);
        ++r.checks;
        if (a.get_den() != 1 || !mpz_divisible_p(a.get_num_mpz_t(), d.get_mpz_t())) {
          ++failures[chi.restriction()(n)];
          r.fail({{"m", m}, {"n", n}, {"a_k(m,n)", a.get_str()}, {"divisor", d.get_str()}});
        }
      }
    }
    if (!r.passed) {
      r.notes.push_back("failing pairs with chi(n) = 1: " + std::to_string(failures[1]) +
                        ", chi(n) = -1: " + std::to_string(failures[-1]) + ", N | n: " + std::to_string(failures[0]));
    }
  } catch (const MathError& e) {
    r.fail(error_witness(e));
  }
  r.wall_seconds = sw.seconds();
  return r;
}

VerificationReport check_integrality(const LevelData& level, const CharacterPlus& chi, int k, int m_max, int P,
                                     const ProjectionConfig& config) {
  constexpr int kFactorizedUpTo = 10;
  Stopwatch sw;
  VerificationReport r = start("integrality", level, &chi, &k);
  r.parameters["m_max"] = m_max;
  r.precision = P;
  try {
    const auto fam = f_family(level, chi, k, m_max, P, config);
    for (const BasisElement& e : fam) {
      const json at{{"m", e.m}};
      auto fail = [&](const std::string& what, json detail) {
        json w = at;
        w["failure"] = what;
        w["detail"] = std::move(detail);
        r.fail(std::move(w));
      };
      ++r.checks;
      if (e.series.valuation() != -e.m || e.series.coeff(-e.m) != 1) {
        fail("leading term", e.series.to_string(3));
        break;
      }
      bool gap_ok = true;
      for (int n = -e.m + 1; n <= e.ell && n < P; ++n) {
        if (e.series.coeff(n) != 0) {
          fail("gap", json{{"n", n}, {"coefficient", e.series.coeff(n).get_str()}});
          gap_ok = false;
          break;
        }
      }
      if (!gap_ok) break;
      if (static_cast<int>(e.faber.size()) != e.degree + 1 || e.degree != e.ell + e.m || e.faber.front() != 1) {
        fail("faber shape", json{{"degree", e.degree}, {"size", e.faber.size()}});
        break;
      }
      bool ok = true;
      for (std::size_t i = 0; i < e.faber.size(); ++i) {
        if (e.faber[i].get_den() != 1) {
          fail("faber coefficient", json{{"index", i}, {"value", e.faber[i].get_str()}});
          ok = false;
          break;
        }
      }
      if (!ok) break;
      for (int n = e.series.valuation(); n < P; ++n) {
        if (e.series.coeff(n).get_den() != 1) {
          fail("coefficient", json{{"n", n}, {"value", e.series.coeff(n).get_str()}});
          ok = false;
          break;
        }
      }
      if (!ok) break;
      if (e.m <= kFactorizedUpTo) {
        const QSeries f = factorized_form(e, P, config);
        if (auto n = first_difference(f, e.series)) {
          fail("factorized form", json{{"n", *n}, {"factorized", f.coeff(*n).get_str()},
                                       {"recursion", e.series.coeff(*n).get_str()}});
          break;
        }
      }
    }
    r.notes.push_back("factorized form compared for m <= " + std::to_string(kFactorizedUpTo));
  } catch (const MathError& e) {
    r.fail(error_witness(e));
  }
  r.wall_seconds = sw.seconds();
  return r;
}

VerificationReport check_dimensions(const LevelData& level) {
  Stopwatch sw;
  VerificationReport r = start("dimensions", level, nullptr, nullptr);
  for (const RealCharacter& chi : real_characters(level.n())) {
    for (int k = 0; k <= 5; ++k) {
      int d = 0;
      try {
        d = dimension_d(level, k, chi);
      } catch (const MathError& e) {
        if (e.kind() == ErrorKind::ParityMismatch) continue;
        throw;
      }
      const int p = rank_precision_bound(level, k);
      r.precision = std::max(r.precision, p);
      int rank = 0;
      try {
        rank = rank_check(level, eisenstein_basis(level, k, chi, p), p);
      } catch (const MathError& e) {
        if (e.kind() != ErrorKind::EmptyFamily && e.kind() != ErrorKind::ParityMismatch) throw;
      }
      ++r.checks;
      if (rank != d) {
        r.fail({{"k", k}, {"chi", chi.to_string()}, {"rank", rank}, {"table", d}});
        break;
      }
    }
  }
  r.wall_seconds = sw.seconds();
  return r;
}

VerificationReport check_products(const LevelData& level, int P, const ProjectionConfig& config) {
  struct Factor {
    int k;
    CharacterPlus chi;
    int power = 1;
  };
  struct Identity {
    std::string name;
    std::vector<Factor> lhs;
    Factor rhs;
  };
  Stopwatch sw;
  VerificationReport r = start("products", level, nullptr, nullptr);
  r.precision = P;
  const CharacterPlus one = CharacterPlus::trivial(level);
  const CharacterPlus psi = CharacterPlus::psi(level);
  std::vector<Identity> ids;
  switch (level.n()) {
    case 2:
      ids.push_back({"E2(psi^2) E4(psi^2) = E6(1)", {{2, psi.pow(2)}, {4, psi.pow(2)}}, {6, one}});
      break;
    case 3:
      ids.push_back({"E1(psi)^4 = E4(1)", {{1, psi, 4}}, {4, one}});
      ids.push_back({"E2(psi^2)^2 = E4(1)", {{2, psi.pow(2), 2}}, {4, one}});
      ids.push_back({"E3(psi) E3(psi^3) = E6(1)", {{3, psi}, {3, psi.pow(3)}}, {6, one}});
      ids.push_back({"E2(psi^2) E4(psi^2) = E6(1)", {{2, psi.pow(2)}, {4, psi.pow(2)}}, {6, one}});
      break;
    case 5:
      // Every weight-2 plus space paired with the weight-4 space of the
      // inverse character.
      for (int f : {1, 5}) {
        for (int e : {0, 2}) {
          const CharacterPlus c(level, RealCharacter(5, f), {{5, Root4(e)}});
          if (plus_space_expected_empty(level, 2, c)) continue;
          ids.push_back({"E2(" + c.name() + ") E4(" + c.inverse().name() + ") = E6(1)", {{2, c}, {4, c.inverse()}},
                         {6, one}});
        }
      }
      break;
    default:
      r.notes.push_back("no product identities at this level");
  }
  for (const Identity& id : ids) {
    ++r.checks;
    try {
      QuadraticSeries lhs{1, QSeries::one(P), QSeries::zero(P)};
      for (const Factor& f : id.lhs) {
        const QuadraticSeries x = plus_series_quadratic(level, f.k, f.chi, P, config);
        for (int i = 0; i < f.power; ++i) lhs = mul(lhs, x);
      }
      const QSeries rhs = plus_series(level, id.rhs.k, id.rhs.chi, P, config);
      if (auto n = first_difference(lhs.a.truncate(P), rhs)) {
        r.fail({{"identity", id.name}, {"n", *n}, {"lhs", lhs.a.coeff(*n).get_str()}, {"rhs", rhs.coeff(*n).get_str()}});
      } else if (!lhs.b.truncate(P).is_zero()) {
        r.fail({{"identity", id.name}, {"irrational_part_valuation", lhs.b.truncate(P).valuation()}});
      } else {
        r.notes.push_back(id.name);
      }
    } catch (const MathError& e) {
      r.fail({{"identity", id.name}, {"error", e.what()}});
    }
  }
  r.wall_seconds = sw.seconds();
  return r;
}

VerificationReport check_hauptmodul(const LevelData& level, int P, const ProjectionConfig& config) {
  Stopwatch sw;
  VerificationReport r = start("hauptmodul", level, nullptr, nullptr);
  r.precision = P;
  try {
    const Hauptmodul h = hauptmodul(level, P + 1, config);
    r.checks += P;
    json c = json::array();
    for (int n = 1; n <= 5 && n < P; ++n) c.push_back(h.c[n].get_str());
    r.parameters["c_1..c_5"] = c;
    const QSeries e = plus_series(level, 2 + level.k1(), CharacterPlus::delta_character(level), P, config);
    const QSeries back = (-(theta(h.series) * delta_N(level, P + 1))).truncate(P);
    ++r.checks;
    if (auto n = first_difference(back, e)) {
      r.fail({{"round_trip_n", *n}, {"theta_j_delta", back.coeff(*n).get_str()}, {"E", e.coeff(*n).get_str()}});
    }
    const Hauptmodul hn = hauptmodul(level, std::max(P, terms_for_invariance(level)), config);
    const InvarianceReport inv = verify_numeric_invariance(hn);
    r.checks += inv.points;
    r.parameters["invariance_points"] = inv.points;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1e", inv.max_residual);
    r.notes.push_back(std::string("max invariance residual ") + buf);
  } catch (const MathError& e) {
    r.fail(error_witness(e));
  }
  r.wall_seconds = sw.seconds();
  return r;
}

VerificationReport check_factorization(const LevelData& level, int P, const ProjectionConfig& config) {
  Stopwatch sw;
  VerificationReport r = start("factorization", level, nullptr, nullptr);
  r.precision = P;
  const int top = 2 + level.k1();
  for (const CharacterPlus& chi : psi_family(level)) {
    for (int k = smallest_weight(chi); k <= top; k += 2) {
      if (k_min(level, chi, k) != k) continue;
      try {
        const FactorizationReport f = verify_factorization(level, chi, k, P, config);
        if (f.skipped) continue;
        ++r.checks;
        r.notes.push_back("k=" + std::to_string(k) + " chi=" + f.chi + " times k=" + std::to_string(f.complement_weight) +
                          " chi=" + f.chi_tilde);
      } catch (const MathError& e) {
        r.fail({{"k", k}, {"chi", chi.name()}, {"error", e.what()}});
      }
    }
  }
  r.wall_seconds = sw.seconds();
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"genfun",     "duality",  "divisibility", "integrality",
                                              "dimensions", "products", "hauptmodul",   "factorization"};
  return names;
}

std::vector<VerificationReport> run_suite(const std::string& name, const LevelData& level, const std::string& chi,
                                          std::optional<int> k, int precision) {
  std::vector<CharacterPlus> chars;
  if (chi.empty()) {
    chars = psi_family(level);
  } else {
    chars.push_back(parse_character(level, chi));
  }
  const int k1 = level.k1();
  // Weights for the per-character suites: the given one, or a sweep.
  auto weights = [&](const CharacterPlus& c, int lo, int hi) {
    std::vector<int> ks;
    if (k) {
      ks.push_back(*k);
      return ks;
    }
    for (int w = lo; w <= hi; ++w) {
      if (c.parity() == (w % 2 == 0 ? 1 : -1)) ks.push_back(w);
    }
    return ks;
  };
  std::vector<VerificationReport> out;
  if (name == "dimensions") {
    out.push_back(check_dimensions(level));
  } else if (name == "products") {
    out.push_back(check_products(level, precision));
  } else if (name == "hauptmodul") {
    out.push_back(check_hauptmodul(level, precision));
  } else if (name == "factorization") {
    out.push_back(check_factorization(level, precision));
  } else if (name == "genfun") {
    for (const auto& c : chars) {
      for (int w : weights(c, -k1, 2 + k1)) out.push_back(check_genfun(level, c, w, 20, 20));
    }
  } else if (name == "duality") {
    for (const auto& c : chars) {
      for (int w : weights(c, -k1, 2 + k1)) out.push_back(check_duality(level, c, w, 30, 30));
    }
  } else if (name == "divisibility") {
    for (const auto& c : chars) {
      for (int w : weights(c, 1, 3 * k1 + 3)) {
        if (!k && k_min(level, c, w) != w) continue;
        out.push_back(check_divisibility(level, c, w, 30, 50));
      }
    }
  } else if (name == "integrality") {
    for (const auto& c : chars) {
      for (int w : weights(c, -k1 - 2, 2 + 2 * k1)) out.push_back(check_integrality(level, c, w, 30, precision));
    }
  } else {
    throw MathError(ErrorKind::Usage, "unknown suite " + name);
  }
  return out;
}

}  // namespace whmf
