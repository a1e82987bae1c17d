#include <CLI11.hpp>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "whmf/errors.hpp"
#include "whmf/theorems.hpp"
#include "whmf/zeros.hpp"

using namespace whmf;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string str(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

// Consistent characters with the given restriction conductors, every W-value.
std::vector<CharacterPlus> all_characters(const LevelData& level, const std::vector<int>& conductors) {
  std::vector<CharacterPlus> out;
  const auto& primes = level.primes();
  int combos = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) combos *= 4;
  for (int f : conductors) {
    for (int c = 0; c < combos; ++c) {
      std::map<int, Root4> w;
      int rest = c;
      for (int p : primes) {
        w[p] = Root4(rest % 4);
        rest /= 4;
      }
      CharacterPlus chi(level, RealCharacter(level.n(), f), w);
      if (chi.is_consistent()) out.push_back(chi);
    }
  }
  return out;
}

Outcome eta_consistency() {
  Outcome o;
  double s = 0;
  const int P = 500;
  for (int n : admitted_levels()) {
    const LevelData level(n);
    std::map<int, int> e;
    for (int m : level.divisors()) e[m] = 24 / level.sigma1();
    const oracle::Poly naive = oracle::eta_product(e, P);
    const auto t0 = Clock::now();
    const QSeries d = delta_N(level, P + 1);
    s += since(t0);
    if (d.valuation() != 1 || d.coeff(1) != 1 || !d.is_integral()) o.fail("normalization at N=" + std::to_string(n));
    for (int i = 0; i < P; ++i) {
      if (d.coeff(i + 1) != naive[i]) {
        o.fail("N=" + std::to_string(n) + " n=" + std::to_string(i + 1));
        break;
      }
    }
  }
  if (s >= 10) o.fail("runtime " + str(s) + " s");
  if (o.passed) o.detail = "9 levels to O(q^501), " + str(s) + " s for the expansions";
  return o;
}

int table_d(const LevelData& level, int k, const RealCharacter& chi) {
  const bool prime = level.is_prime();
  if (k == 0) return 1;
  if (k == 1) return prime ? 1 : 2;
  if (k == 2) return prime ? (chi.is_trivial() ? 1 : 2) : (chi.is_trivial() ? 3 : 4);
  return prime ? 2 : 4;
}

Outcome dimension_table() {
  Outcome o;
  const auto t0 = Clock::now();
  int cases = 0;
  for (int n : admitted_levels()) {
    const LevelData level(n);
    std::vector<RealCharacter> chars{RealCharacter::trivial(n)};
    if (level.is_prime()) {
      chars = real_characters(n);
    } else if (aux_modulus(level)) {
      chars.emplace_back(n, aux_modulus(level));
    }
    for (const RealCharacter& chi : chars) {
      for (int k = 0; k <= 5; ++k) {
        if (chi.parity() != (k % 2 ? -1 : 1) || (k == 0 && !chi.is_trivial()) || (k == 1 && chi.is_trivial())) continue;
        const int P = 12 + k * level.sigma1();
        const int rank = rank_check(level, eisenstein_basis(level, k, chi, P), P);
        ++cases;
        if (rank != table_d(level, k, chi)) {
          o.fail("N=" + std::to_string(n) + " k=" + std::to_string(k) + " chi=" + chi.to_string() + " rank " +
                 std::to_string(rank));
        }
      }
    }
  }
  const double s = since(t0);
  if (s >= 60) o.fail("runtime " + str(s) + " s");
  if (o.passed) o.detail = std::to_string(cases) + " cases, " + str(s) + " s";
  return o;
}

Outcome plus_existence() {
  Outcome o;
  int produced = 0, empty = 0;
  double worst = 0;
  for (int n : admitted_levels()) {
    const LevelData level(n);
    const CharacterPlus psi = CharacterPlus::psi(level);
    std::vector<CharacterPlus> chars = psi_family(level);
    std::optional<CharacterPlus> aux;
    if (aux_modulus(level)) {
      aux = xi(level);
      chars.push_back(*aux);
      chars.push_back(*aux * psi.pow(2));
    }
    for (const CharacterPlus& chi : chars) {
      for (int k = 1; k <= 2 + 2 * level.k1(); ++k) {
        if (!chi.is_admissible(k)) continue;
        const bool expect_empty = (k == 1 && !(chi == psi) && !(aux && chi == *aux)) || (k == 2 && chi.is_trivial());
        const std::string where = "N=" + std::to_string(n) + " k=" + std::to_string(k) + " chi=" + chi.name();
        try {
          try {
            const PlusEisenstein e = project_plus(level, k, chi);
            worst = std::max(worst, e.record.max_heldout_residual);
            if (!e.record.span_membership || e.record.closed_form_match == false) o.fail(where + " battery");
            if (e.record.max_heldout_residual >= 1e-25) o.fail(where + " residual " + str(e.record.max_heldout_residual));
          } catch (const MathError& ex) {
            if (ex.kind() != ErrorKind::ReconstructionFailed) throw;
            plus_series_quadratic(level, k, chi, 200);
          }
          ++produced;
          if (expect_empty) o.fail(where + " produced a series");
        } catch (const MathError& ex) {
          if (ex.kind() == ErrorKind::EmptyPlusSpace) {
            ++empty;
            if (!expect_empty) o.fail(where + " empty");
          } else {
            o.fail(where + " " + ex.what());
          }
        }
      }
    }
  }
  if (o.passed) {
    o.detail = std::to_string(produced) + " generators, " + std::to_string(empty) + " empty spaces, max residual " +
               str(worst);
  }
  return o;
}

Outcome closed_form() {
  Outcome o;
  int cases = 0;
  for (int n : admitted_levels()) {
    const LevelData level(n);
    if (!level.is_prime()) continue;
    for (int k : {4, 6, 8}) {
      const QSeries e = plus_series(level, k, CharacterPlus::trivial(level), 200);
      const oracle::Poly ref = oracle::symmetrization(n, k, 200);
      ++cases;
      for (int i = 0; i < 200; ++i) {
        if (e.coeff(i) != ref[i]) {
          o.fail("N=" + std::to_string(n) + " k=" + std::to_string(k) + " n=" + std::to_string(i));
          break;
        }
      }
    }
  }
  if (o.passed) o.detail = std::to_string(cases) + " cases to P=200";
  return o;
}

Outcome hauptmodul_checks() {
  Outcome o;
  double worst = 0;
  for (int n : admitted_levels()) {
    const LevelData level(n);
    const std::string where = "N=" + std::to_string(n);
    try {
      const Hauptmodul h = hauptmodul(level, 201);
      if (!h.series.is_integral()) o.fail(where + " non-integral");
      const QSeries lhs = -mul(delta_N(level, 203), theta(h.series));
      const QSeries e = plus_series(level, 2 + level.k1(), CharacterPlus::delta_character(level), 201);
      if (!(lhs.truncate(201) == e.truncate(201))) o.fail(where + " round trip");
      if (n == 2 || n == 3 || n == 5 || n == 7) {
        const auto ref = oracle::hauptmodul_eta(n, 201);
        for (int i = -1; i < 201; ++i) {
          if (h.series.coeff(i) != ref[i + 1]) o.fail(where + " eta quotient form at n=" + std::to_string(i));
        }
      }
      const InvarianceReport r =
          verify_numeric_invariance(hauptmodul(level, terms_for_invariance(level)), 10, 1e-20);
      worst = std::max(worst, r.max_residual);
    } catch (const MathError& ex) {
      o.fail(where + " " + ex.what());
    }
  }
  if (o.passed) o.detail = "9 levels, max invariance residual " + str(worst);
  return o;
}

// Runs a suite over the given levels and collects the reports.
Outcome suites(const std::string& name, const std::vector<int>& levels, int precision,
               const std::function<void(int, const std::vector<VerificationReport>&, Outcome&)>& extra = nullptr) {
  Outcome o;
  long long checks = 0;
  int reports = 0;
  for (int n : levels) {
    std::vector<VerificationReport> rs;
    try {
      rs = run_suite(name, LevelData(n), "", std::nullopt, precision);
    } catch (const MathError& ex) {
      o.fail("N=" + std::to_string(n) + " " + ex.what());
      continue;
    }
    for (const auto& r : rs) {
      checks += r.checks;
      ++reports;
      if (!r.passed) o.fail("N=" + std::to_string(n) + " " + r.parameters.dump() + " " + r.witness.dump());
    }
    if (extra) extra(n, rs, o);
  }
  if (o.passed) o.detail = std::to_string(reports) + " instances, " + std::to_string(checks) + " checks";
  return o;
}

Outcome duality() {
  const auto t0 = Clock::now();
  Outcome o = suites("duality", admitted_levels(), 200, [](int n, const std::vector<VerificationReport>& rs, Outcome& o) {
    if (rs.size() < 3) o.fail("N=" + std::to_string(n) + " only " + std::to_string(rs.size()) + " triples");
  });
  const double s = since(t0);
  if (s >= 300) o.fail("runtime " + str(s) + " s");
  if (o.passed) o.detail += ", " + str(s) + " s";
  return o;
}

Outcome divisibility() {
  Outcome o;
  long long checks = 0;
  for (auto [n, k] : {std::pair{2, 8}, std::pair{3, 6}, std::pair{7, 3}}) {
    const LevelData level(n);
    int instances = 0;
    for (const CharacterPlus& chi : psi_family(level)) {
      if (!chi.is_admissible(k)) continue;
      try {
        if (k_min(level, chi, k) != k) continue;
      } catch (const MathError&) {
        continue;
      }
      ++instances;
      const VerificationReport r = check_divisibility(level, chi, k, 30, 50);
      checks += r.checks;
      if (!r.passed) o.fail("N=" + std::to_string(n) + " k=" + std::to_string(k) + " chi=" + chi.name() + " " + r.witness.dump());
    }
    if (instances == 0) o.fail("no instance with k'=" + std::to_string(k) + " at N=" + std::to_string(n));
  }
  if (o.passed) o.detail = std::to_string(checks) + " checks";
  return o;
}

Outcome zeros() {
  Outcome o;
  const auto t0 = Clock::now();
  int forms = 0;
  double worst = 0;
  std::map<std::pair<int, std::string>, int> changes;
  for (int n : {2, 3, 5}) {
    const LevelData level(n);
    const ArcSpec arc = arc_spec(n);
    const std::vector<int> conductors = n == 5 ? std::vector<int>{1, 5} : std::vector<int>{1, n == 3 ? 3 : 1};
    std::vector<CharacterPlus> chars = all_characters(level, n == 2 ? std::vector<int>{1} : conductors);
    for (int k = 1; k <= (n == 3 ? 6 : 4); ++k) {
      for (const CharacterPlus& chi : chars) {
        if (!chi.is_admissible(k) || plus_space_expected_empty(level, k, chi)) continue;
        const std::string where = "N=" + std::to_string(n) + " k=" + std::to_string(k) + " chi=" + chi.describe();
        try {
          const QuadraticSeries e = plus_series_quadratic(level, k, chi, 200);
          const RealityReport r = reality_on_arc(e, k, chi, arc, 200);
          worst = std::max(worst, r.max_imag);
          if (n == 3) changes[{k, chi.name()}] = count_sign_changes(r);
          if (k > 4) continue;
          ++forms;
          const WindingReport w = certify_no_offarc_zeros(e, n);
          if (!w.zero_cells.empty() || !w.tail_certified) o.fail(where + " winding");
        } catch (const MathError& ex) {
          o.fail(where + " " + ex.what());
        }
      }
    }
  }
  const LevelData three(3);
  const CharacterPlus psi = CharacterPlus::psi(three);
  auto sc = [&](int k, const CharacterPlus& c) {
    const auto it = changes.find({k, c.name()});
    return it == changes.end() ? -1 : it->second;
  };
  const CharacterPlus one = CharacterPlus::trivial(three);
  const bool additive = sc(4, one) == 4 * sc(1, psi) && sc(4, one) == 2 * sc(2, psi.pow(2)) &&
                        sc(6, one) == sc(3, psi) + sc(3, psi.pow(3)) && sc(6, one) == sc(2, psi.pow(2)) + sc(4, psi.pow(2));
  if (!additive) o.fail("N=3 sign changes are not additive over the product identities");
  try {
    const QSeries e8 = plus_series(three, 8, one, 200), e4 = plus_series(three, 4, one, 200);
    const int a = count_sign_changes(reality_on_arc(e8, 8, one, arc_spec(3), 200));
    const int b = count_sign_changes(reality_on_arc(e4, 4, one, arc_spec(3), 200));
    const int c = count_sign_changes(reality_on_arc(e8 * e4, 12, one, arc_spec(3), 200));
    if (c != a + b) o.fail("N=3 sign changes of E8 E4: " + std::to_string(c) + " vs " + std::to_string(a + b));
  } catch (const MathError& ex) {
    o.fail(std::string("N=3 product ") + ex.what());
  }
  const double s = since(t0);
  if (s >= 600) o.fail("runtime " + str(s) + " s");
  if (o.passed) o.detail = std::to_string(forms) + " series, max |Im h| " + str(worst) + ", " + str(s) + " s";
  return o;
}

Outcome products() {
  Outcome o;
  int identities = 0;
  for (int n : {2, 3, 5}) {
    const VerificationReport r = check_products(LevelData(n), 200);
    identities += static_cast<int>(r.checks);
    if (!r.passed) o.fail("N=" + std::to_string(n) + " " + r.witness.dump());
  }
  if (o.passed) o.detail = std::to_string(identities) + " identities at P=200";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> known;
  std::vector<int> only;
  app.add_option("--known-failures", known, "criteria expected to fail; still reported");
  app.add_option("--only", only, "run these criteria only");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"eta and Delta_N consistency", eta_consistency},
      {"dimension table", dimension_table},
      {"plus space existence and emptiness", plus_existence},
      {"closed form symmetrization", closed_form},
      {"hauptmodul", hauptmodul_checks},
      {"factorization identity",
       [] { return suites("factorization", admitted_levels(), 200); }},
      {"basis integrality and Faber polynomials", [] { return suites("integrality", admitted_levels(), 201); }},
      {"duality", duality},
      {"generating function", [] { return suites("genfun", {2, 3, 23}, 200); }},
      {"divisibility", divisibility},
      {"zeros on the arcs", zeros},
      {"product identities", products},
  };
  const std::set<int> expected(known.begin(), known.end());
  bool ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.fail(std::string("error: ") + e.what());
    }
    std::cout << "criterion " << id << ": " << (out.passed ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << out.detail << ")" << (!out.passed && expected.count(id) ? "  [known]" : "") << std::endl;
    if (!out.passed && !expected.count(id)) ok = false;
  }
  return ok ? 0 : 1;
}
