#include "whmf/plus_projection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>

#include "whmf/errors.hpp"
#include "whmf/linalg.hpp"

namespace whmf {

namespace {

// Offsets (u, s) around the fixed point of each involution; z = x0 + t0 (u + i s).
struct Offset {
  const char* u;
  const char* s;
};
constexpr Offset kOffsets[] = {
    {"0.05", "0.95"}, {"-0.22", "0.88"}, {"0.31", "1.02"}, {"-0.41", "0.79"},
    {"0.13", "1.17"}, {"-0.07", "1.06"}, {"0.27", "0.84"}, {"-0.33", "1.12"},
};
constexpr int kSolveOffsets = 5;
constexpr int kAllOffsets = 8;

struct SamplePoint {
  Complex z;
  Complex wz;
  Complex factor;  // det^{k/2} (c z + d)^{-k}
  Complex eps;     // chi(W_m)
  bool held_out = false;
};

QSeries primitive_part(const QSeries& s) {
  Integer l = 1, g = 0;
  for (const Rational& c : s.coeffs()) {
    if (c == 0) continue;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  for (const Rational& c : s.coeffs()) {
    if (c == 0) continue;
    Integer num = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g == 0) return s;
  return s * Rational(l, g);
}

std::vector<SamplePoint> sample_points(const LevelData& level, int k, const CharacterPlus& chi) {
  std::vector<SamplePoint> pts;
  for (int p : level.primes()) {
    const IntMatrix w = al_matrix(level, p).matrix;
    const Real c(static_cast<double>(w.c));
    const Real x0 = Real(-static_cast<double>(w.d)) / c;
    const Real t0 = boost::multiprecision::sqrt(Real(p)) / c;
    const Complex eps = root4(chi.w_value(p).e);
    for (int i = 0; i < kAllOffsets; ++i) {
      SamplePoint sp;
      sp.z = Complex(x0 + t0 * Real(kOffsets[i].u), t0 * Real(kOffsets[i].s));
      sp.wz = mobius(w, sp.z);
      if (sp.wz.im < t0 / 2) continue;
      sp.factor = slash_factor(w, sp.z, k);
      sp.eps = eps;
      sp.held_out = i >= kSolveOffsets;
      pts.push_back(std::move(sp));
    }
  }
  return pts;
}

int evaluation_terms(const std::vector<SamplePoint>& pts, int k, int digits, int precision) {
  double min_im = 1e9;
  for (const auto& sp : pts) {
    min_im = std::min({min_im, sp.z.im.convert_to<double>(), sp.wz.im.convert_to<double>()});
  }
  const double radius = std::exp(-2 * M_PI * min_im);
  return std::max(precision, terms_needed(radius, GrowthModel::weight(k), 4.0, digits + 5));
}

Complex eval_at(const QSeries& f, const Complex& z, int bits, int k, const Real& max_tail) {
  return evaluate(f, EvalPoint{z, bits}, GrowthModel::weight(k), max_tail).value;
}

struct Nullspace {
  int dimension = 0;
  std::vector<Real> vector;  // basis[0] when the dimension is 1
  std::vector<std::vector<Real>> basis;
};

// Gaussian elimination with complete pivoting; column j is divided by
// scale[j], the size of the basis function values that produced it.
Nullspace numeric_nullspace(std::vector<std::vector<Real>> a, int cols, std::vector<Real> scale, const Real& tol) {
  for (int j = 0; j < cols; ++j) {
    if (scale[j] == 0) scale[j] = 1;
  }
  for (auto& row : a) {
    for (int j = 0; j < cols; ++j) row[j] /= scale[j];
  }
  std::vector<int> colperm(cols);
  for (int j = 0; j < cols; ++j) colperm[j] = j;
  const int rows = static_cast<int>(a.size());
  int rank = 0;
  for (; rank < std::min(rows, cols); ++rank) {
    int pi = -1, pj = -1;
    Real best = 0;
    for (int i = rank; i < rows; ++i) {
      for (int j = rank; j < cols; ++j) {
        Real v = boost::multiprecision::abs(a[i][colperm[j]]);
        if (v > best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    }
    if (best < tol) break;
    std::swap(a[rank], a[pi]);
    std::swap(colperm[rank], colperm[pj]);
    const int c = colperm[rank];
    for (int i = rank + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Real f = a[i][c] / a[rank][c];
      for (int j = rank; j < cols; ++j) a[i][colperm[j]] -= f * a[rank][colperm[j]];
    }
  }
  Nullspace out;
  out.dimension = cols - rank;
  for (int f = rank; f < cols; ++f) {
    std::vector<Real> x(cols, Real(0));
    x[colperm[f]] = 1;
    for (int r = rank - 1; r >= 0; --r) {
      const int c = colperm[r];
      Real s = 0;
      for (int j = r + 1; j < cols; ++j) s += a[r][colperm[j]] * x[colperm[j]];
      x[c] = -s / a[r][c];
    }
    for (int j = 0; j < cols; ++j) x[j] /= scale[j];
    out.basis.push_back(std::move(x));
  }
  if (out.dimension == 1) out.vector = out.basis[0];
  return out;
}

struct System {
  std::vector<EisBasisElement> full;
  std::vector<QSeries> independent;
  std::vector<SamplePoint> points;
  int terms = 0;
  Nullspace null;
};

// With complex_coefficients the unknowns are Re c_i and Im c_i, and the real
// nullspace has twice the complex dimension.
System build_system(const LevelData& level, int k, const CharacterPlus& chi, const ProjectionConfig& config,
                    bool complex_coefficients = false) {
  System sys;
  const int bits = config.bits + config.guard_bits;
  PrecisionScope scope(bits);
  const int digits = bits_to_digits(bits);
  sys.points = sample_points(level, k, chi);
  sys.terms = evaluation_terms(sys.points, k, digits, config.precision);
  sys.full = eisenstein_basis(level, k, chi.restriction(), sys.terms);

  std::vector<QSeries> rows;
  for (const auto& e : sys.full) rows.push_back(e.series);
  const int check = std::max(config.precision, rank_precision_bound(level, k));
  for (int i : independent_rows(coefficient_matrix(rows, 0, std::min(check, sys.terms)))) {
    sys.independent.push_back(primitive_part(rows[i]));
  }
  const int r = static_cast<int>(sys.independent.size());
  const int cols = complex_coefficients ? 2 * r : r;
  const Real max_tail = boost::multiprecision::pow(Real(10), -(digits + 2));

  // Rows: real and imaginary parts of sum_i c_i ((g_i|W)(z) - eps g_i(z)).
  std::vector<std::vector<Real>> a;
  std::vector<Real> scale(cols, Real(0));
  for (const auto& sp : sys.points) {
    if (sp.held_out) continue;
    std::vector<Real> re(cols), im(cols);
    for (int i = 0; i < r; ++i) {
      Complex lhs = sp.factor * eval_at(sys.independent[i], sp.wz, bits, k, max_tail);
      Complex rhs = sp.eps * eval_at(sys.independent[i], sp.z, bits, k, max_tail);
      Complex v = lhs - rhs;
      Real size = std::max(abs(lhs), abs(rhs));
      if (complex_coefficients) {
        scale[2 * i] = scale[2 * i + 1] = std::max(scale[2 * i], size);
        re[2 * i] = v.re;
        im[2 * i] = v.im;
        re[2 * i + 1] = -v.im;
        im[2 * i + 1] = v.re;
      } else {
        scale[i] = std::max(scale[i], size);
        re[i] = v.re;
        im[i] = v.im;
      }
    }
    a.push_back(std::move(re));
    a.push_back(std::move(im));
  }
  const Real tol = boost::multiprecision::pow(Real(10), -(digits / 2));
  sys.null = numeric_nullspace(std::move(a), cols, std::move(scale), tol);
  return sys;
}

std::string memo_key(const LevelData& level, int k, const CharacterPlus& chi, const ProjectionConfig& c) {
  return std::to_string(level.n()) + "|" + std::to_string(k) + "|" + chi.describe() + "|" + std::to_string(c.bits) + "|" +
         std::to_string(c.guard_bits) + "|" + std::to_string(c.precision) + "|" + std::to_string(c.denominator_bound) +
         "|" + std::to_string(c.residual_tolerance);
}

std::mutex memo_mutex;
std::map<std::string, PlusEisenstein>& memo() {
  static std::map<std::string, PlusEisenstein> m;
  return m;
}

PlusEisenstein compute_plus(const LevelData& level, int k, const CharacterPlus& chi, const ProjectionConfig& config) {
  if (!(chi.level() == level)) throw MathError(ErrorKind::BadCharacter, "character of a different level");
  if (k < 0) throw MathError(ErrorKind::EmptyPlusSpace, "negative weight");
  if (chi.parity() != (k % 2 == 0 ? 1 : -1)) {
    throw MathError(ErrorKind::ParityMismatch, chi.name() + " has the wrong parity for weight " + std::to_string(k));
  }
  PlusEisenstein out;
  out.level = level;
  out.weight = k;
  out.chi = chi;
  if (k == 0) {
    if (!chi.is_trivial()) throw MathError(ErrorKind::EmptyPlusSpace, "weight 0 with nontrivial character");
    out.series = QSeries::one(config.precision);
    out.record.basis_size = out.record.independent_size = out.record.nullspace_dimension = 1;
    out.record.span_membership = true;
    return out;
  }
  if (!chi.is_consistent()) {
    throw MathError(ErrorKind::EmptyPlusSpace, chi.describe() + " has W-values incompatible with W_m^2");
  }
  if (k == 1 && chi.restriction().is_trivial()) throw MathError(ErrorKind::EmptyPlusSpace, "weight 1 with trivial restriction");

  const int bits = config.bits + config.guard_bits;
  PrecisionScope scope(bits);
  System sys = build_system(level, k, chi, config);
  VerificationRecord& rec = out.record;
  rec.basis_size = static_cast<int>(sys.full.size());
  rec.independent_size = static_cast<int>(sys.independent.size());
  rec.nullspace_dimension = sys.null.dimension;
  rec.evaluation_terms = sys.terms;
  const std::string what = "k=" + std::to_string(k) + " chi=" + chi.name() + " N=" + std::to_string(level.n());
  if (sys.null.dimension == 0) {
    if (build_system(level, k, chi, config, true).null.dimension > 0) {
      throw MathError(ErrorKind::ReconstructionFailed, what + ": the plus space has no real (hence no rational) generator");
    }
    throw MathError(ErrorKind::EmptyPlusSpace, what);
  }
  if (sys.null.dimension > 1) {
    throw MathError(ErrorKind::AmbiguousPlusSpace, what + " nullspace dimension " + std::to_string(sys.null.dimension));
  }

  // Ratios against a reference coordinate; try references largest first.
  const auto& v = sys.null.vector;
  const int cols = static_cast<int>(v.size());
  std::vector<int> order(cols);
  for (int i = 0; i < cols; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return boost::multiprecision::abs(v[x]) > boost::multiprecision::abs(v[y]);
  });
  const int digits = bits_to_digits(config.bits);
  const Real tol = boost::multiprecision::pow(Real(10), -(digits - 10));
  const Real vmax = boost::multiprecision::abs(v[order[0]]);
  std::vector<Rational> coeffs;
  for (int ref : order) {
    if (boost::multiprecision::abs(v[ref]) < vmax * tol) break;
    std::vector<Rational> trial;
    try {
      for (int i = 0; i < cols; ++i) {
        Real x = v[i] / v[ref];
        Real scaled_tol = tol * std::max(Real(1), Real(boost::multiprecision::abs(x)));
        trial.push_back(rational_reconstruct(x, Integer(static_cast<long>(config.denominator_bound)), scaled_tol));
      }
    } catch (const MathError&) {
      continue;
    }
    coeffs = std::move(trial);
    break;
  }
  if (coeffs.empty()) throw MathError(ErrorKind::ReconstructionFailed, what);

  QSeries e = QSeries::zero(sys.terms);
  for (int i = 0; i < cols; ++i) {
    if (coeffs[i] != 0) e += sys.independent[i] * coeffs[i];
  }
  if (e.is_zero() || e.valuation() > 0 || e.coeff(0) == 0) throw MathError(ErrorKind::ZeroConstantTerm, what);
  e *= Rational(1) / e.coeff(0);

  // Held-out residuals of the exact series.
  const Real max_tail = boost::multiprecision::pow(Real(10), -(bits_to_digits(bits) + 2));
  double worst = 0;
  for (const auto& sp : sys.points) {
    if (!sp.held_out) continue;
    Complex fz = eval_at(e, sp.z, bits, k, max_tail);
    Complex lhs = sp.factor * eval_at(e, sp.wz, bits, k, max_tail);
    Real scale = std::max(Real(1), abs(fz));
    double r = (abs(lhs - sp.eps * fz) / scale).convert_to<double>();
    worst = std::max(worst, r);
  }
  rec.max_heldout_residual = worst;
  if (!(worst < config.residual_tolerance)) {
    throw MathError(ErrorKind::InvarianceFailure, what + " held-out residual " + std::to_string(worst));
  }

  out.series = e.truncate(config.precision);

  std::vector<QSeries> rows;
  for (const auto& b : sys.full) rows.push_back(b.series);
  const int p = config.precision;
  std::vector<Rational> target;
  for (int n = 0; n < p; ++n) target.push_back(out.series.coeff(n));
  rec.span_membership = solve_in_span(coefficient_matrix(rows, 0, p), target).ok;
  if (!rec.span_membership) throw MathError(ErrorKind::IdentityFailure, what + " is not in the Eisenstein span");

  if (level.is_prime() && k >= 4 && k % 2 == 0 && chi.restriction().is_trivial()) {
    const int eps = chi.w_value(level.n()).e == 0 ? 1 : -1;
    rec.closed_form_match = closed_symmetrization(level, k, eps, p) == out.series;
    if (!*rec.closed_form_match) throw MathError(ErrorKind::IdentityFailure, what + " differs from the symmetrization");
  }
  return out;
}

}  // namespace

int plus_nullspace_dimension(const LevelData& level, int k, const CharacterPlus& chi, const ProjectionConfig& config,
                             bool complex_coefficients) {
  if (k == 0) return chi.is_trivial() ? 1 : 0;
  if (k < 0 || chi.parity() != (k % 2 == 0 ? 1 : -1)) return 0;
  if (k == 1 && chi.restriction().is_trivial()) return 0;
  PrecisionScope scope(config.bits + config.guard_bits);
  const int d = build_system(level, k, chi, config, complex_coefficients).null.dimension;
  return complex_coefficients ? d / 2 : d;
}

PlusEisenstein project_plus(const LevelData& level, int k, const CharacterPlus& chi, const ProjectionConfig& config) {
  const std::string key = memo_key(level, k, chi, config);
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo().find(key);
    if (it != memo().end()) return it->second;
  }
  PlusEisenstein result = compute_plus(level, k, chi, config);
  std::lock_guard<std::mutex> lock(memo_mutex);
  memo().emplace(key, result);
  return result;
}

QSeries plus_series(const LevelData& level, int k, const CharacterPlus& chi, int precision,
                    const ProjectionConfig& config) {
  ProjectionConfig c = config;
  c.precision = std::max(100, (precision + 99) / 100 * 100);
  return project_plus(level, k, chi, c).series.truncate(precision);
}

bool plus_space_expected_empty(const LevelData& level, int k, const CharacterPlus& chi) {
  if (k < 0) return true;
  if (k == 0) return !chi.is_trivial();
  if (!chi.is_admissible(k)) return true;
  if (k == 1) {
    if (chi == CharacterPlus::psi(level)) return false;
    if (aux_modulus(level) != 0 && chi == xi(level)) return false;
    return true;
  }
  if (k == 2) return chi.is_trivial();
  return false;
}

QSeries closed_symmetrization(const LevelData& level, int k, int eps, int precision) {
  if (!level.is_prime() || k < 4 || k % 2 != 0) {
    throw MathError(ErrorKind::HypothesisViolated, "closed symmetrization needs prime N and even k >= 4");
  }
  const RealCharacter one = RealCharacter::trivial(1);
  QSeries g = eisenstein_pair_series(k, one, one, precision);
  g *= Rational(1) / g.coeff(0);
  Integer nk;
  mpz_ui_pow_ui(nk.get_mpz_t(), level.n(), k / 2);
  const Rational a = Rational(eps) * Rational(nk);
  QSeries s = g + scale_exponents(g, level.n()).truncate(precision) * a;
  s *= Rational(1) / (1 + a);
  return s;
}

std::vector<CharacterPlus> aux_weight_one_candidates(const LevelData& level, const ProjectionConfig& config) {
  std::vector<CharacterPlus> out;
  for (const auto& c : aux_candidates(level)) {
    if (plus_nullspace_dimension(level, 1, c, config, true) > 0) out.push_back(c);
  }
  return out;
}

QuadraticSeries mul(const QuadraticSeries& x, const QuadraticSeries& y) {
  if (x.d != y.d && !x.b.is_zero() && !y.b.is_zero()) {
    throw MathError(ErrorKind::Usage, "products across different quadratic fields");
  }
  QuadraticSeries out;
  out.d = x.b.is_zero() ? y.d : x.d;
  out.a = mul(x.a, y.a) + mul(x.b, y.b) * Rational(out.d);
  out.b = mul(x.a, y.b) + mul(x.b, y.a);
  return out;
}

namespace {

std::vector<int> squarefree_divisors(const LevelData& level) {
  std::vector<int> out;
  for (int d : level.divisors()) {
    bool sf = d > 1;
    for (int p : level.primes()) sf &= (d % (p * p)) != 0;
    if (sf) out.push_back(d);
  }
  return out;
}

Rational exact_reconstruct(const Real& x, const ProjectionConfig& c) {
  const Real tol = boost::multiprecision::pow(Real(10), -(bits_to_digits(c.bits) - 10));
  return rational_reconstruct(x, Integer(static_cast<long>(c.denominator_bound)),
                              tol * std::max(Real(1), Real(boost::multiprecision::abs(x))));
}

// Coefficient vectors (Re, Im parts of c_i) normalized to constant term 1.
struct Normalized {
  std::vector<Real> re, im;
};

Real constant_term(const System& s, int i) {
  const Rational& q = s.independent[i].coeff(0);
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

Normalized normalize_real(const System& s) {
  const int r = static_cast<int>(s.independent.size());
  Real c0 = 0;
  for (int i = 0; i < r; ++i) c0 += s.null.vector[i] * constant_term(s, i);
  Normalized out{std::vector<Real>(r), std::vector<Real>(r, Real(0))};
  for (int i = 0; i < r; ++i) out.re[i] = s.null.vector[i] / c0;
  return out;
}

// The complex system has real dimension 2 (v and i v); solve alpha u1 +
// beta u2 for constant term 1.
Normalized normalize_complex(const System& s) {
  const int r = static_cast<int>(s.independent.size());
  const auto& u1 = s.null.basis[0];
  const auto& u2 = s.null.basis[1];
  Complex s1, s2;
  for (int i = 0; i < r; ++i) {
    s1 += Complex(u1[2 * i], u1[2 * i + 1]) * Complex(constant_term(s, i));
    s2 += Complex(u2[2 * i], u2[2 * i + 1]) * Complex(constant_term(s, i));
  }
  // alpha s1 + beta s2 = 1 over the reals.
  const Real det = s1.re * s2.im - s2.re * s1.im;
  const Real alpha = s2.im / det;
  const Real beta = -s1.im / det;
  Normalized out{std::vector<Real>(r), std::vector<Real>(r)};
  for (int i = 0; i < r; ++i) {
    out.re[i] = alpha * u1[2 * i] + beta * u2[2 * i];
    out.im[i] = alpha * u1[2 * i + 1] + beta * u2[2 * i + 1];
  }
  return out;
}

std::optional<QuadraticSeries> assemble(const System& s, int d, const std::vector<Real>& a, const std::vector<Real>& b,
                                        const ProjectionConfig& c) {
  QuadraticSeries out{d, QSeries::zero(s.terms), QSeries::zero(s.terms)};
  try {
    for (std::size_t i = 0; i < s.independent.size(); ++i) {
      const Rational qa = exact_reconstruct(a[i], c);
      const Rational qb = exact_reconstruct(b[i], c);
      if (qa != 0) out.a += s.independent[i] * qa;
      if (qb != 0) out.b += s.independent[i] * qb;
    }
  } catch (const MathError&) {
    return std::nullopt;
  }
  return out;
}

Complex sqrt_of(int d) {
  const Real r = boost::multiprecision::sqrt(Real(std::abs(d)));
  return d > 0 ? Complex(r) : Complex(Real(0), r);
}

}  // namespace

QuadraticSeries plus_series_quadratic(const LevelData& level, int k, const CharacterPlus& chi, int precision,
                                      const ProjectionConfig& config) {
  try {
    return {1, plus_series(level, k, chi, precision, config), QSeries::zero(precision)};
  } catch (const MathError& e) {
    if (e.kind() != ErrorKind::ReconstructionFailed) throw;
  }
  const std::string what = "k=" + std::to_string(k) + " chi=" + chi.name() + " N=" + std::to_string(level.n());
  ProjectionConfig c = config;
  c.precision = precision;
  const int bits = c.bits + c.guard_bits;
  PrecisionScope scope(bits);
  const System sys = build_system(level, k, chi, c);
  const int r = static_cast<int>(sys.independent.size());

  std::optional<QuadraticSeries> found;
  if (sys.null.dimension == 1) {
    // Real coefficients: a + b sqrt d, conjugate to the generator for chi
    // with the W-values at the primes of d negated.
    const Normalized v1 = normalize_real(sys);
    for (int d : squarefree_divisors(level)) {
      std::map<int, Root4> w = chi.prime_w_values();
      for (auto& [p, v] : w) {
        if (d % p == 0) v = v * Root4(2);
      }
      const System conj = build_system(level, k, CharacterPlus(level, chi.restriction(), w), c);
      if (conj.null.dimension != 1 || conj.independent != sys.independent) continue;
      const Normalized v2 = normalize_real(conj);
      const Real root = boost::multiprecision::sqrt(Real(d));
      std::vector<Real> a(r), b(r);
      for (int i = 0; i < r; ++i) {
        a[i] = (v1.re[i] + v2.re[i]) / 2;
        b[i] = (v1.re[i] - v2.re[i]) / (2 * root);
      }
      if ((found = assemble(sys, d, a, b, c))) break;
    }
  } else if (sys.null.dimension == 0) {
    const System cs = build_system(level, k, chi, c, true);
    if (cs.null.dimension == 2) {
      const Normalized v = normalize_complex(cs);
      std::vector<int> ds = squarefree_divisors(level);
      ds.insert(ds.begin(), 1);
      for (int d : ds) {
        const Real root = boost::multiprecision::sqrt(Real(d));
        std::vector<Real> b(r);
        for (int i = 0; i < r; ++i) b[i] = v.im[i] / root;
        if ((found = assemble(sys, -d, v.re, b, c))) break;
      }
    }
  }
  if (!found) throw MathError(ErrorKind::ReconstructionFailed, what + ": no quadratic field fits");
  QuadraticSeries& out = *found;

  const Real max_tail = boost::multiprecision::pow(Real(10), -(bits_to_digits(bits) + 2));
  const Complex root = sqrt_of(out.d);
  for (const auto& sp : sys.points) {
    if (!sp.held_out) continue;
    Complex fz = eval_at(out.a, sp.z, bits, k, max_tail) + root * eval_at(out.b, sp.z, bits, k, max_tail);
    Complex fw = eval_at(out.a, sp.wz, bits, k, max_tail) + root * eval_at(out.b, sp.wz, bits, k, max_tail);
    Real scale = std::max(Real(1), abs(fz));
    double res = (abs(sp.factor * fw - sp.eps * fz) / scale).convert_to<double>();
    if (!(res < c.residual_tolerance)) {
      throw MathError(ErrorKind::InvarianceFailure, what + " held-out residual " + std::to_string(res));
    }
  }
  out.a = out.a.truncate(precision);
  out.b = out.b.truncate(precision);
  if (out.a.is_zero() || out.a.valuation() > 0 || out.a.coeff(0) != 1 || (!out.b.is_zero() && out.b.valuation() == 0)) {
    throw MathError(ErrorKind::ZeroConstantTerm, what);
  }
  std::vector<QSeries> rows;
  for (const auto& e : sys.full) rows.push_back(e.series);
  const auto m = coefficient_matrix(rows, 0, precision);
  for (const QSeries* part : {&out.a, &out.b}) {
    std::vector<Rational> target;
    for (int n = 0; n < precision; ++n) target.push_back(part->is_zero() ? Rational(0) : part->coeff(n));
    if (!solve_in_span(m, target).ok) throw MathError(ErrorKind::IdentityFailure, what + " is not in the Eisenstein span");
  }
  return out;
}

}  // namespace whmf
