#include "whmf/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <complex>

#include "whmf/errors.hpp"

namespace whmf {

namespace {

using cd = std::complex<double>;

struct Circle {
  double center;
  double radius;
};

std::vector<Circle> boundary_circles(int level) {
  const double r = 1 / std::sqrt(static_cast<double>(level));
  std::vector<Circle> out{{0, r}};
  if (level == 5) {
    out.push_back({-0.5, r / 2});
    out.push_back({0.5, r / 2});
  }
  return out;
}

// Double-precision q-expansion, all stored coefficients.
class FastSeries {
 public:
  explicit FastSeries(const QuadraticSeries& e) {
    const cd root = std::sqrt(cd(e.d));
    for (int n = 0; n < e.a.precision(); ++n) coeffs_.push_back(coefficient(e, n, root));
  }
  static cd coefficient(const QuadraticSeries& e, int n, cd root) {
    auto at = [n](const QSeries& s) { return n < s.valuation() || s.is_zero() ? 0.0 : mpq_get_d(s.coeff(n).get_mpq_t()); };
    return at(e.a) + root * at(e.b);
  }
  cd operator()(cd z) const {
    const cd q = std::exp(cd(0, 2 * M_PI) * z);
    cd acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + *it;
    return acc;
  }

 private:
  std::vector<cd> coeffs_;
};

struct Cell {
  double x0, y0, size;
};

// Winding number of f around the cell boundary, or nullopt when the sampling
// is too coarse to be trusted.
std::optional<int> winding(const FastSeries& f, const Cell& c, int per_side) {
  std::vector<cd> pts;
  const double s = c.size;
  for (int i = 0; i < per_side; ++i) pts.push_back({c.x0 + s * i / per_side, c.y0});
  for (int i = 0; i < per_side; ++i) pts.push_back({c.x0 + s, c.y0 + s * i / per_side});
  for (int i = 0; i < per_side; ++i) pts.push_back({c.x0 + s - s * i / per_side, c.y0 + s});
  for (int i = 0; i < per_side; ++i) pts.push_back({c.x0, c.y0 + s - s * i / per_side});
  std::vector<cd> vals;
  for (const cd& z : pts) {
    const cd v = f(z);
    if (std::abs(v) < 1e-12) return std::nullopt;
    vals.push_back(v);
  }
  double total = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double d = std::arg(vals[(i + 1) % vals.size()] / vals[i]);
    if (std::abs(d) > 0.5) return std::nullopt;
    total += d;
  }
  const double w = total / (2 * M_PI);
  if (std::abs(w - std::round(w)) > 1e-3) return std::nullopt;
  return static_cast<int>(std::lround(w));
}

int cell_winding(const FastSeries& f, const Cell& c, int depth, int max_depth, int& subdivided) {
  if (auto w = winding(f, c, 16)) return *w;
  if (depth >= max_depth) {
    throw MathError(ErrorKind::WindingAmbiguous,
                    "cell at (" + std::to_string(c.x0) + ", " + std::to_string(c.y0) + ") of side " + std::to_string(c.size));
  }
  ++subdivided;
  const double h = c.size / 2;
  int total = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) total += cell_winding(f, {c.x0 + i * h, c.y0 + j * h, h}, depth + 1, max_depth, subdivided);
  }
  return total;
}

// Distance from the cell (a closed square) to a circle, zero when it meets it.
double cell_circle_distance(const Cell& c, const Circle& k) {
  const double nx = std::clamp(k.center, c.x0, c.x0 + c.size);
  const double near = std::hypot(nx - k.center, std::clamp(0.0, c.y0, c.y0 + c.size));
  double far = 0;
  for (double x : {c.x0, c.x0 + c.size}) {
    for (double y : {c.y0, c.y0 + c.size}) far = std::max(far, std::hypot(x - k.center, y));
  }
  if (near <= k.radius && k.radius <= far) return 0;
  return near > k.radius ? near - k.radius : k.radius - far;
}

bool inside_all(const Cell& c, const std::vector<Circle>& circles) {
  for (const Circle& k : circles) {
    const double nx = std::clamp(k.center, c.x0, c.x0 + c.size);
    if (std::hypot(nx - k.center, c.y0) < k.radius) return false;
  }
  return true;
}

QuadraticSeries rational(const QSeries& e) { return {1, e, QSeries::zero(e.precision())}; }

}  // namespace

ArcSpec arc_spec(int level) {
  ArcSpec a;
  a.level = level;
  const double r = 1 / std::sqrt(static_cast<double>(level));
  switch (level) {
    case 2:
      a.pieces.push_back({{0, -1, 2, 0}, 0, r, M_PI / 2, 3 * M_PI / 4});
      break;
    case 3:
      a.pieces.push_back({{0, -1, 3, 0}, 0, r, M_PI / 2, 5 * M_PI / 6});
      break;
    case 5:
      a.pieces.push_back({{0, -1, 5, 0}, 0, r, M_PI / 2, M_PI - std::atan(0.5)});
      a.pieces.push_back({{5, 2, 10, 5}, -0.5, r / 2, std::atan(2.0), M_PI / 2});
      break;
    default:
      throw MathError(ErrorKind::UnsupportedLevel, "arcs are known for N = 2, 3, 5 only");
  }
  return a;
}

RealityReport reality_on_arc(const QSeries& e, int k, const CharacterPlus& chi, const ArcSpec& arc, int grid_points,
                             int branch, double tolerance, int bits) {
  return reality_on_arc(rational(e), k, chi, arc, grid_points, branch, tolerance, bits);
}

RealityReport reality_on_arc(const QuadraticSeries& e, int k, const CharacterPlus& chi, const ArcSpec& arc,
                             int grid_points, int branch, double tolerance, int bits) {
  PrecisionScope scope(bits);
  const Real pi = real_pi();
  const Real max_tail = boost::multiprecision::pow(Real(10), -(bits_to_digits(bits) - 10));
  const Real abs_root = boost::multiprecision::sqrt(Real(std::abs(e.d)));
  const Complex root = e.d > 0 ? Complex(abs_root) : Complex(Real(0), abs_root);
  auto value = [&](const Complex& z) {
    Complex v = evaluate(e.a, EvalPoint{z, bits}, GrowthModel::weight(k), max_tail).value;
    if (!e.b.is_zero()) v += root * evaluate(e.b, EvalPoint{z, bits}, GrowthModel::weight(k), max_tail).value;
    return v;
  };
  RealityReport rep;
  for (std::size_t p = 0; p < arc.pieces.size(); ++p) {
    const ArcPiece& piece = arc.pieces[p];
    const Root4 eps = chi.value(piece.w);
    // mu = e^{i pi e / 4}, a square root of i^e.
    const Real a = pi * Real(eps.e + 2 * branch) / 4;
    const Complex mu(boost::multiprecision::cos(a), boost::multiprecision::sin(a));
    const Real center = Real(-static_cast<double>(piece.w.d)) / Real(static_cast<double>(piece.w.c));
    const Real radius = boost::multiprecision::sqrt(Real(static_cast<double>(piece.w.det()))) /
                        Real(static_cast<double>(piece.w.c));
    for (int i = 0; i < grid_points; ++i) {
      const Real phi = Real(piece.from) + (Real(piece.to) - Real(piece.from)) * Real(i) / Real(grid_points - 1);
      const Complex z(center + radius * boost::multiprecision::cos(phi), radius * boost::multiprecision::sin(phi));
      const Complex rot(boost::multiprecision::cos(Real(k) * phi / 2), boost::multiprecision::sin(Real(k) * phi / 2));
      const Complex h = mu * rot * value(z);
      const double im = boost::multiprecision::abs(h.im).convert_to<double>();
      rep.max_imag = std::max(rep.max_imag, im);
      rep.samples.push_back({static_cast<int>(p), phi.convert_to<double>(), h});
      ++rep.points;
    }
  }
  if (!(rep.max_imag < tolerance)) {
    throw MathError(ErrorKind::RealityFailure, "max |Im h| = " + std::to_string(rep.max_imag));
  }
  return rep;
}

int count_sign_changes(const RealityReport& r) {
  Real scale = 0;
  for (const ArcSample& s : r.samples) scale = std::max(scale, Real(abs(s.h.re)));
  const Real floor = scale * Real(1e-9);
  int changes = 0;
  int last = 0;
  int piece = -1;
  for (const ArcSample& s : r.samples) {
    if (s.piece != piece) {
      piece = s.piece;
      last = 0;
    }
    if (abs(s.h.re) <= floor) continue;
    const int sign = s.h.re > 0 ? 1 : -1;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

WindingReport certify_no_offarc_zeros(const QSeries& e, int level, const DomainSpec& domain) {
  return certify_no_offarc_zeros(rational(e), level, domain);
}

WindingReport certify_no_offarc_zeros(const QuadraticSeries& e, int level, const DomainSpec& domain) {
  const std::vector<Circle> circles = boundary_circles(level);
  const double floor = domain.floor > 0 ? domain.floor : 0.15 / std::sqrt(static_cast<double>(level));
  if (e.a.valuation() < 0 || (!e.b.is_zero() && e.b.valuation() < 0)) throw MathError(ErrorKind::PrecisionExceeded, "winding needs a holomorphic series");
  const FastSeries f(e);
  WindingReport rep;
  const int nx = static_cast<int>(std::lround(1.0 / domain.cell));
  const int ny = static_cast<int>(std::ceil((domain.height - floor) / domain.cell));
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const Cell c{-0.5 + i * domain.cell, floor + j * domain.cell, domain.cell};
      bool adjacent = false;
      for (const Circle& k : circles) adjacent |= cell_circle_distance(c, k) < domain.cell / 4;
      if (adjacent) {
        ++rep.arc_adjacent;
        continue;
      }
      if (!inside_all(c, circles)) continue;
      ++rep.cells;
      if (cell_winding(f, c, 0, domain.max_depth, rep.subdivided) != 0) rep.zero_cells.push_back({c.x0, c.y0});
    }
  }
  double tail = 0;
  const cd root = std::sqrt(cd(e.d));
  for (int n = 1; n < e.a.precision(); ++n) {
    tail += std::abs(FastSeries::coefficient(e, n, root)) * std::exp(-2 * M_PI * n * domain.height);
  }
  rep.tail_above = tail;
  rep.tail_certified = e.a.valuation() == 0 && e.a.coeff(0) == 1 && (e.b.is_zero() || e.b.valuation() > 0) && tail < 1;
  return rep;
}

}  // namespace whmf
