#pragma once

#include <string>
#include <vector>

#include "whmf/plus_projection.hpp"

namespace whmf {

// A circular arc z = center + radius e^{i phi}, phi in [from, to], fixed
// setwise by the involution w (its isometric circle).
struct ArcPiece {
  IntMatrix w;
  double center = 0;
  double radius = 0;
  double from = 0;
  double to = 0;
};

struct ArcSpec {
  int level = 0;
  std::vector<ArcPiece> pieces;
};

// N=2: |z| = 1/sqrt 2, arg in [pi/2, 3pi/4]. N=3: |z| = 1/sqrt 3, arg in
// [pi/2, 5pi/6]. N=5: |z| = 1/sqrt 5 and |z + 1/2| = 1/(2 sqrt 5) between the
// imaginary axis, their intersection -2/5 + i/5 and Re z = -1/2. Throws
// UnsupportedLevel elsewhere.
ArcSpec arc_spec(int level);

// The closed region |Re z| <= 1/2 above every arc circle, truncated at
// Im z = height.
struct DomainSpec {
  double height = 2;
  double floor = 0;  // 0.15/sqrt N when left at 0
  double cell = 0.02;
  int max_depth = 4;
};

struct ArcSample {
  int piece = 0;
  double angle = 0;
  Complex h;
};

struct RealityReport {
  int points = 0;
  double max_imag = 0;
  std::vector<ArcSample> samples;
};

// h(phi) = mu e^{i k phi/2} E(z(phi)) with mu^2 = chi(w) is real on each arc
// piece; branch 1 multiplies mu by i (which makes h imaginary). Throws
// RealityFailure when |Im h| >= tolerance somewhere.
RealityReport reality_on_arc(const QSeries& e, int k, const CharacterPlus& chi, const ArcSpec& arc, int grid_points = 200,
                             int branch = 0, double tolerance = 1e-18, int bits = 256);
RealityReport reality_on_arc(const QuadraticSeries& e, int k, const CharacterPlus& chi, const ArcSpec& arc,
                             int grid_points = 200, int branch = 0, double tolerance = 1e-18, int bits = 256);

// Sign changes of Re h summed over the arc pieces (the normalization of h
// differs between pieces, so the junction is not counted). Samples below 1e-9 max |h| are skipped, so
// zeros at the elliptic endpoints do not register.
int count_sign_changes(const RealityReport& r);

struct WindingReport {
  int cells = 0;
  int arc_adjacent = 0;
  int subdivided = 0;
  // Cells whose winding number is nonzero; the certificate holds iff empty.
  std::vector<std::pair<double, double>> zero_cells;
  // sum |a_n| e^{-2 pi n height} over n >= 1; below 1 certifies that E has no
  // zeros above the domain.
  double tail_above = 0;
  bool tail_certified = false;
};

// Argument-principle winding number of E around every cell of the domain
// grid not adjacent to an arc circle. Throws WindingAmbiguous when a cell
// stays ambiguous after max_depth subdivisions.
WindingReport certify_no_offarc_zeros(const QSeries& e, int level, const DomainSpec& domain = {});
WindingReport certify_no_offarc_zeros(const QuadraticSeries& e, int level, const DomainSpec& domain = {});

}  // namespace whmf
