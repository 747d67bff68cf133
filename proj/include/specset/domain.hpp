#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "specset/geometry.hpp"
#include "specset/types.hpp"

namespace specset {

/// Straight boundary piece (half-plane boundaries clipped by other members).
struct SegmentPiece {
  Complex a, b;          // endpoints of the finite part
  Complex dir;           // unit traversal direction, region on the left
  bool unbounded_neg = false;  // extends beyond `a`
  bool unbounded_pos = false;  // extends beyond `b`

  bool unbounded() const { return unbounded_neg || unbounded_pos; }
  double length() const;
  Complex point_at_arclength(double s) const;
  double distance(Complex z) const;
};

using BoundaryPiece = std::variant<CircularArc, SegmentPiece>;

double piece_length(const BoundaryPiece& p);
double piece_distance(const BoundaryPiece& p, Complex z);
Complex piece_start(const BoundaryPiece& p);
Complex piece_end(const BoundaryPiece& p);
Complex piece_point_at_arclength(const BoundaryPiece& p, double s);
bool piece_unbounded(const BoundaryPiece& p);

/// Exterior-disk samples attached to one boundary arc: pairs (lambda, mu)
/// with |lambda - mu| = R and B(mu, R) disjoint from the domain.
struct ExteriorArcData {
  int arc_index = 0;
  double radius = 1.0;
  std::vector<std::pair<Complex, Complex>> centers;
};

/// Jordan region bounded by chains of circular arcs. The outer curve runs
/// counterclockwise and hole curves clockwise; membership is decided by the
/// total winding number of the boundary.
class PiecewiseCircularDomain {
 public:
  PiecewiseCircularDomain(std::vector<std::vector<CircularArc>> curves,
                          std::vector<ExteriorArcData> exterior = {},
                          std::vector<ExtComplex> complement_points = {});

  const std::vector<std::vector<CircularArc>>& curves() const { return curves_; }
  const std::vector<ExteriorArcData>& exterior() const { return exterior_; }
  const std::vector<ExtComplex>& complement_points() const {
    return complement_points_;
  }

  /// Arcs flattened in curve order; the exterior data indexes this list.
  std::vector<CircularArc> all_arcs() const;

  double boundary_distance(Complex z) const;
  bool contains(const ExtComplex& z, double boundary_tol = 1e-12) const;
  /// Winding number of each boundary curve around z (z off the boundary).
  std::vector<int> winding_signature(Complex z) const;
  double boundary_length() const;

 private:
  std::vector<std::vector<CircularArc>> curves_;
  std::vector<ExteriorArcData> exterior_;
  std::vector<ExtComplex> complement_points_;
};

/// Intersection of finitely many generalized disks, with its boundary
/// computed as an arrangement of arcs and segments.
class DiskIntersection {
 public:
  explicit DiskIntersection(std::vector<GeneralizedDisk> members);

  const std::vector<GeneralizedDisk>& members() const { return members_; }
  const std::vector<BoundaryPiece>& boundary() const { return boundary_; }
  bool boundary_bounded() const { return bounded_; }

  bool contains(const ExtComplex& z, double tol = 0.0) const;
  double boundary_distance(Complex z) const;

  /// Boundary pieces chained into closed loops (throws when unbounded).
  std::vector<std::vector<BoundaryPiece>> loops() const;
  /// Conversion for arc-only boundaries.
  PiecewiseCircularDomain to_piecewise() const;

 private:
  void build_boundary_();

  std::vector<GeneralizedDisk> members_;
  std::vector<BoundaryPiece> boundary_;
  bool bounded_ = true;
};

/// Region argument shared by the classifier and search operations.
class Domain {
 public:
  Domain(DiskIntersection di) : rep_(std::move(di)) {}      // NOLINT
  Domain(PiecewiseCircularDomain pc) : rep_(std::move(pc)) {}  // NOLINT
  static Domain unit_disk();

  const DiskIntersection* as_disks() const {
    return std::get_if<DiskIntersection>(&rep_);
  }
  const PiecewiseCircularDomain* as_piecewise() const {
    return std::get_if<PiecewiseCircularDomain>(&rep_);
  }

  bool contains(const ExtComplex& z, double tol = 0.0) const;
  bool closure_contains_infinity() const;
  double boundary_distance(Complex z) const;

 private:
  std::variant<DiskIntersection, PiecewiseCircularDomain> rep_;
};

/// n boundary points distributed proportionally to arc length, deterministic
/// in the domain description. Throws InvalidInput for unbounded boundaries.
std::vector<Complex> boundary_grid(const Domain& domain, int n);

struct TransversalityWitness {
  bool transversal = false;
  int aperture_m = 0;  // sectors had aperture 2*pi/aperture_m
  std::vector<Sector> sectors;  // s0, s1l, s1r, s2l, s2r when transversal
  std::string note;
};

/// Five-sector transversality search at a common boundary point z0 with
/// equal apertures 2*pi/m, m <= max_m from a fixed scale list. A failure is
/// a refutation at this resolution only.
TransversalityWitness transversal_at(const Domain& omega1, const Domain& omega2,
                                     const ExtComplex& z0, int max_m = 64);

struct ExteriorDiskReport {
  bool pass = true;
  double worst_clearance = std::numeric_limits<double>::infinity();
  Complex worst_lambda;
  std::vector<std::pair<Complex, Complex>> witness_centers;  // (lambda, mu)
};

/// Exterior disk condition with radius R checked on boundary samples;
/// candidate centers sit along the outward normal and emptiness is decided
/// against the arcs analytically.
ExteriorDiskReport exterior_disk_condition(const PiecewiseCircularDomain& omega,
                                           double radius, int samples_per_arc = 64);

struct ConditionAReport {
  struct ArcClause {
    int arc = 0;
    bool touches = true;
    double worst_touch_error = 0.0;      // max | |lambda-mu| - R |
    double worst_clearance = 0.0;        // min over samples of dist(mu, domain) - R
    bool common_intersection = true;
    double enclosing_radius = 0.0;       // smallest circle enclosing the centers
  };
  struct CornerClause {
    int arc_a = 0, arc_b = 0;
    Complex corner;
    bool transversal = true;
    double angle = 0.0;  // angle between the arc tangents
    std::vector<Sector> sectors;
  };
  std::vector<ArcClause> arcs;
  std::vector<CornerClause> corners;
  bool pass = true;
};

ConditionAReport condition_A_check(const PiecewiseCircularDomain& omega);

/// Every lambda off the closure and every complementary component covered.
bool pole_set_valid(const std::vector<ExtComplex>& poles, const Domain& omega);

/// Smallest circle enclosing a point set (test hook for the condition-A
/// common-intersection clause).
std::pair<Complex, double> smallest_enclosing_circle(const std::vector<Complex>& pts);

}  // namespace specset
