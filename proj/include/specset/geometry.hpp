#pragma once

#include <array>
#include <variant>
#include <vector>

#include "specset/types.hpp"

namespace specset {

// Closed regions on the Riemann sphere bounded by a generalized circle.
struct ClosedDisk {
  Complex center;
  double radius = 1.0;
};

struct ExteriorDisk {
  Complex center;
  double radius = 1.0;
};

/// { z : Re(direction * (z - anchor)) >= 0 }, |direction| = 1.
struct HalfPlane {
  Complex anchor;
  Complex direction{1.0, 0.0};
};

using GeneralizedDisk = std::variant<ClosedDisk, ExteriorDisk, HalfPlane>;

GeneralizedDisk make_half_plane(Complex anchor, Complex direction);

/// Membership with the sphere conventions: infinity belongs to the closures
/// of ExteriorDisk and HalfPlane, never to a ClosedDisk.
bool disk_contains(const GeneralizedDisk& d, const ExtComplex& z);

/// Signed boundary slack: positive inside, negative outside, zero on the
/// boundary (units: distance for disks, Re-part for half-planes).
double disk_margin(const GeneralizedDisk& d, Complex z);

/// Exact containment test D1 subset of D2 on the sphere.
bool disk_subset(const GeneralizedDisk& d1, const GeneralizedDisk& d2,
                 double tol = 0.0);

/// An interior witness point comfortably inside the region.
ExtComplex disk_interior_point(const GeneralizedDisk& d);

std::string disk_kind(const GeneralizedDisk& d);

/// z -> (a z + b) / (c z + d), with ad - bc != 0.
struct MobiusMap {
  Complex a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

  Complex det() const { return a * d - b * c; }
  ExtComplex operator()(const ExtComplex& z) const;
  MobiusMap inverse() const;
  ExtComplex pole() const;  // preimage of infinity
  bool is_affine() const;

  static MobiusMap identity() { return {}; }
  /// f o g
  static MobiusMap compose(const MobiusMap& f, const MobiusMap& g);
};

void validate_mobius(const MobiusMap& m);

/// Image of a generalized disk under a Mobius map; the three variants are
/// permuted exactly, and the result is cross-checked by boundary sampling.
GeneralizedDisk mobius_image(const MobiusMap& m, const GeneralizedDisk& d);

/// The specific maps (z-a)/r, r/(z-a), and the Cayley-type half-plane map;
/// mobius_image of d under the result is the closed unit disk.
MobiusMap canonical_map_to_unit_disk(const GeneralizedDisk& d);

/// (aT + b)(cT + d)^{-1}; requires the pole of the map off the spectrum.
CMat mobius_apply_matrix(const MobiusMap& m, const CMat& t);

/// Open circular sector with a vertex: radius bound plus an angular window.
struct Sector {
  Complex vertex;
  double angle_lo = 0.0;   // radians
  double angle_hi = 1.0;   // aperture = angle_hi - angle_lo in (0, 2*pi)
  double radius = 1.0;

  double aperture() const { return angle_hi - angle_lo; }
  bool contains(Complex z) const;
};

/// Angular-interval disjointness for sectors sharing a vertex.
bool sectors_disjoint(const Sector& s1, const Sector& s2);

/// Directed circular arc. Traversal runs from `from` by `orientation *
/// extent`; orientation +1 is counterclockwise.
struct CircularArc {
  Complex center;
  double radius = 1.0;
  double from = 0.0;
  double to = kTwoPi;
  int orientation = 1;

  double extent() const;  // positive angular span in (0, 2*pi]
  double length() const { return radius * extent(); }
  Complex point_at_angle(double theta) const;
  Complex start() const { return point_at_angle(from); }
  Complex end() const;
  Complex point_at_arclength(double s) const;
  /// Outward normal of a region whose boundary traverses this arc with the
  /// region on the left.
  Complex outward_normal_at(double theta) const;
  bool angle_on_arc(double theta, double tol = 1e-12) const;
  double distance(Complex z) const;
  /// Continuous argument change of (arc(t) - z) along the traversal.
  double winding_angle(Complex z) const;
};

double wrap_angle(double theta);  // into [0, 2*pi)

}  // namespace specset
