#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "specset/blaschke.hpp"
#include "specset/domain.hpp"
#include "specset/ksearch.hpp"

namespace specset {

struct ClaimResult {
  std::string name;
  bool pass = false;
  double value = 0.0;  // measured quantity
  double bound = 0.0;  // what it was compared against
};

struct GalleryOutcome {
  bool pass = true;
  std::vector<ClaimResult> claims;

  void add(std::string name, bool ok, double value, double bound) {
    pass = pass && ok;
    claims.push_back({std::move(name), ok, value, bound});
  }
};

/// T_n = [[0, n], [0, 0]] with phi(z) = z^2: phi(T_n) vanishes while the
/// norm is n, so the closed disk is K-spectral only with K >= n.
struct MascioniPair {
  double n = 1.0;
  CMat t;
  BlaschkeProduct phi{0.0, {Complex(0, 0), Complex(0, 0)}};

  GalleryOutcome check(std::uint64_t seed = 0) const;
};
MascioniPair mascioni_pair(double n);

/// T = z0 I + N with N^2 = 0; T_n = n(T - z0 I) + z0 I kills every function
/// with a critical point at z0 while its norm grows linearly.
struct DerivativeZeroFamily {
  Complex z0;
  int n = 1;
  CMat nilpotent;  // N
  CMat t_base;     // z0 I + N
  CMat t_n;        // z0 I + n N

  GalleryOutcome check() const;
};
DerivativeZeroFamily derivative_zero_family(Complex z0, int n, const CVec& nu);

/// Two fixed eigenvalues with eigenvectors at a controllable angle: the
/// norm diverges as the angle closes while the spectrum stays put.
struct EigenvectorAngleExample {
  Complex z1, z2;
  double angle = 1.0;
  CMat t;

  GalleryOutcome check() const;
};
EigenvectorAngleExample eigenvector_angle_example(Complex z1, Complex z2, double angle);

/// Intersection of three unit disks centered at the vertices of a small
/// equilateral triangle, with the Blaschke-square family whose common
/// critical point is the center.
struct ThreeDiskExample {
  double eps = 0.05;
  std::array<Complex, 3> vertices;
  Complex z0;
  DiskIntersection domain;
  std::vector<CircularArc> boundary_arcs;  // one J_k per vertex circle
  std::array<int, 3> arc_for_vertex{};     // index into boundary_arcs
  std::array<MobiusMap, 3> eta;            // rigid motions, eta[0] = identity
  std::array<ScalarRational, 3> phi;       // phi_k = phi_1 o eta_k

  GalleryOutcome check() const;
};
ThreeDiskExample three_disk_admissible(double eps);

/// Circular domain with holes and the canonical coordinate maps of its
/// complementary disks.
struct DouglasPaulsenDomain {
  double outer_radius = 1.0;
  std::vector<std::pair<Complex, double>> holes;
  DiskIntersection domain;
  std::vector<ScalarRational> phi;  // phi_0 = z/r0, phi_k = r_k/(z - c_k)
  std::vector<GeneralizedDisk> complements;  // X_0, X_1, ...

  GalleryOutcome check(std::uint64_t seed = 0) const;
};
DouglasPaulsenDomain douglas_paulsen_domain(double outer_radius,
                                            std::vector<std::pair<Complex, double>> holes);

std::vector<std::string> gallery_names();
std::string gallery_describe(const std::string& name);
/// Run the named item with its default parameters.
GalleryOutcome gallery_run(const std::string& name, std::uint64_t seed = 0);

}  // namespace specset
