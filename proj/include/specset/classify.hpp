#pragma once

#include <map>
#include <string>
#include <vector>

#include "specset/domain.hpp"
#include "specset/geometry.hpp"
#include "specset/matcalc.hpp"

namespace specset {

/// Sample grid for the universally quantified contraction criteria.
struct RhoGrid {
  std::vector<double> radii;        // Poisson radii in (0, 1)
  std::vector<double> angles;       // [0, 2*pi)
  std::vector<Complex> tangency;    // unit-circle tangency points
  std::vector<Complex> mu_samples;  // disk-family shift samples
};

/// The default grid from the module's quantifier policy: 64 radii x 256
/// angles for the Poisson kernel, 256 tangency points, 128 log-spaced
/// mu-moduli with the unbounded range truncated at 10*(rho-1)/(2-rho) + 10.
RhoGrid default_rho_grid(double rho, int mu_angles = 64);

struct ClassifyReport {
  bool verdict = false;   // margin >= -tol
  bool boundary = false;  // |margin| within the boundary tolerance
  double margin = 0.0;
  double tol = 0.0;
  std::map<std::string, double> witness;
  std::map<std::string, double> grid;
};

/// 1e-9 absolute plus 1e-9 * ||T|| relative.
double default_tol(const CMat& t);

/// Good disk test: norm bound for genuine disks, resolvent bound for
/// exteriors, positive real part for half-planes. Margin is the signed slack.
ClassifyReport is_good_disk(const CMat& t, const GeneralizedDisk& d, double tol);

/// Samples of the numerical range boundary: for each grid angle, the top
/// eigenvector x of Re(e^{-i theta} T) contributes <Tx, x>.
std::vector<Complex> numerical_range_boundary(const CMat& t, int n_angles);

/// Support-function comparison of W(T) against a convex region given as
/// generalized disks (no exterior disks).
ClassifyReport w_contained_in(const CMat& t, const std::vector<GeneralizedDisk>& region,
                              int n_angles, double tol);

/// K_{r,t}(T) = (I - r e^{it} T^*)^{-1} + (I - r e^{-it} T)^{-1} - I,
/// symmetrized to kill rounding.
CMat poisson_kernel(const CMat& t, double r, double angle);

/// min eigenvalue of K_{r,t}(T) + (rho - 1) I over the grid.
ClassifyReport is_rho_contraction_poisson(const CMat& t, double rho,
                                          const RhoGrid& grid, double tol);

/// The tangent-disk route: norm bounds for 1 < rho < 2, numerical range in
/// the closed disk at rho = 2, resolvent bounds for rho > 2.
ClassifyReport is_rho_contraction_disks(const CMat& t, double rho,
                                        const RhoGrid& grid, double tol);

/// The rho = 2 criterion by sweeping the tangent half-planes D_a(2) over
/// the grid's tangency points; the support-function comparison inside
/// is_rho_contraction_disks is the faster default.
ClassifyReport rho2_tangent_halfplanes(const CMat& t, const RhoGrid& grid,
                                       double tol);

/// The tangent region D_a(rho) at the unimodular point a.
GeneralizedDisk d_a_rho(Complex a, double rho);

struct ResolventBoundReport {
  struct ArcResult {
    int arc = 0;
    double min_slack = 0.0;
    Complex worst_center;
    bool pass = true;
  };
  std::vector<ArcResult> arcs;
  bool spectrum_inside = true;
  std::vector<Complex> outside_eigenvalues;
  bool pass = true;
};

/// Per sampled center: slack 1/R_k - ||(T - mu I)^{-1}||; plus spectral
/// inclusion of sigma(T) in the closure of the domain.
ResolventBoundReport resolvent_bound_hypotheses(const CMat& t, const PiecewiseCircularDomain& omega,
                                   double tol);

/// min eigenvalue of T^*T - TT^* >= -tol.
ClassifyReport is_hyponormal(const CMat& t, double tol);

/// (||(T - lambda)^{-1}||, 1/dist(lambda, sigma(T))); equality is the
/// hyponormal resolvent identity.
std::pair<double, double> hyponormal_resolvent_identity(const CMat& t, Complex lambda);

}  // namespace specset
