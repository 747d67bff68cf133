#pragma once

#include <vector>

#include "specset/rational.hpp"
#include "specset/types.hpp"

namespace specset {

/// Largest singular value. Throws InvalidInput on non-finite entries.
double opnorm(const CMat& t);

/// Spectrum of a square matrix (dense QR-type solve, treated as exact up to a
/// ~1e-10 backward error at desk scale).
CVec eigenvalues(const CMat& t);

double spectral_radius(const CMat& t);

/// Distance from lambda to the spectrum of t.
double spectrum_distance(const CMat& t, Complex lambda);

/// (T - lambda I)^{-1} for finite lambda; T itself for lambda = inf
/// (the p_inf(z) = z convention). Throws SingularityError when lambda is
/// within 1e-12 * (1 + ||T||) of an eigenvalue.
CMat resolvent(const CMat& t, const ExtComplex& lambda);

/// max over lambda in poles of ||p_lambda(T)||.
double pole_size(const CMat& t, const std::vector<ExtComplex>& poles);

/// f(T) through the pole-residue expansion: c0 I + sum c_j T^j +
/// sum c_{p,j} (T - p I)^{-j}.
CMat eval_on_matrix(const ScalarRational& f, const CMat& t);

/// Quadrature contour: pairwise disjoint circles with orientations.
struct ContourCircle {
  Complex center;
  double radius = 1.0;
  int orientation = 1;  // +1 counterclockwise
};

struct Contour {
  std::vector<ContourCircle> circles;
  int points_per_circle = 512;
};

/// f(T) by the Cauchy integral (1/2*pi*i) \oint f(z) (zI - T)^{-1} dz with
/// composite trapezoid quadrature on each circle. Requires total winding +1
/// around every eigenvalue and 0 around every pole of f.
CMat eval_on_matrix_cauchy(const ScalarRational& f, const CMat& t,
                           const Contour& contour);

/// Same integral with the point count doubled from 512 until two successive
/// results differ by less than 1e-9 (cap 8192). Returns the points used.
std::pair<CMat, int> eval_on_matrix_cauchy_adaptive(
    const ScalarRational& f, const CMat& t,
    const std::vector<ContourCircle>& circles);

/// Block matrix [f_ij(T)], block row i / block column j of size dim(T).
CMat eval_matrix_rational(const MatrixRational& f, const CMat& t);

void require_finite(const CMat& t, const char* where);

}  // namespace specset
