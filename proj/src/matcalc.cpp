#include "specset/matcalc.hpp"

#include <algorithm>
#include <cmath>

namespace specset {

void require_finite(const CMat& t, const char* where) {
  if (t.rows() != t.cols())
    throw InvalidInput(std::string(where) + ": matrix must be square");
  if (!t.allFinite())
    throw InvalidInput(std::string(where) + ": non-finite matrix entries");
}

double opnorm(const CMat& t) {
  require_finite(t, "opnorm");
  if (t.rows() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(t);
  return svd.singularValues()(0);
}

CVec eigenvalues(const CMat& t) {
  require_finite(t, "eigenvalues");
  Eigen::ComplexEigenSolver<CMat> solver(t, false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigenvalues: solver did not converge");
  return solver.eigenvalues();
}

double spectral_radius(const CMat& t) {
  CVec eig = eigenvalues(t);
  double r = 0.0;
  for (Eigen::Index i = 0; i < eig.size(); ++i)
    r = std::max(r, std::abs(eig(i)));
  return r;
}

double spectrum_distance(const CMat& t, Complex lambda) {
  CVec eig = eigenvalues(t);
  double d = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eig.size(); ++i)
    d = std::min(d, std::abs(eig(i) - lambda));
  return d;
}

namespace {

// pole-proximity guard threshold; evaluation nearer than this to the
// spectrum is an error rather than a huge-norm result
double singularity_guard(const CMat& t) { return 1e-12 * (1.0 + opnorm(t)); }

CMat resolvent_unchecked(const CMat& t, Complex lambda) {
  const Eigen::Index n = t.rows();
  CMat shifted = t - lambda * CMat::Identity(n, n);
  return shifted.fullPivLu().solve(CMat::Identity(n, n));
}

}  // namespace

CMat resolvent(const CMat& t, const ExtComplex& lambda) {
  require_finite(t, "resolvent");
  if (lambda.is_inf()) return t;
  if (spectrum_distance(t, lambda.value()) <= singularity_guard(t))
    throw SingularityError("resolvent: lambda within guard distance of the spectrum");
  return resolvent_unchecked(t, lambda.value());
}

double pole_size(const CMat& t, const std::vector<ExtComplex>& poles) {
  if (poles.empty()) throw InvalidInput("pole_size: empty pole set");
  double worst = 0.0;
  for (const ExtComplex& lambda : poles)
    worst = std::max(worst, opnorm(resolvent(t, lambda)));
  return worst;
}

CMat eval_on_matrix(const ScalarRational& f, const CMat& t) {
  require_finite(t, "eval_on_matrix");
  const Eigen::Index n = t.rows();
  const double guard = singularity_guard(t);
  for (const auto& [p, m] : f.finite_poles())
    if (spectrum_distance(t, p) <= guard)
      throw SingularityError("eval_on_matrix: pole on the spectrum");

  CMat acc = f.constant() * CMat::Identity(n, n);

  int inf_power = f.infinity_power();
  if (inf_power > 0) {
    CMat power = CMat::Identity(n, n);
    for (int j = 1; j <= inf_power; ++j) {
      power = power * t;
      for (const PoleTerm& term : f.terms())
        if (term.pole.is_inf() && term.power == j) acc += term.coeff * power;
    }
  }

  for (const auto& [p, max_pow] : f.finite_poles()) {
    CMat res = resolvent_unchecked(t, p);
    CMat power = CMat::Identity(n, n);
    for (int j = 1; j <= max_pow; ++j) {
      power = power * res;
      for (const PoleTerm& term : f.terms())
        if (!term.pole.is_inf() && term.pole.value() == p && term.power == j)
          acc += term.coeff * power;
    }
  }
  return acc;
}

namespace {

int circle_winding(const ContourCircle& c, Complex z) {
  return std::abs(z - c.center) < c.radius ? c.orientation : 0;
}

void validate_contour(const Contour& contour, const CMat& t,
                      const ScalarRational& f) {
  if (contour.circles.empty())
    throw InvalidInput("cauchy: contour has no circles");
  if (contour.points_per_circle < 64)
    throw InvalidInput("cauchy: need at least 64 quadrature points per circle");
  for (size_t i = 0; i < contour.circles.size(); ++i) {
    const auto& a = contour.circles[i];
    if (!(a.radius > 0.0)) throw InvalidInput("cauchy: circle radius must be positive");
    for (size_t j = i + 1; j < contour.circles.size(); ++j) {
      const auto& b = contour.circles[j];
      double d = std::abs(a.center - b.center);
      if (d < a.radius + b.radius && d > std::abs(a.radius - b.radius))
        throw InvalidInput("cauchy: contour circles intersect");
    }
  }
  CVec eig = eigenvalues(t);
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    int winding = 0;
    for (const auto& c : contour.circles) {
      if (std::abs(std::abs(eig(i) - c.center) - c.radius) < 1e-6)
        throw SingularityError("cauchy: contour passes within 1e-6 of an eigenvalue");
      winding += circle_winding(c, eig(i));
    }
    if (winding != 1)
      throw InvalidInput("cauchy: contour must enclose the spectrum once with positive winding");
  }
  for (const auto& [p, m] : f.finite_poles()) {
    int winding = 0;
    for (const auto& c : contour.circles) winding += circle_winding(c, p);
    if (winding != 0) throw InvalidInput("cauchy: pole of f enclosed by the contour");
  }
}

CMat cauchy_quadrature(const ScalarRational& f, const CMat& t,
                       const Contour& contour) {
  const Eigen::Index n = t.rows();
  const CMat identity = CMat::Identity(n, n);
  CMat acc = CMat::Zero(n, n);
  for (const auto& c : contour.circles) {
    const int npts = contour.points_per_circle;
    CMat circle_sum = CMat::Zero(n, n);
    for (int k = 0; k < npts; ++k) {
      double theta = kTwoPi * k / npts;
      Complex unit = std::polar(1.0, theta);
      Complex zeta = c.center + c.radius * unit;
      CMat res = (zeta * identity - t).fullPivLu().solve(identity);
      circle_sum += (f.eval(zeta) * unit) * res;
    }
    acc += (c.radius * static_cast<double>(c.orientation) / npts) * circle_sum;
  }
  return acc;
}

}  // namespace

CMat eval_on_matrix_cauchy(const ScalarRational& f, const CMat& t,
                           const Contour& contour) {
  require_finite(t, "eval_on_matrix_cauchy");
  validate_contour(contour, t, f);
  return cauchy_quadrature(f, t, contour);
}

std::pair<CMat, int> eval_on_matrix_cauchy_adaptive(
    const ScalarRational& f, const CMat& t,
    const std::vector<ContourCircle>& circles) {
  Contour contour{circles, 512};
  validate_contour(contour, t, f);
  CMat prev = cauchy_quadrature(f, t, contour);
  while (contour.points_per_circle < 8192) {
    contour.points_per_circle *= 2;
    CMat next = cauchy_quadrature(f, t, contour);
    if (opnorm(next - prev) < 1e-9) return {next, contour.points_per_circle};
    prev = next;
  }
  return {prev, contour.points_per_circle};
}

CMat eval_matrix_rational(const MatrixRational& f, const CMat& t) {
  require_finite(t, "eval_matrix_rational");
  const int s = f.size();
  const Eigen::Index n = t.rows();
  CMat out(s * n, s * n);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      out.block(i * n, j * n, n, n) = eval_on_matrix(f.at(i, j), t);
  return out;
}

}  // namespace specset
