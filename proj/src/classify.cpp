#include "specset/classify.hpp"

#include <algorithm>
#include <cmath>

namespace specset {

namespace {

constexpr double kBoundaryBand = 1e-9;

CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

RVec hermitian_eigenvalues(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("hermitian eigensolver did not converge");
  return solver.eigenvalues();
}

ClassifyReport finish(double margin, double tol) {
  ClassifyReport report;
  report.margin = margin;
  report.tol = tol;
  report.verdict = margin >= -tol;
  report.boundary = std::abs(margin) <= std::max(tol, kBoundaryBand);
  return report;
}

}  // namespace

double default_tol(const CMat& t) { return 1e-9 + 1e-9 * opnorm(t); }

RhoGrid default_rho_grid(double rho, int mu_angles) {
  RhoGrid grid;
  // 32 uniform radii plus a geometric tail toward 1; the positivity
  // condition binds as r -> 1, so the tail controls the grid bias
  for (int i = 1; i <= 32; ++i) grid.radii.push_back(i / 33.0);
  for (int k = 1; k <= 32; ++k) {
    double delta = (1.0 / 33.0) * std::pow(3.3e-6, k / 32.0);
    grid.radii.push_back(1.0 - delta);
  }
  for (int j = 0; j < 256; ++j) grid.angles.push_back(kTwoPi * j / 256.0);
  for (int k = 0; k < 256; ++k)
    grid.tangency.push_back(std::polar(1.0, kTwoPi * k / 256.0));

  double lo, hi;
  if (rho > 1.0 && rho < 2.0) {
    lo = (rho - 1.0) / (2.0 - rho);
    hi = 10.0 * lo + 10.0;
  } else if (rho > 2.0) {
    lo = 1.0 + 1e-4;
    hi = (rho - 1.0) / (rho - 2.0);
  } else {
    lo = 1.0 + 1e-4;
    hi = 10.0;
  }
  for (int i = 0; i < 128; ++i) {
    double modulus = lo * std::pow(hi / lo, i / 127.0);
    for (int j = 0; j < mu_angles; ++j)
      grid.mu_samples.push_back(std::polar(modulus, kTwoPi * j / mu_angles));
  }
  return grid;
}

ClassifyReport is_good_disk(const CMat& t, const GeneralizedDisk& d, double tol) {
  require_finite(t, "is_good_disk");
  const Eigen::Index n = t.rows();
  if (const auto* cd = std::get_if<ClosedDisk>(&d)) {
    double margin = cd->radius - opnorm(t - cd->center * CMat::Identity(n, n));
    ClassifyReport report = finish(margin, tol);
    report.witness = {{"center_re", cd->center.real()},
                      {"center_im", cd->center.imag()},
                      {"radius", cd->radius}};
    return report;
  }
  if (const auto* ed = std::get_if<ExteriorDisk>(&d)) {
    CMat res = resolvent(t, ExtComplex(ed->center));  // throws when a in sigma(T)
    double margin = 1.0 / ed->radius - opnorm(res);
    ClassifyReport report = finish(margin, tol);
    report.witness = {{"center_re", ed->center.real()},
                      {"center_im", ed->center.imag()},
                      {"radius", ed->radius}};
    return report;
  }
  const auto& hp = std::get<HalfPlane>(d);
  CMat shifted = hp.direction * (t - hp.anchor * CMat::Identity(n, n));
  RVec eig = hermitian_eigenvalues(hermitian_part(shifted));
  ClassifyReport report = finish(eig(0), tol);
  report.witness = {{"anchor_re", hp.anchor.real()},
                    {"anchor_im", hp.anchor.imag()},
                    {"min_re_eig", eig(0)}};
  return report;
}

std::vector<Complex> numerical_range_boundary(const CMat& t, int n_angles) {
  require_finite(t, "numerical_range_boundary");
  if (n_angles < 8) throw InvalidInput("numerical_range_boundary: need >= 8 angles");
  std::vector<Complex> out;
  out.reserve(n_angles);
  for (int k = 0; k < n_angles; ++k) {
    double theta = kTwoPi * k / n_angles;
    CMat h = hermitian_part(std::polar(1.0, -theta) * t);
    Eigen::SelfAdjointEigenSolver<CMat> solver(h);
    if (solver.info() != Eigen::Success)
      throw NumericalError("numerical_range_boundary: eigensolver failed");
    CVec x = solver.eigenvectors().col(t.rows() - 1);  // top eigenpair
    out.push_back((x.adjoint() * t * x)(0, 0));
  }
  return out;
}

namespace {

// support function of a convex generalized disk in direction e^{i theta}
double disk_support(const GeneralizedDisk& d, double theta) {
  if (const auto* cd = std::get_if<ClosedDisk>(&d))
    return (std::polar(1.0, -theta) * cd->center).real() + cd->radius;
  if (std::holds_alternative<ExteriorDisk>(d))
    throw InvalidInput("w_contained_in: exterior disks are not convex");
  const auto& hp = std::get<HalfPlane>(d);
  // bounded only opposite the inward normal conj(direction)
  Complex u = std::polar(1.0, theta);
  if (std::abs(u + std::conj(hp.direction)) < 1e-9)
    return -(hp.direction * hp.anchor).real();
  return std::numeric_limits<double>::infinity();
}

}  // namespace

ClassifyReport w_contained_in(const CMat& t, const std::vector<GeneralizedDisk>& region,
                              int n_angles, double tol) {
  require_finite(t, "w_contained_in");
  if (region.empty()) throw InvalidInput("w_contained_in: empty region");
  if (n_angles < 8) throw InvalidInput("w_contained_in: need >= 8 angles");
  double margin = std::numeric_limits<double>::infinity();
  double worst_theta = 0.0;
  for (int k = 0; k < n_angles; ++k) {
    double theta = kTwoPi * k / n_angles;
    CMat h = hermitian_part(std::polar(1.0, -theta) * t);
    RVec eig = hermitian_eigenvalues(h);
    double numeric = eig(eig.size() - 1);
    double support = std::numeric_limits<double>::infinity();
    for (const GeneralizedDisk& d : region)
      support = std::min(support, disk_support(d, theta));
    if (!std::isfinite(support)) continue;
    double slack = support - numeric;
    if (slack < margin) {
      margin = slack;
      worst_theta = theta;
    }
  }
  if (!std::isfinite(margin))
    throw InvalidInput("w_contained_in: region support is unbounded in all directions");
  ClassifyReport report = finish(margin, tol);
  report.witness = {{"theta", worst_theta}};
  report.grid = {{"angles", static_cast<double>(n_angles)}};
  return report;
}

namespace {

// (I - r e^{it} T^*)^{-1} is the adjoint of (I - r e^{-it} T)^{-1}, so one
// solve gives the whole kernel
CMat poisson_kernel_unchecked(const CMat& t, double r, double angle) {
  const Eigen::Index n = t.rows();
  const CMat identity = CMat::Identity(n, n);
  CMat b = (identity - std::polar(r, -angle) * t).partialPivLu().solve(identity);
  return hermitian_part(b + b.adjoint() - identity);
}

}  // namespace

CMat poisson_kernel(const CMat& t, double r, double angle) {
  require_finite(t, "poisson_kernel");
  if (!(r > 0.0 && r < 1.0)) throw InvalidInput("poisson_kernel: need 0 < r < 1");
  if (spectral_radius(t) > 1.0 + 1e-9)
    throw InvalidInput("poisson_kernel: spectrum outside the closed unit disk");
  return poisson_kernel_unchecked(t, r, angle);
}

ClassifyReport is_rho_contraction_poisson(const CMat& t, double rho,
                                          const RhoGrid& grid, double tol) {
  require_finite(t, "is_rho_contraction_poisson");
  if (rho < 1.0) throw InvalidInput("rho must be >= 1");
  if (grid.radii.empty() || grid.angles.empty())
    throw InvalidInput("is_rho_contraction_poisson: empty grid");
  double srad = spectral_radius(t);
  if (srad > 1.0 + tol) {
    ClassifyReport report = finish(1.0 - srad, tol);
    report.witness = {{"spectral_radius", srad}};
    return report;
  }
  const Eigen::Index n = t.rows();
  double margin = std::numeric_limits<double>::infinity();
  double worst_r = 0.0, worst_t = 0.0;
  const CMat shift = (rho - 1.0) * CMat::Identity(n, n);
  for (double r : grid.radii) {
    for (double a : grid.angles) {
      CMat k = poisson_kernel_unchecked(t, r, a) + shift;
      double lambda_min = hermitian_eigenvalues(k)(0);
      if (lambda_min < margin) {
        margin = lambda_min;
        worst_r = r;
        worst_t = a;
      }
    }
  }
  ClassifyReport report = finish(margin, tol);
  report.witness = {{"r", worst_r}, {"t", worst_t}};
  report.grid = {{"radii", static_cast<double>(grid.radii.size())},
                 {"angles", static_cast<double>(grid.angles.size())}};
  return report;
}

ClassifyReport is_rho_contraction_disks(const CMat& t, double rho,
                                        const RhoGrid& grid, double tol) {
  require_finite(t, "is_rho_contraction_disks");
  const Eigen::Index n = t.rows();
  double srad = spectral_radius(t);
  if (srad > 1.0 + tol) {
    ClassifyReport report = finish(1.0 - srad, tol);
    report.witness = {{"spectral_radius", srad}};
    return report;
  }
  if (rho <= 1.0) {
    // direct contraction test
    ClassifyReport report = finish(1.0 - opnorm(t), tol);
    report.witness = {{"norm", opnorm(t)}};
    return report;
  }

  if (rho == 2.0) {
    std::vector<GeneralizedDisk> disk{ClosedDisk{Complex(0, 0), 1.0}};
    int angles = static_cast<int>(std::max<size_t>(grid.angles.size(), 8));
    return w_contained_in(t, disk, angles, tol);
  }

  const CMat identity = CMat::Identity(n, n);
  double margin = std::numeric_limits<double>::infinity();
  Complex worst_mu;
  if (rho < 2.0) {
    double lo = (rho - 1.0) / (2.0 - rho);
    for (Complex mu : grid.mu_samples) {
      if (std::abs(mu) < lo - 1e-12) continue;
      double slack = std::abs(mu) + 1.0 - opnorm(mu * identity - t);
      if (slack < margin) {
        margin = slack;
        worst_mu = mu;
      }
    }
    // the |mu| -> infinity limit of the same inequality is the numerical
    // radius bound 1 - max_theta lambda_max(Re(e^{-i theta} T))
    double w_max = 0.0;
    for (double a : grid.angles) {
      CMat h = hermitian_part(std::polar(1.0, -a) * t);
      RVec eig = hermitian_eigenvalues(h);
      w_max = std::max(w_max, eig(eig.size() - 1));
    }
    if (1.0 - w_max < margin) {
      margin = 1.0 - w_max;
      worst_mu = Complex(std::numeric_limits<double>::infinity(), 0.0);
    }
  } else {
    double hi = (rho - 1.0) / (rho - 2.0);
    // spectral radius <= 1 ensures every |mu| > 1 is off the spectrum
    for (Complex mu : grid.mu_samples) {
      double modulus = std::abs(mu);
      if (modulus <= 1.0 + 1e-12 || modulus > hi + 1e-12) continue;
      CMat res = (t - mu * identity).partialPivLu().solve(identity);
      double slack = 1.0 / (modulus - 1.0) - opnorm(res);
      if (slack < margin) {
        margin = slack;
        worst_mu = mu;
      }
    }
  }
  if (!std::isfinite(margin))
    throw InvalidInput("is_rho_contraction_disks: no usable mu samples in the grid");
  ClassifyReport report = finish(margin, tol);
  report.witness = {{"mu_re", worst_mu.real()}, {"mu_im", worst_mu.imag()}};
  report.grid = {{"mu_samples", static_cast<double>(grid.mu_samples.size())}};
  return report;
}

ClassifyReport rho2_tangent_halfplanes(const CMat& t, const RhoGrid& grid,
                                       double tol) {
  require_finite(t, "rho2_tangent_halfplanes");
  if (grid.tangency.empty())
    throw InvalidInput("rho2_tangent_halfplanes: no tangency points");
  double margin = std::numeric_limits<double>::infinity();
  Complex worst_a;
  for (Complex a : grid.tangency) {
    ClassifyReport half = is_good_disk(t, d_a_rho(a / std::abs(a), 2.0), tol);
    if (half.margin < margin) {
      margin = half.margin;
      worst_a = a;
    }
  }
  ClassifyReport report = finish(margin, tol);
  report.witness = {{"a_re", worst_a.real()}, {"a_im", worst_a.imag()}};
  report.grid = {{"tangency", static_cast<double>(grid.tangency.size())}};
  return report;
}

GeneralizedDisk d_a_rho(Complex a, double rho) {
  if (std::abs(std::abs(a) - 1.0) > 1e-12)
    throw InvalidInput("d_a_rho: tangency point must be unimodular");
  if (!(rho > 1.0)) throw InvalidInput("d_a_rho: need rho > 1");
  if (rho < 2.0) {
    double radius = 1.0 + (rho - 1.0) / (2.0 - rho);
    return ClosedDisk{a * (1.0 - radius), radius};
  }
  if (rho == 2.0) return HalfPlane{a, -std::conj(a)};
  double radius = (rho - 1.0) / (rho - 2.0) - 1.0;
  return ExteriorDisk{a * (1.0 + radius), radius};
}

ResolventBoundReport resolvent_bound_hypotheses(const CMat& t, const PiecewiseCircularDomain& omega,
                                   double tol) {
  require_finite(t, "resolvent_bound_hypotheses");
  if (omega.exterior().empty())
    throw InvalidInput("resolvent_bound_hypotheses: domain carries no exterior-disk data");
  ResolventBoundReport report;
  for (const ExteriorArcData& data : omega.exterior()) {
    ResolventBoundReport::ArcResult arc;
    arc.arc = data.arc_index;
    arc.min_slack = std::numeric_limits<double>::infinity();
    for (const auto& [lambda, mu] : data.centers) {
      double norm = opnorm(resolvent(t, ExtComplex(mu)));  // throws on spectrum hit
      double slack = 1.0 / data.radius - norm;
      if (slack < arc.min_slack) {
        arc.min_slack = slack;
        arc.worst_center = mu;
      }
    }
    arc.pass = arc.min_slack >= -tol;
    if (!arc.pass) report.pass = false;
    report.arcs.push_back(arc);
  }
  CVec eig = eigenvalues(t);
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (!omega.contains(ExtComplex(eig(i)), 1e-9)) {
      report.spectrum_inside = false;
      report.outside_eigenvalues.push_back(eig(i));
    }
  }
  if (!report.spectrum_inside) report.pass = false;
  return report;
}

ClassifyReport is_hyponormal(const CMat& t, double tol) {
  require_finite(t, "is_hyponormal");
  CMat commutator = t.adjoint() * t - t * t.adjoint();
  RVec eig = hermitian_eigenvalues(hermitian_part(commutator));
  ClassifyReport report = finish(eig(0), tol);
  report.witness = {{"min_eig", eig(0)}};
  return report;
}

std::pair<double, double> hyponormal_resolvent_identity(const CMat& t, Complex lambda) {
  double lhs = opnorm(resolvent(t, ExtComplex(lambda)));
  double rhs = 1.0 / spectrum_distance(t, lambda);
  return {lhs, rhs};
}

}  // namespace specset
