#include "specset/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "specset/classify.hpp"

namespace specset {

namespace {

// the num/den representation avoids the cancellation the pole-residue form
// hits near a high-order zero
Complex fd_derivative(const ScalarRational& f, Complex z, double h = 1e-5) {
  return (f.eval_num_den(z + h) - f.eval_num_den(z - h)) / (2.0 * h);
}

ScalarRational blaschke_square(Complex z0) {
  Poly lin{-z0, Complex(1, 0)};
  Poly den_lin{Complex(1, 0), -std::conj(z0)};
  Poly num = poly_mul(lin, lin);
  Poly den = poly_mul(den_lin, den_lin);
  if (std::abs(z0) < 1e-14) return ScalarRational::polynomial(num);
  Complex pole = 1.0 / std::conj(z0);
  return ScalarRational::from_num_den(num, den, {{pole, 2}});
}

}  // namespace

// ---------------------------------------------------------------------------
// Mascioni pair
// ---------------------------------------------------------------------------

MascioniPair mascioni_pair(double n) {
  if (!(n > 0.0)) throw InvalidInput("mascioni_pair: n must be positive");
  MascioniPair item;
  item.n = n;
  item.t = CMat::Zero(2, 2);
  item.t(0, 1) = n;
  return item;
}

GalleryOutcome MascioniPair::check(std::uint64_t seed) const {
  GalleryOutcome out;
  double vanish = opnorm(blaschke_on_matrix(phi, t));
  out.add("phi(T_n) = 0", vanish <= 1e-12, vanish, 1e-12);

  Domain disk = Domain::unit_disk();
  MatrixRational idz = MatrixRational::scalar(
      ScalarRational::polynomial(Poly{Complex(0, 0), Complex(1, 0)}));
  double ratio = vn_ratio(idz, t, disk, 512);
  out.add("vn_ratio(z, T_n) = n", std::abs(ratio - n) <= 1e-9 * (1.0 + n), ratio, n);

  SearchConfig cfg;
  cfg.degree = 3;
  cfg.seed = seed;
  cfg.restarts = 4;
  SearchResult res = k_lower_bound(t, disk, {ExtComplex::inf()}, cfg);
  out.add("k_lower_bound >= n - 1e-6", res.k_lower >= n - 1e-6, res.k_lower, n - 1e-6);
  return out;
}

// ---------------------------------------------------------------------------
// Derivative-zero family
// ---------------------------------------------------------------------------

DerivativeZeroFamily derivative_zero_family(Complex z0, int n, const CVec& nu) {
  if (std::abs(z0) > 10.0) throw InvalidInput("derivative_zero_family: |z0| > 10");
  if (n < 1) throw InvalidInput("derivative_zero_family: n must be >= 1");
  if (nu.size() != 2 || nu.norm() == 0.0)
    throw InvalidInput("derivative_zero_family: need a nonzero direction in C^2");
  DerivativeZeroFamily item;
  item.z0 = z0;
  item.n = n;
  CVec u(2);
  u << -std::conj(nu(1)), std::conj(nu(0));  // orthogonal to nu
  item.nilpotent = nu * u.adjoint();
  item.t_base = z0 * CMat::Identity(2, 2) + item.nilpotent;
  item.t_n = z0 * CMat::Identity(2, 2) + double(n) * item.nilpotent;
  return item;
}

GalleryOutcome DerivativeZeroFamily::check() const {
  GalleryOutcome out;
  double nil = opnorm(nilpotent * nilpotent);
  out.add("N^2 = 0", nil <= 1e-12, nil, 1e-12);

  // f(z) = (z - z0)^2 annihilates every member of the family
  ScalarRational square = ScalarRational::polynomial(
      poly_mul(Poly{-z0, Complex(1, 0)}, Poly{-z0, Complex(1, 0)}));
  double killed = opnorm(eval_on_matrix(square, t_n));
  out.add("(z - z0)^2 at T_n vanishes", killed <= 1e-10, killed, 1e-10);

  double growth = opnorm(t_n - z0 * CMat::Identity(2, 2));
  double expected = n * opnorm(nilpotent);
  out.add("||T_n - z0|| = n ||N||", std::abs(growth - expected) <= 1e-10 * expected,
          growth, expected);

  if (std::abs(z0) < 1.0 - 1e-6) {
    // the Blaschke-square with critical point z0, derivative checked by
    // finite differences before use
    ScalarRational phi = blaschke_square(z0);
    double deriv = std::abs(fd_derivative(phi, z0));
    out.add("phi'(z0) = 0 (finite differences)", deriv <= 1e-8, deriv, 1e-8);
    CMat value = eval_on_matrix(phi, t_n);
    double freeze = opnorm(value - phi.eval(z0) * CMat::Identity(2, 2));
    out.add("phi(T_n) = phi(z0) I", freeze <= 1e-10, freeze, 1e-10);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Eigenvector angle example
// ---------------------------------------------------------------------------

namespace {

CMat angle_operator(Complex z1, Complex z2, double angle) {
  CMat v(2, 2);
  v << Complex(1, 0), Complex(std::cos(angle), 0), Complex(0, 0),
      Complex(std::sin(angle), 0);
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = z1;
  d(1, 1) = z2;
  return v * d * v.inverse();
}

}  // namespace

EigenvectorAngleExample eigenvector_angle_example(Complex z1, Complex z2,
                                                  double angle) {
  if (z1 == z2) throw InvalidInput("eigenvector_angle_example: need z1 != z2");
  if (!(angle > 0.0 && angle <= kPi / 2.0))
    throw InvalidInput("eigenvector_angle_example: angle must lie in (0, pi/2]");
  EigenvectorAngleExample item;
  item.z1 = z1;
  item.z2 = z2;
  item.angle = angle;
  item.t = angle_operator(z1, z2, angle);
  return item;
}

GalleryOutcome EigenvectorAngleExample::check() const {
  GalleryOutcome out;
  CVec expected(2);
  expected << z1, z2;
  double spec_err = 0.0;
  {
    CVec eig = eigenvalues(t);
    double direct = std::max(std::abs(eig(0) - z1), std::abs(eig(1) - z2));
    double swapped = std::max(std::abs(eig(0) - z2), std::abs(eig(1) - z1));
    spec_err = std::min(direct, swapped);
  }
  out.add("spectrum is {z1, z2}", spec_err <= 1e-10, spec_err, 1e-10);

  for (double a : {0.1, 0.01, 0.001}) {
    double norm = opnorm(angle_operator(z1, z2, a));
    double bound = std::abs(z1 - z2) / (2.0 * std::tan(a));
    out.add("||T|| >= |z1-z2| / (2 tan angle) at angle " + std::to_string(a),
            norm >= bound, norm, bound);
  }

  double normal_norm = opnorm(angle_operator(z1, z2, kPi / 2.0));
  double expected_norm = std::max(std::abs(z1), std::abs(z2));
  out.add("orthogonal eigenvectors give a normal operator",
          std::abs(normal_norm - expected_norm) <= 1e-10 * (1.0 + expected_norm),
          normal_norm, expected_norm);
  return out;
}

// ---------------------------------------------------------------------------
// Three-disk admissible example
// ---------------------------------------------------------------------------

ThreeDiskExample three_disk_admissible(double eps) {
  if (!(eps > 0.0 && eps <= 0.1))
    throw InvalidInput("three_disk_admissible: eps must lie in (0, 0.1]");
  ThreeDiskExample item{
      eps,
      {Complex(0, 0), Complex(eps, 0), Complex(eps / 2.0, std::sqrt(3.0) * eps / 2.0)},
      Complex(eps / 2.0, std::sqrt(3.0) * eps / 6.0),
      DiskIntersection({ClosedDisk{Complex(0, 0), 1.0},
                        ClosedDisk{Complex(eps, 0), 1.0},
                        ClosedDisk{Complex(eps / 2.0, std::sqrt(3.0) * eps / 2.0), 1.0}}),
      {},
      {},
      {},
      {}};

  for (const BoundaryPiece& piece : item.domain.boundary()) {
    const auto* arc = std::get_if<CircularArc>(&piece);
    if (!arc) throw NumericalError("three_disk_admissible: unexpected segment");
    item.boundary_arcs.push_back(*arc);
  }
  if (item.boundary_arcs.size() != 3)
    throw NumericalError("three_disk_admissible: expected three boundary arcs");
  for (int k = 0; k < 3; ++k) {
    bool found = false;
    for (size_t i = 0; i < item.boundary_arcs.size(); ++i) {
      if (std::abs(item.boundary_arcs[i].center - item.vertices[k]) < 1e-9) {
        item.arc_for_vertex[k] = static_cast<int>(i);
        found = true;
      }
    }
    if (!found) throw NumericalError("three_disk_admissible: arc for a vertex missing");
  }

  // rigid motions about z0 taking vertex k to vertex 1: the +-2*pi/3
  // rotations about the centroid
  Complex w_plus = std::polar(1.0, kTwoPi / 3.0);
  Complex w_minus = std::conj(w_plus);
  item.eta[0] = MobiusMap::identity();
  item.eta[1] = MobiusMap{w_minus, item.z0 * (1.0 - w_minus), Complex(0, 0), Complex(1, 0)};
  item.eta[2] = MobiusMap{w_plus, item.z0 * (1.0 - w_plus), Complex(0, 0), Complex(1, 0)};
  for (int k = 1; k < 3; ++k) {
    Complex mapped = item.eta[k](ExtComplex(item.vertices[k])).value();
    if (std::abs(mapped - item.vertices[0]) > 1e-12)
      throw NumericalError("three_disk_admissible: rigid motion misses the base vertex");
  }

  ScalarRational phi1 = blaschke_square(item.z0);
  item.phi[0] = phi1;
  item.phi[1] = phi1.compose_affine(w_minus, item.z0 * (1.0 - w_minus));
  item.phi[2] = phi1.compose_affine(w_plus, item.z0 * (1.0 - w_plus));
  return item;
}

GalleryOutcome ThreeDiskExample::check() const {
  GalleryOutcome out;
  for (int k = 1; k < 3; ++k) {
    double fix = std::abs(eta[k](ExtComplex(z0)).value() - z0);
    out.add("eta_" + std::to_string(k + 1) + " fixes z0", fix <= 1e-12, fix, 1e-12);
    double vertex = std::abs(eta[k](ExtComplex(vertices[k])).value() - vertices[0]);
    out.add("eta_" + std::to_string(k + 1) + " maps its vertex to z1",
            vertex <= 1e-12, vertex, 1e-12);
  }

  for (int k = 0; k < 3; ++k) {
    const CircularArc& jk = boundary_arcs[arc_for_vertex[k]];
    double worst_mod = 0.0;
    for (int i = 0; i < 64; ++i) {
      double s = jk.length() * (i + 0.5) / 64.0;
      Complex z = jk.point_at_arclength(s);
      worst_mod = std::max(worst_mod, std::abs(std::abs(phi[k].eval(z)) - 1.0));
    }
    out.add("|phi_" + std::to_string(k + 1) + "| = 1 on J_k", worst_mod <= 1e-10,
            worst_mod, 1e-10);

    double deriv = std::abs(fd_derivative(phi[k], z0));
    out.add("phi_" + std::to_string(k + 1) + "'(z0) = 0", deriv <= 1e-8, deriv, 1e-8);

    // strictly inside on interior samples
    double interior_max = 0.0;
    for (int i = 0; i < 16; ++i) {
      Complex z = z0 + std::polar(0.5, kTwoPi * i / 16.0);
      if (!domain.contains(ExtComplex(z))) continue;
      interior_max = std::max(interior_max, std::abs(phi[k].eval(z)));
    }
    interior_max = std::max(interior_max, std::abs(phi[k].eval(z0)));
    out.add("|phi_" + std::to_string(k + 1) + "| < 1 inside", interior_max < 1.0,
            interior_max, 1.0);

    // admissibility surrogate: the derivative stays away from zero on J_k
    // away from the corners
    double min_deriv = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 10; ++i) {
      Complex z = jk.point_at_arclength(jk.length() * i / 10.0);
      min_deriv = std::min(min_deriv, std::abs(fd_derivative(phi[k], z)));
    }
    out.add("|phi_" + std::to_string(k + 1) + "'| >= 1e-3 on J_k", min_deriv >= 1e-3,
            min_deriv, 1e-3);

    double len_bound = std::max(0.1, 3.0 * eps);
    out.add("arc length of J_k near 2*pi/3",
            std::abs(jk.length() - kTwoPi / 3.0) <= len_bound, jk.length(),
            kTwoPi / 3.0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Douglas-Paulsen domains
// ---------------------------------------------------------------------------

DouglasPaulsenDomain douglas_paulsen_domain(
    double outer_radius, std::vector<std::pair<Complex, double>> holes) {
  if (!(outer_radius > 0.0))
    throw InvalidInput("douglas_paulsen_domain: outer radius must be positive");
  for (size_t i = 0; i < holes.size(); ++i) {
    const auto& [c, r] = holes[i];
    if (!(r > 0.0) || std::abs(c) + r >= outer_radius)
      throw InvalidInput("douglas_paulsen_domain: hole leaves the outer disk");
    for (size_t j = i + 1; j < holes.size(); ++j)
      if (std::abs(c - holes[j].first) <= r + holes[j].second)
        throw InvalidInput("douglas_paulsen_domain: holes overlap");
  }

  std::vector<GeneralizedDisk> members{ClosedDisk{Complex(0, 0), outer_radius}};
  for (const auto& [c, r] : holes) members.push_back(ExteriorDisk{c, r});

  DouglasPaulsenDomain item{outer_radius, holes, DiskIntersection(members), {}, {}};
  item.complements.push_back(ClosedDisk{Complex(0, 0), outer_radius});
  item.phi.push_back(ScalarRational::polynomial(
      Poly{Complex(0, 0), Complex(1.0 / outer_radius, 0)}));
  for (const auto& [c, r] : holes) {
    item.complements.push_back(ExteriorDisk{c, r});
    item.phi.push_back(ScalarRational::pole_power(ExtComplex(c), 1, Complex(r, 0)));
  }
  return item;
}

GalleryOutcome DouglasPaulsenDomain::check(std::uint64_t seed) const {
  GalleryOutcome out;
  Domain dom(domain);

  // the coordinate maps send the domain into the closed disk
  std::vector<Complex> samples = boundary_grid(dom, 128);
  samples.push_back(Complex(0.5 * (outer_radius +
                                   (holes.empty() ? 0.0
                                                  : std::abs(holes[0].first) +
                                                        holes[0].second)),
                            0.0));
  double worst = 0.0;
  for (size_t k = 0; k < phi.size(); ++k)
    for (Complex z : samples)
      if (domain.contains(ExtComplex(z), 1e-9))
        worst = std::max(worst, std::abs(phi[k].eval(z)) - 1.0);
  out.add("all phi_k map the domain into the closed disk", worst <= 1e-9, worst, 1e-9);

  std::vector<ExtComplex> poles{ExtComplex::inf()};
  for (const auto& [c, r] : holes) poles.emplace_back(c);
  out.add("hole centers with infinity form a valid pole set",
          pole_set_valid(poles, dom), 1.0, 1.0);

  // a normal operator with spectrum in the domain makes every complement
  // a good disk, matching the contraction property of phi_k(T)
  std::mt19937_64 rng(seed + 0x5eedULL);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  CMat t = CMat::Zero(4, 4);
  int placed = 0;
  while (placed < 4) {
    double lo = holes.empty() ? 0.0 : std::abs(holes[0].first) + holes[0].second;
    std::uniform_real_distribution<double> rad(lo + 0.05 * outer_radius,
                                               0.95 * outer_radius);
    Complex z = std::polar(rad(rng), ang(rng));
    if (!domain.contains(ExtComplex(z), 0.0)) continue;
    if (domain.boundary_distance(z) < 0.02 * outer_radius) continue;
    t(placed, placed) = z;
    ++placed;
  }
  bool all_good = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (const GeneralizedDisk& x : complements) {
    ClassifyReport report = is_good_disk(t, x, 1e-9);
    all_good = all_good && report.verdict;
    worst_margin = std::min(worst_margin, report.margin);
  }
  out.add("every complement X_k is a good disk for a sampled normal T",
          all_good, worst_margin, 0.0);
  double phi_worst = 0.0;
  for (const ScalarRational& f : phi)
    phi_worst = std::max(phi_worst, opnorm(eval_on_matrix(f, t)));
  out.add("phi_k(T) are contractions", phi_worst <= 1.0 + 1e-9, phi_worst, 1.0);
  return out;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

std::vector<std::string> gallery_names() {
  return {"mascioni", "derivative-zero", "eigenvector-angle", "three-disk",
          "douglas-paulsen"};
}

std::string gallery_describe(const std::string& name) {
  if (name == "mascioni")
    return "nilpotent pair [[0,n],[0,0]] with z^2: disk K-spectral only for K >= n";
  if (name == "derivative-zero")
    return "T_n = z0 + nN family frozen by functions with a critical point at z0";
  if (name == "eigenvector-angle")
    return "two eigenvalues with closing eigenvector angle: norm blows up";
  if (name == "three-disk")
    return "three unit disks at a small triangle with the Blaschke-square family";
  if (name == "douglas-paulsen")
    return "holed circular domain with canonical complement coordinates";
  throw InvalidInput("gallery: unknown item '" + name + "'");
}

GalleryOutcome gallery_run(const std::string& name, std::uint64_t seed) {
  if (name == "mascioni") return mascioni_pair(4.0).check(seed);
  if (name == "derivative-zero") {
    ThreeDiskExample geometry = three_disk_admissible(0.05);
    CVec nu(2);
    nu << Complex(1, 0), Complex(0, 0);
    return derivative_zero_family(geometry.z0, 10, nu).check();
  }
  if (name == "eigenvector-angle")
    return eigenvector_angle_example(Complex(0, 0), Complex(1, 0), 0.01).check();
  if (name == "three-disk") return three_disk_admissible(0.05).check();
  if (name == "douglas-paulsen")
    return douglas_paulsen_domain(1.0, {{Complex(0, 0), 0.5}}).check(seed);
  throw InvalidInput("gallery: unknown item '" + name + "'");
}

}  // namespace specset
