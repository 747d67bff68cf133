#include "specset/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "specset/matcalc.hpp"

namespace specset {

double wrap_angle(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

GeneralizedDisk make_half_plane(Complex anchor, Complex direction) {
  double n = std::abs(direction);
  if (n < 1e-12) throw InvalidInput("half plane: zero direction");
  return HalfPlane{anchor, direction / n};
}

bool disk_contains(const GeneralizedDisk& d, const ExtComplex& z) {
  if (z.is_inf()) return !std::holds_alternative<ClosedDisk>(d);
  return disk_margin(d, z.value()) >= 0.0;
}

double disk_margin(const GeneralizedDisk& d, Complex z) {
  if (const auto* cd = std::get_if<ClosedDisk>(&d))
    return cd->radius - std::abs(z - cd->center);
  if (const auto* ed = std::get_if<ExteriorDisk>(&d))
    return std::abs(z - ed->center) - ed->radius;
  const auto& hp = std::get<HalfPlane>(d);
  return (hp.direction * (z - hp.anchor)).real();
}

ExtComplex disk_interior_point(const GeneralizedDisk& d) {
  if (const auto* cd = std::get_if<ClosedDisk>(&d)) return ExtComplex(cd->center);
  if (std::get_if<ExteriorDisk>(&d)) return ExtComplex::inf();
  const auto& hp = std::get<HalfPlane>(d);
  return ExtComplex(hp.anchor + std::conj(hp.direction));
}

std::string disk_kind(const GeneralizedDisk& d) {
  if (std::holds_alternative<ClosedDisk>(d)) return "closed";
  if (std::holds_alternative<ExteriorDisk>(d)) return "exterior";
  return "halfplane";
}

bool disk_subset(const GeneralizedDisk& d1, const GeneralizedDisk& d2,
                 double tol) {
  if (const auto* a = std::get_if<ClosedDisk>(&d1)) {
    if (const auto* b = std::get_if<ClosedDisk>(&d2))
      return std::abs(a->center - b->center) <= b->radius - a->radius + tol;
    if (const auto* b = std::get_if<ExteriorDisk>(&d2))
      return std::abs(a->center - b->center) >= a->radius + b->radius - tol;
    const auto& b = std::get<HalfPlane>(d2);
    return (b.direction * (a->center - b.anchor)).real() >= a->radius - tol;
  }
  if (const auto* a = std::get_if<ExteriorDisk>(&d1)) {
    // the exterior contains infinity and every direction at large radius,
    // so only another exterior disk can contain it
    if (const auto* b = std::get_if<ExteriorDisk>(&d2))
      return std::abs(a->center - b->center) <= a->radius - b->radius + tol;
    return false;
  }
  const auto& a = std::get<HalfPlane>(d1);
  if (const auto* b = std::get_if<ExteriorDisk>(&d2))
    return (a.direction * (b->center - a.anchor)).real() <= -(b->radius) + tol;
  if (const auto* b = std::get_if<HalfPlane>(&d2)) {
    if (std::abs(a.direction - b->direction) > 1e-9) return false;
    return (b->direction * (a.anchor - b->anchor)).real() >= -tol;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Mobius maps
// ---------------------------------------------------------------------------

void validate_mobius(const MobiusMap& m) {
  double scale = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
  if (scale == 0.0 || std::abs(m.det()) < 1e-12 * scale * scale)
    throw InvalidInput("mobius map: degenerate coefficients");
}

bool MobiusMap::is_affine() const {
  double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  return std::abs(c) <= 1e-15 * scale;
}

ExtComplex MobiusMap::operator()(const ExtComplex& z) const {
  validate_mobius(*this);
  if (z.is_inf()) {
    if (is_affine()) return ExtComplex::inf();
    return ExtComplex(a / c);
  }
  Complex zz = z.value();
  Complex denom = c * zz + d;
  Complex numer = a * zz + b;
  if (std::abs(denom) <= 1e-15 * (1.0 + std::abs(numer))) return ExtComplex::inf();
  return ExtComplex(numer / denom);
}

MobiusMap MobiusMap::inverse() const {
  validate_mobius(*this);
  return MobiusMap{d, -b, -c, a};
}

ExtComplex MobiusMap::pole() const {
  if (is_affine()) return ExtComplex::inf();
  return ExtComplex(-d / c);
}

MobiusMap MobiusMap::compose(const MobiusMap& f, const MobiusMap& g) {
  return MobiusMap{f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
                   f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d};
}

namespace {

GeneralizedDisk affine_image(Complex alpha, Complex beta,
                             const GeneralizedDisk& d) {
  if (std::abs(alpha) < 1e-300) throw InvalidInput("mobius_image: degenerate map");
  if (const auto* cd = std::get_if<ClosedDisk>(&d))
    return ClosedDisk{alpha * cd->center + beta, std::abs(alpha) * cd->radius};
  if (const auto* ed = std::get_if<ExteriorDisk>(&d))
    return ExteriorDisk{alpha * ed->center + beta, std::abs(alpha) * ed->radius};
  const auto& hp = std::get<HalfPlane>(d);
  Complex dir = hp.direction * std::conj(alpha) / std::abs(alpha);
  return HalfPlane{alpha * hp.anchor + beta, dir};
}

// image under z -> 1/z
GeneralizedDisk inversion_image(const GeneralizedDisk& d) {
  if (const auto* cd = std::get_if<ClosedDisk>(&d)) {
    Complex a = cd->center;
    double r = cd->radius;
    double s = std::abs(a) - r;  // origin outside when s > 0
    double on_tol = 1e-12 * (1.0 + std::abs(a) + r);
    if (std::abs(s) <= on_tol) {
      // boundary through the origin: image is the half-plane Re(a u) >= 1/2
      Complex alpha = a / std::abs(a);
      Complex anchor = std::conj(a) / (2.0 * std::norm(a));
      return HalfPlane{anchor, alpha};
    }
    double denom = std::norm(a) - r * r;
    Complex center = std::conj(a) / denom;
    double radius = r / std::abs(denom);
    if (s > 0.0) return ClosedDisk{center, radius};
    return ExteriorDisk{center, radius};
  }
  if (const auto* ed = std::get_if<ExteriorDisk>(&d)) {
    Complex a = ed->center;
    double r = ed->radius;
    double s = std::abs(a) - r;
    double on_tol = 1e-12 * (1.0 + std::abs(a) + r);
    if (std::abs(s) <= on_tol) {
      Complex alpha = -a / std::abs(a);
      Complex anchor = std::conj(a) / (2.0 * std::norm(a));
      return HalfPlane{anchor, alpha};
    }
    double denom = std::norm(a) - r * r;
    Complex center = std::conj(a) / denom;
    double radius = r / std::abs(denom);
    if (s > 0.0) return ExteriorDisk{center, radius};
    return ClosedDisk{center, radius};
  }
  const auto& hp = std::get<HalfPlane>(d);
  // line {Re(alpha z) = h}, region {Re(alpha z) >= h}
  Complex alpha = hp.direction;
  double h = (alpha * hp.anchor).real();
  double on_tol = 1e-12 * (1.0 + std::abs(hp.anchor));
  if (std::abs(h) <= on_tol) {
    // line through the origin maps to a line through the origin
    Complex dir = std::conj(alpha);
    // pick the side by a mapped interior sample
    Complex zi = hp.anchor + std::conj(alpha);
    if (std::abs(zi) < 1e-9) zi = hp.anchor + 2.0 * std::conj(alpha);
    Complex wi = 1.0 / zi;
    if ((dir * wi).real() < 0.0) dir = -dir;
    return HalfPlane{Complex(0.0, 0.0), dir};
  }
  Complex center = std::conj(alpha) / (2.0 * h);
  double radius = 1.0 / (2.0 * std::abs(h));
  if (h > 0.0) return ClosedDisk{center, radius};
  return ExteriorDisk{center, radius};
}

double image_boundary_error(const GeneralizedDisk& image, const ExtComplex& w) {
  if (w.is_inf())
    return std::holds_alternative<HalfPlane>(image) ? 0.0
                                                    : std::numeric_limits<double>::infinity();
  Complex z = w.value();
  if (const auto* cd = std::get_if<ClosedDisk>(&image))
    return std::abs(std::abs(z - cd->center) - cd->radius) /
           (1.0 + std::abs(z) + cd->radius);
  if (const auto* ed = std::get_if<ExteriorDisk>(&image))
    return std::abs(std::abs(z - ed->center) - ed->radius) /
           (1.0 + std::abs(z) + ed->radius);
  const auto& hp = std::get<HalfPlane>(image);
  return std::abs((hp.direction * (z - hp.anchor)).real()) / (1.0 + std::abs(z));
}

std::vector<ExtComplex> boundary_samples(const GeneralizedDisk& d, int n) {
  std::vector<ExtComplex> out;
  out.reserve(n);
  if (const auto* cd = std::get_if<ClosedDisk>(&d)) {
    for (int k = 0; k < n; ++k)
      out.emplace_back(cd->center + std::polar(cd->radius, kTwoPi * k / n));
    return out;
  }
  if (const auto* ed = std::get_if<ExteriorDisk>(&d)) {
    for (int k = 0; k < n; ++k)
      out.emplace_back(ed->center + std::polar(ed->radius, kTwoPi * k / n));
    return out;
  }
  const auto& hp = std::get<HalfPlane>(d);
  Complex tangent = Complex(0, 1) * std::conj(hp.direction);
  for (int k = 0; k < n; ++k) {
    double t = std::tan(kPi * ((k + 0.5) / n - 0.5));
    out.emplace_back(hp.anchor + t * tangent);
  }
  return out;
}

}  // namespace

GeneralizedDisk mobius_image(const MobiusMap& m, const GeneralizedDisk& d) {
  validate_mobius(m);
  GeneralizedDisk image;
  if (m.is_affine()) {
    image = affine_image(m.a / m.d, m.b / m.d, d);
  } else {
    // (az+b)/(cz+d) = a/c + ((bc-ad)/c) * 1/(cz+d)
    GeneralizedDisk pre = affine_image(m.c, m.d, d);
    GeneralizedDisk inv = inversion_image(pre);
    Complex scale = (m.b * m.c - m.a * m.d) / m.c;
    image = affine_image(scale, m.a / m.c, inv);
  }
  // cross-check by boundary sampling
  double worst = 0.0;
  for (const ExtComplex& z : boundary_samples(d, 64)) {
    double err = image_boundary_error(image, m(z));
    worst = std::max(worst, err);
  }
  if (worst > 1e-9)
    throw NumericalError("mobius_image: boundary check failed (error " +
                         std::to_string(worst) + ")");
  return image;
}

MobiusMap canonical_map_to_unit_disk(const GeneralizedDisk& d) {
  if (const auto* cd = std::get_if<ClosedDisk>(&d))
    return MobiusMap{Complex(1, 0), -cd->center, Complex(0, 0), Complex(cd->radius, 0)};
  if (const auto* ed = std::get_if<ExteriorDisk>(&d))
    return MobiusMap{Complex(0, 0), Complex(ed->radius, 0), Complex(1, 0), -ed->center};
  // w = direction * (z - anchor) to the right half-plane, then (1 - w)/(1 + w)
  const auto& hp = std::get<HalfPlane>(d);
  Complex al = hp.direction;
  return MobiusMap{-al, Complex(1, 0) + al * hp.anchor, al,
                   Complex(1, 0) - al * hp.anchor};
}

CMat mobius_apply_matrix(const MobiusMap& m, const CMat& t) {
  validate_mobius(m);
  require_finite(t, "mobius_apply_matrix");
  const Eigen::Index n = t.rows();
  CMat numer = m.a * t + m.b * CMat::Identity(n, n);
  if (m.is_affine()) return numer / m.d;
  ExtComplex pole = m.pole();
  if (spectrum_distance(t, pole.value()) <= 1e-12 * (1.0 + opnorm(t)))
    throw SingularityError("mobius_apply_matrix: map pole on the spectrum");
  CMat denom = m.c * t + m.d * CMat::Identity(n, n);
  // numerator and denominator commute, so D^{-1} N = N D^{-1}
  return denom.fullPivLu().solve(numer);
}

// ---------------------------------------------------------------------------
// Sectors and arcs
// ---------------------------------------------------------------------------

bool Sector::contains(Complex z) const {
  Complex rel = z - vertex;
  double dist = std::abs(rel);
  if (dist <= 0.0 || dist >= radius) return false;
  double offset = wrap_angle(std::arg(rel) - angle_lo);
  return offset > 0.0 && offset < aperture();
}

bool sectors_disjoint(const Sector& s1, const Sector& s2) {
  // angular windows on the circle, compared mod 2*pi
  double start = wrap_angle(s2.angle_lo - s1.angle_lo);
  double end = start + s2.aperture();
  if (start < s1.aperture()) return false;
  return end <= kTwoPi;
}

double CircularArc::extent() const {
  double raw = orientation >= 0 ? to - from : from - to;
  double w = std::fmod(raw, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w == 0.0) w = kTwoPi;  // a full circle
  return w;
}

Complex CircularArc::point_at_angle(double theta) const {
  return center + std::polar(radius, theta);
}

Complex CircularArc::end() const {
  return point_at_angle(from + orientation * extent());
}

Complex CircularArc::point_at_arclength(double s) const {
  return point_at_angle(from + orientation * (s / radius));
}

Complex CircularArc::outward_normal_at(double theta) const {
  return static_cast<double>(orientation) * std::polar(1.0, theta);
}

bool CircularArc::angle_on_arc(double theta, double tol) const {
  double offset = orientation >= 0 ? theta - from : from - theta;
  double w = std::fmod(offset, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w <= extent() + tol || w >= kTwoPi - tol;
}

double CircularArc::distance(Complex z) const {
  Complex rel = z - center;
  double d = std::abs(rel);
  if (d < 1e-300) return radius;
  double theta = std::arg(rel);
  if (angle_on_arc(theta)) return std::abs(d - radius);
  return std::min(std::abs(z - start()), std::abs(z - end()));
}

namespace {

double arc_arg_change(const CircularArc& arc, double t0, double t1, Complex z,
                      int depth) {
  Complex u0 = arc.point_at_angle(t0) - z;
  Complex u1 = arc.point_at_angle(t1) - z;
  if (std::abs(u0) < 1e-300 || std::abs(u1) < 1e-300)
    throw NumericalError("winding_angle: point on the arc");
  double d = std::arg(u1 / u0);
  if (depth >= 48) return d;
  if (std::abs(t1 - t0) <= kPi / 4.0 && std::abs(d) < kPi / 2.0) return d;
  double mid = 0.5 * (t0 + t1);
  return arc_arg_change(arc, t0, mid, z, depth + 1) +
         arc_arg_change(arc, mid, t1, z, depth + 1);
}

}  // namespace

double CircularArc::winding_angle(Complex z) const {
  double t0 = from;
  double t1 = from + orientation * extent();
  return arc_arg_change(*this, t0, t1, z, 0);
}

}  // namespace specset
