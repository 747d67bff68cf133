#include "specset/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specset {

namespace {

constexpr double kChainTol = 1e-9;

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

// ---------------------------------------------------------------------------
// Boundary pieces
// ---------------------------------------------------------------------------

double SegmentPiece::length() const {
  if (unbounded()) return std::numeric_limits<double>::infinity();
  return std::abs(b - a);
}

Complex SegmentPiece::point_at_arclength(double s) const {
  return a + s * dir;
}

double SegmentPiece::distance(Complex z) const {
  Complex rel = z - a;
  double t = (rel * std::conj(dir)).real();
  double t_lo = unbounded_neg ? -std::numeric_limits<double>::infinity() : 0.0;
  double t_hi = unbounded_pos ? std::numeric_limits<double>::infinity()
                              : std::abs(b - a);
  double tc = std::clamp(t, t_lo, t_hi);
  return std::abs(z - (a + tc * dir));
}

double piece_length(const BoundaryPiece& p) {
  if (const auto* arc = std::get_if<CircularArc>(&p)) return arc->length();
  return std::get<SegmentPiece>(p).length();
}

double piece_distance(const BoundaryPiece& p, Complex z) {
  if (const auto* arc = std::get_if<CircularArc>(&p)) return arc->distance(z);
  return std::get<SegmentPiece>(p).distance(z);
}

Complex piece_start(const BoundaryPiece& p) {
  if (const auto* arc = std::get_if<CircularArc>(&p)) return arc->start();
  return std::get<SegmentPiece>(p).a;
}

Complex piece_end(const BoundaryPiece& p) {
  if (const auto* arc = std::get_if<CircularArc>(&p)) return arc->end();
  return std::get<SegmentPiece>(p).b;
}

Complex piece_point_at_arclength(const BoundaryPiece& p, double s) {
  if (const auto* arc = std::get_if<CircularArc>(&p))
    return arc->point_at_arclength(s);
  return std::get<SegmentPiece>(p).point_at_arclength(s);
}

bool piece_unbounded(const BoundaryPiece& p) {
  if (std::holds_alternative<CircularArc>(p)) return false;
  return std::get<SegmentPiece>(p).unbounded();
}

// ---------------------------------------------------------------------------
// PiecewiseCircularDomain
// ---------------------------------------------------------------------------

PiecewiseCircularDomain::PiecewiseCircularDomain(
    std::vector<std::vector<CircularArc>> curves,
    std::vector<ExteriorArcData> exterior,
    std::vector<ExtComplex> complement_points)
    : curves_(std::move(curves)),
      exterior_(std::move(exterior)),
      complement_points_(std::move(complement_points)) {
  if (curves_.empty()) throw InvalidInput("domain: no boundary curves");
  int total_arcs = 0;
  for (const auto& curve : curves_) {
    if (curve.empty()) throw InvalidInput("domain: empty boundary curve");
    total_arcs += static_cast<int>(curve.size());
    for (size_t i = 0; i < curve.size(); ++i) {
      Complex end = curve[i].end();
      Complex next = curve[(i + 1) % curve.size()].start();
      double gap = std::abs(end - next);
      double scale = 1.0 + std::abs(end);
      if (gap > kChainTol * scale)
        throw InvalidInput("domain: boundary curve does not close, gap " +
                           std::to_string(gap) + " after arc " + std::to_string(i));
    }
  }
  std::vector<CircularArc> arcs = all_arcs();
  for (const ExteriorArcData& e : exterior_) {
    if (e.arc_index < 0 || e.arc_index >= total_arcs)
      throw InvalidInput("domain: exterior data references a missing arc");
    if (!(e.radius > 0.0)) throw InvalidInput("domain: exterior radius must be positive");
    for (const auto& [lambda, mu] : e.centers) {
      double err = std::abs(std::abs(lambda - mu) - e.radius);
      if (err > kChainTol * (1.0 + e.radius))
        throw InvalidInput("domain: exterior center at distance error " +
                           std::to_string(err) + " from its radius");
      if (arcs[e.arc_index].distance(lambda) > 1e-6 * (1.0 + std::abs(lambda)))
        throw InvalidInput("domain: exterior sample point off its arc");
    }
  }
}

std::vector<CircularArc> PiecewiseCircularDomain::all_arcs() const {
  std::vector<CircularArc> out;
  for (const auto& curve : curves_)
    out.insert(out.end(), curve.begin(), curve.end());
  return out;
}

double PiecewiseCircularDomain::boundary_distance(Complex z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& curve : curves_)
    for (const CircularArc& arc : curve) d = std::min(d, arc.distance(z));
  return d;
}

std::vector<int> PiecewiseCircularDomain::winding_signature(Complex z) const {
  std::vector<int> out;
  out.reserve(curves_.size());
  for (const auto& curve : curves_) {
    double total = 0.0;
    for (const CircularArc& arc : curve) total += arc.winding_angle(z);
    double turns = total / kTwoPi;
    int rounded = static_cast<int>(std::lround(turns));
    if (std::abs(turns - rounded) > 0.25)
      throw NumericalError("winding_signature: ambiguous winding number");
    out.push_back(rounded);
  }
  return out;
}

bool PiecewiseCircularDomain::contains(const ExtComplex& z,
                                       double boundary_tol) const {
  if (z.is_inf()) return false;
  Complex zz = z.value();
  if (boundary_distance(zz) <= boundary_tol * (1.0 + std::abs(zz))) return true;
  int total = 0;
  for (int w : winding_signature(zz)) total += w;
  return total != 0;
}

double PiecewiseCircularDomain::boundary_length() const {
  double total = 0.0;
  for (const auto& curve : curves_)
    for (const CircularArc& arc : curve) total += arc.length();
  return total;
}

// ---------------------------------------------------------------------------
// DiskIntersection boundary arrangement
// ---------------------------------------------------------------------------

namespace {

struct LineFrame {
  Complex origin;  // a point on the line
  Complex dir;     // unit traversal direction, region on the left
};

LineFrame half_plane_line(const HalfPlane& hp) {
  // left of dir must be the inward normal conj(direction)
  return {hp.anchor, Complex(0, -1) * std::conj(hp.direction)};
}

std::optional<std::pair<Complex, Complex>> circle_circle_points(
    Complex c1, double r1, Complex c2, double r2) {
  double d = std::abs(c2 - c1);
  if (d < 1e-14) return std::nullopt;
  if (d > r1 + r2 || d < std::abs(r1 - r2)) return std::nullopt;
  double a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
  double h2 = r1 * r1 - a * a;
  double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;
  Complex u = (c2 - c1) / d;
  Complex base = c1 + a * u;
  Complex off = h * Complex(0, 1) * u;
  return std::make_pair(base + off, base - off);
}

std::optional<std::pair<Complex, Complex>> circle_line_points(
    Complex c, double r, const LineFrame& line) {
  Complex normal = Complex(0, 1) * line.dir;  // unit normal to the line
  double s = ((c - line.origin) * std::conj(normal)).real();
  if (std::abs(s) > r) return std::nullopt;
  Complex foot = c - s * normal;
  double half = std::sqrt(std::max(0.0, r * r - s * s));
  return std::make_pair(foot + half * line.dir, foot - half * line.dir);
}

// membership of all members except `skip`, lenient on their boundaries
bool inside_others(const std::vector<GeneralizedDisk>& members, size_t skip,
                   Complex z) {
  for (size_t j = 0; j < members.size(); ++j) {
    if (j == skip) continue;
    double scale = 1.0 + std::abs(z);
    if (disk_margin(members[j], z) < -1e-9 * scale) return false;
  }
  return true;
}

}  // namespace

DiskIntersection::DiskIntersection(std::vector<GeneralizedDisk> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw InvalidInput("disk intersection: no members");
  for (const GeneralizedDisk& d : members_) {
    if (const auto* cd = std::get_if<ClosedDisk>(&d)) {
      if (!(cd->radius > 0.0)) throw InvalidInput("disk intersection: radius must be positive");
    } else if (const auto* ed = std::get_if<ExteriorDisk>(&d)) {
      if (!(ed->radius > 0.0)) throw InvalidInput("disk intersection: radius must be positive");
    } else {
      const auto& hp = std::get<HalfPlane>(d);
      if (std::abs(std::abs(hp.direction) - 1.0) > 1e-12)
        throw InvalidInput("disk intersection: half-plane direction must be unimodular");
    }
  }
  build_boundary_();
}

void DiskIntersection::build_boundary_() {
  boundary_.clear();
  bounded_ = true;

  for (size_t i = 0; i < members_.size(); ++i) {
    const GeneralizedDisk& d = members_[i];
    if (const auto* hp = std::get_if<HalfPlane>(&d)) {
      LineFrame line = half_plane_line(*hp);
      std::vector<double> cuts;
      for (size_t j = 0; j < members_.size(); ++j) {
        if (j == i) continue;
        const GeneralizedDisk& other = members_[j];
        if (const auto* ohp = std::get_if<HalfPlane>(&other)) {
          LineFrame lo = half_plane_line(*ohp);
          double cross = (std::conj(line.dir) * lo.dir).imag();
          if (std::abs(cross) < 1e-12) continue;  // parallel
          // solve origin + t dir on the other line
          Complex onorm = Complex(0, 1) * lo.dir;
          double num = ((lo.origin - line.origin) * std::conj(onorm)).real();
          double den = (line.dir * std::conj(onorm)).real();
          cuts.push_back(num / den);
        } else {
          Complex c;
          double r;
          if (const auto* cd = std::get_if<ClosedDisk>(&other)) {
            c = cd->center;
            r = cd->radius;
          } else {
            const auto& ed = std::get<ExteriorDisk>(other);
            c = ed.center;
            r = ed.radius;
          }
          auto pts = circle_line_points(c, r, line);
          if (pts) {
            cuts.push_back(((pts->first - line.origin) * std::conj(line.dir)).real());
            cuts.push_back(((pts->second - line.origin) * std::conj(line.dir)).real());
          }
        }
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-11; }),
                 cuts.end());
      double span = cuts.empty() ? 1.0 : std::max(1.0, cuts.back() - cuts.front());
      if (cuts.empty()) {
        if (inside_others(members_, i, line.origin)) {
          SegmentPiece piece{line.origin - span * line.dir,
                             line.origin + span * line.dir, line.dir, true, true};
          boundary_.push_back(piece);
          bounded_ = false;
        }
        continue;
      }
      // leading ray
      if (inside_others(members_, i,
                        line.origin + (cuts.front() - span) * line.dir)) {
        SegmentPiece piece{line.origin + (cuts.front() - span) * line.dir,
                           line.origin + cuts.front() * line.dir, line.dir, true,
                           false};
        boundary_.push_back(piece);
        bounded_ = false;
      }
      for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        double mid = 0.5 * (cuts[k] + cuts[k + 1]);
        if (!inside_others(members_, i, line.origin + mid * line.dir)) continue;
        boundary_.push_back(SegmentPiece{line.origin + cuts[k] * line.dir,
                                         line.origin + cuts[k + 1] * line.dir,
                                         line.dir, false, false});
      }
      // trailing ray
      if (inside_others(members_, i,
                        line.origin + (cuts.back() + span) * line.dir)) {
        SegmentPiece piece{line.origin + cuts.back() * line.dir,
                           line.origin + (cuts.back() + span) * line.dir,
                           line.dir, false, true};
        boundary_.push_back(piece);
        bounded_ = false;
      }
      continue;
    }

    Complex center;
    double radius;
    int orientation;
    if (const auto* cd = std::get_if<ClosedDisk>(&d)) {
      center = cd->center;
      radius = cd->radius;
      orientation = 1;
    } else {
      const auto& ed = std::get<ExteriorDisk>(d);
      center = ed.center;
      radius = ed.radius;
      orientation = -1;
    }

    std::vector<double> cuts;
    for (size_t j = 0; j < members_.size(); ++j) {
      if (j == i) continue;
      const GeneralizedDisk& other = members_[j];
      std::optional<std::pair<Complex, Complex>> pts;
      if (const auto* ohp = std::get_if<HalfPlane>(&other)) {
        pts = circle_line_points(center, radius, half_plane_line(*ohp));
      } else if (const auto* ocd = std::get_if<ClosedDisk>(&other)) {
        pts = circle_circle_points(center, radius, ocd->center, ocd->radius);
      } else {
        const auto& oed = std::get<ExteriorDisk>(other);
        pts = circle_circle_points(center, radius, oed.center, oed.radius);
      }
      if (pts) {
        cuts.push_back(wrap_angle(std::arg(pts->first - center)));
        cuts.push_back(wrap_angle(std::arg(pts->second - center)));
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-11; }),
               cuts.end());

    if (cuts.empty()) {
      bool keep = true;
      for (int k = 0; k < 8; ++k)
        if (!inside_others(members_, i,
                           center + std::polar(radius, kTwoPi * k / 8.0)))
          keep = false;
      if (keep) {
        CircularArc full{center, radius, 0.0, kTwoPi, 1};
        if (orientation < 0) full = CircularArc{center, radius, kTwoPi, 0.0, -1};
        boundary_.push_back(full);
      }
      continue;
    }

    for (size_t k = 0; k < cuts.size(); ++k) {
      double a0 = cuts[k];
      double a1 = k + 1 < cuts.size() ? cuts[k + 1] : cuts[0] + kTwoPi;
      double mid = 0.5 * (a0 + a1);
      if (!inside_others(members_, i, center + std::polar(radius, mid))) continue;
      if (orientation > 0)
        boundary_.push_back(CircularArc{center, radius, a0, a1, 1});
      else
        boundary_.push_back(CircularArc{center, radius, a1, a0, -1});
    }
  }
}

bool DiskIntersection::contains(const ExtComplex& z, double tol) const {
  for (const GeneralizedDisk& d : members_) {
    if (z.is_inf()) {
      if (!disk_contains(d, z)) return false;
      continue;
    }
    if (disk_margin(d, z.value()) < -tol) return false;
  }
  return true;
}

double DiskIntersection::boundary_distance(Complex z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const BoundaryPiece& p : boundary_) d = std::min(d, piece_distance(p, z));
  return d;
}

std::vector<std::vector<BoundaryPiece>> DiskIntersection::loops() const {
  if (!bounded_)
    throw InvalidInput("boundary: unbounded boundary requires a truncation parameter");
  std::vector<bool> used(boundary_.size(), false);
  std::vector<std::vector<BoundaryPiece>> loops;
  for (;;) {
    int start = -1;
    for (size_t k = 0; k < boundary_.size(); ++k) {
      if (used[k]) continue;
      if (start < 0 ||
          lex_less(piece_start(boundary_[k]), piece_start(boundary_[start])))
        start = static_cast<int>(k);
    }
    if (start < 0) break;
    std::vector<BoundaryPiece> loop;
    int current = start;
    for (;;) {
      used[current] = true;
      loop.push_back(boundary_[current]);
      Complex tip = piece_end(boundary_[current]);
      double scale = 1.0 + std::abs(tip);
      if (std::abs(tip - piece_start(boundary_[start])) <= 10 * kChainTol * scale)
        break;
      int next = -1;
      for (size_t k = 0; k < boundary_.size(); ++k) {
        if (used[k]) continue;
        if (std::abs(piece_start(boundary_[k]) - tip) <= 10 * kChainTol * scale) {
          next = static_cast<int>(k);
          break;
        }
      }
      if (next < 0)
        throw NumericalError("boundary: pieces do not chain into closed loops");
      current = next;
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

PiecewiseCircularDomain DiskIntersection::to_piecewise() const {
  std::vector<std::vector<CircularArc>> curves;
  for (const auto& loop : loops()) {
    std::vector<CircularArc> curve;
    for (const BoundaryPiece& p : loop) {
      const auto* arc = std::get_if<CircularArc>(&p);
      if (!arc)
        throw InvalidInput("to_piecewise: boundary contains straight segments");
      curve.push_back(*arc);
    }
    curves.push_back(std::move(curve));
  }
  std::vector<ExtComplex> complement{ExtComplex::inf()};
  for (const GeneralizedDisk& d : members_)
    if (const auto* ed = std::get_if<ExteriorDisk>(&d))
      complement.emplace_back(ed->center);
  return PiecewiseCircularDomain(std::move(curves), {}, std::move(complement));
}

// ---------------------------------------------------------------------------
// Domain
// ---------------------------------------------------------------------------

Domain Domain::unit_disk() {
  return Domain(DiskIntersection({ClosedDisk{Complex(0, 0), 1.0}}));
}

bool Domain::contains(const ExtComplex& z, double tol) const {
  if (const auto* di = as_disks()) return di->contains(z, tol);
  return as_piecewise()->contains(z, std::max(tol, 1e-12));
}

bool Domain::closure_contains_infinity() const {
  if (const auto* di = as_disks()) return di->contains(ExtComplex::inf());
  return false;
}

double Domain::boundary_distance(Complex z) const {
  if (const auto* di = as_disks()) return di->boundary_distance(z);
  return as_piecewise()->boundary_distance(z);
}

std::vector<Complex> boundary_grid(const Domain& domain, int n) {
  if (n < 1) throw InvalidInput("boundary_grid: need at least one point");
  std::vector<std::vector<BoundaryPiece>> loops;
  if (const auto* di = domain.as_disks()) {
    loops = di->loops();
  } else {
    for (const auto& curve : domain.as_piecewise()->curves()) {
      std::vector<BoundaryPiece> loop;
      for (const CircularArc& arc : curve) loop.emplace_back(arc);
      loops.push_back(std::move(loop));
    }
  }
  if (loops.empty()) throw InvalidInput("boundary_grid: empty boundary");

  std::vector<double> lengths;
  double total = 0.0;
  for (const auto& loop : loops) {
    double len = 0.0;
    for (const BoundaryPiece& p : loop) len += piece_length(p);
    lengths.push_back(len);
    total += len;
  }
  if (!(total > 0.0) || !std::isfinite(total))
    throw InvalidInput("boundary_grid: degenerate boundary length");

  // proportional allocation with largest-remainder rounding
  std::vector<int> counts(loops.size(), 0);
  std::vector<std::pair<double, size_t>> fractions;
  int assigned = 0;
  for (size_t i = 0; i < loops.size(); ++i) {
    double exact = n * lengths[i] / total;
    counts[i] = static_cast<int>(std::floor(exact));
    assigned += counts[i];
    fractions.emplace_back(-(exact - counts[i]), i);
  }
  std::sort(fractions.begin(), fractions.end());
  for (int k = 0; k < n - assigned; ++k) counts[fractions[k].second] += 1;

  std::vector<Complex> out;
  out.reserve(n);
  for (size_t i = 0; i < loops.size(); ++i) {
    if (counts[i] == 0) continue;
    double step = lengths[i] / counts[i];
    size_t piece_idx = 0;
    double piece_begin = 0.0;
    for (int j = 0; j < counts[i]; ++j) {
      double s = j * step;
      while (piece_idx < loops[i].size() &&
             s > piece_begin + piece_length(loops[i][piece_idx]) + 1e-12) {
        piece_begin += piece_length(loops[i][piece_idx]);
        ++piece_idx;
      }
      size_t idx = std::min(piece_idx, loops[i].size() - 1);
      out.push_back(piece_point_at_arclength(loops[i][idx], s - piece_begin));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transversality
// ---------------------------------------------------------------------------

namespace {

bool strictly_inside(const Domain& d, Complex z) {
  return d.contains(ExtComplex(z), 0.0) &&
         d.boundary_distance(z) > 1e-12 * (1.0 + std::abs(z));
}

bool strictly_outside(const Domain& d, Complex z) {
  return !d.contains(ExtComplex(z), 0.0) &&
         d.boundary_distance(z) > 1e-12 * (1.0 + std::abs(z));
}

// angles where the boundary of `d` crosses the circle |z - z0| = r
std::vector<double> boundary_crossings(const Domain& d, Complex z0, double r) {
  const int n = 1440;
  std::vector<bool> in(n);
  for (int k = 0; k < n; ++k)
    in[k] = d.contains(ExtComplex(z0 + std::polar(r, kTwoPi * k / n)), 0.0);
  std::vector<double> out;
  for (int k = 0; k < n; ++k) {
    int k2 = (k + 1) % n;
    if (in[k] == in[k2]) continue;
    double lo = kTwoPi * k / n, hi = kTwoPi * (k + 1) / n;
    for (int it = 0; it < 50; ++it) {
      double mid = 0.5 * (lo + hi);
      bool m = d.contains(ExtComplex(z0 + std::polar(r, mid)), 0.0);
      if (m == in[k])
        lo = mid;
      else
        hi = mid;
    }
    out.push_back(wrap_angle(0.5 * (lo + hi)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double circular_mean(const std::vector<double>& angles) {
  Complex acc(0, 0);
  for (double a : angles) acc += std::polar(1.0, a);
  return wrap_angle(std::arg(acc));
}

double angular_gap(double a, double b) {
  double d = wrap_angle(a - b);
  return std::min(d, kTwoPi - d);
}

struct BoundaryBranches {
  // two boundary branches per domain, each a list of crossing angles over
  // the probe radii
  std::array<std::vector<double>, 2> branch;
  bool valid = false;
};

BoundaryBranches collect_branches(const Domain& d, Complex z0,
                                  const std::vector<double>& radii) {
  BoundaryBranches out;
  std::vector<std::vector<double>> per_radius;
  for (double r : radii) {
    std::vector<double> crossings = boundary_crossings(d, z0, r);
    if (crossings.size() != 2) return out;
    per_radius.push_back(std::move(crossings));
  }
  // assign by proximity to the smallest-radius pair
  const auto& ref = per_radius.back();
  out.branch[0].push_back(ref[0]);
  out.branch[1].push_back(ref[1]);
  for (size_t i = 0; i + 1 < per_radius.size(); ++i) {
    const auto& cur = per_radius[i];
    if (angular_gap(cur[0], ref[0]) + angular_gap(cur[1], ref[1]) <=
        angular_gap(cur[0], ref[1]) + angular_gap(cur[1], ref[0])) {
      out.branch[0].push_back(cur[0]);
      out.branch[1].push_back(cur[1]);
    } else {
      out.branch[0].push_back(cur[1]);
      out.branch[1].push_back(cur[0]);
    }
  }
  out.valid = true;
  return out;
}

Sector centered_sector(Complex vertex, double center_angle, double aperture,
                       double radius) {
  return Sector{vertex, center_angle - aperture / 2.0,
                center_angle + aperture / 2.0, radius};
}

}  // namespace

TransversalityWitness transversal_at(const Domain& omega1, const Domain& omega2,
                                     const ExtComplex& z0, int max_m) {
  static const int kScales[] = {6, 8, 12, 16, 24, 32, 64};
  if (z0.is_inf()) {
    // move the configuration to 0 with z -> 1/z
    const auto* d1 = omega1.as_disks();
    const auto* d2 = omega2.as_disks();
    if (!d1 || !d2)
      throw InvalidInput("transversal_at: infinity requires disk-intersection domains");
    MobiusMap inv{Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)};
    auto transport = [&](const DiskIntersection& di) {
      std::vector<GeneralizedDisk> mapped;
      for (const GeneralizedDisk& d : di.members())
        mapped.push_back(mobius_image(inv, d));
      return DiskIntersection(std::move(mapped));
    };
    return transversal_at(Domain(transport(*d1)), Domain(transport(*d2)),
                          ExtComplex(Complex(0, 0)), max_m);
  }

  Complex center = z0.value();
  double scale = 1.0 + std::abs(center);
  if (omega1.boundary_distance(center) > 1e-9 * scale ||
      omega2.boundary_distance(center) > 1e-9 * scale)
    throw InvalidInput("transversal_at: z0 must lie on both boundaries");

  TransversalityWitness result;
  for (double eps : {5e-2 * scale, 1.25e-2 * scale, 3.125e-3 * scale}) {
    std::vector<double> radii{eps, eps / 2.0, eps / 4.0, eps / 8.0};
    BoundaryBranches b1 = collect_branches(omega1, center, radii);
    BoundaryBranches b2 = collect_branches(omega2, center, radii);
    if (!b1.valid || !b2.valid) continue;

    // accumulation of the open intersection at z0
    bool accumulates = true;
    for (double r : {eps * 0.8, eps * 0.4, eps * 0.2, eps * 0.1, eps * 0.05}) {
      bool found = false;
      for (int k = 0; k < 720 && !found; ++k) {
        Complex z = center + std::polar(r, kTwoPi * k / 720.0);
        if (strictly_inside(omega1, z) && strictly_inside(omega2, z)) found = true;
      }
      if (!found) {
        accumulates = false;
        break;
      }
    }
    if (!accumulates) {
      result.note = "open intersection does not accumulate at z0";
      continue;
    }

    std::array<double, 4> centers{circular_mean(b1.branch[0]),
                                  circular_mean(b1.branch[1]),
                                  circular_mean(b2.branch[0]),
                                  circular_mean(b2.branch[1])};
    std::array<double, 4> spreads{};
    for (int i = 0; i < 4; ++i) {
      const auto& br = (i < 2 ? b1 : b2).branch[i % 2];
      double worst = 0.0;
      for (double a : br) worst = std::max(worst, angular_gap(a, centers[i]));
      spreads[i] = worst;
    }

    for (int m : kScales) {
      if (m > max_m) break;
      double aperture = kTwoPi / m;
      bool fits = true;
      for (int i = 0; i < 4; ++i)
        if (spreads[i] > 0.4 * aperture) fits = false;
      if (!fits) continue;

      std::array<Sector, 4> boundary_sectors;
      for (int i = 0; i < 4; ++i)
        boundary_sectors[i] = centered_sector(center, centers[i], aperture, eps);
      bool disjoint = true;
      for (int i = 0; i < 4 && disjoint; ++i)
        for (int j = i + 1; j < 4 && disjoint; ++j)
          if (!sectors_disjoint(boundary_sectors[i], boundary_sectors[j]))
            disjoint = false;
      if (!disjoint) continue;

      // search the free-sector placement
      for (int s = 0; s < 720; ++s) {
        Sector s0{center, kTwoPi * s / 720.0, kTwoPi * s / 720.0 + aperture, eps};
        bool ok = true;
        for (const Sector& bs : boundary_sectors)
          if (!sectors_disjoint(s0, bs)) ok = false;
        if (!ok) continue;
        for (int ri = 0; ri < 4 && ok; ++ri) {
          double r = eps * std::pow(0.5, ri) * 0.9;
          for (int k = 0; k < 6 && ok; ++k) {
            double ang = s0.angle_lo + aperture * (k + 0.5) / 6.0;
            Complex z = center + std::polar(r, ang);
            if (!strictly_outside(omega1, z) || !strictly_outside(omega2, z))
              ok = false;
          }
        }
        if (!ok) continue;

        result.transversal = true;
        result.aperture_m = m;
        result.sectors = {s0, boundary_sectors[0], boundary_sectors[1],
                          boundary_sectors[2], boundary_sectors[3]};
        result.note = "transversal with aperture 2*pi/" + std::to_string(m);
        return result;
      }
    }
    result.note = "no admissible five-sector configuration at resolution m <= " +
                  std::to_string(max_m);
  }
  if (result.note.empty())
    result.note = "boundary structure near z0 not resolved into two branches";
  return result;
}

// ---------------------------------------------------------------------------
// Exterior disk condition / Condition A
// ---------------------------------------------------------------------------

namespace {

double domain_clearance(const PiecewiseCircularDomain& omega, Complex mu) {
  if (omega.contains(ExtComplex(mu))) return 0.0;
  return omega.boundary_distance(mu);
}

}  // namespace

ExteriorDiskReport exterior_disk_condition(const PiecewiseCircularDomain& omega,
                                           double radius, int samples_per_arc) {
  if (!(radius > 0.0)) throw InvalidInput("exterior_disk_condition: radius must be positive");
  if (samples_per_arc < 2) throw InvalidInput("exterior_disk_condition: need >= 2 samples");
  ExteriorDiskReport report;
  std::vector<CircularArc> arcs = omega.all_arcs();
  const double tol = 1e-9 * (1.0 + radius);

  for (const CircularArc& arc : arcs) {
    for (int k = 0; k < samples_per_arc; ++k) {
      double t = arc.extent() * k / (samples_per_arc - 1);
      double theta = arc.from + arc.orientation * t;
      Complex lambda = arc.point_at_angle(theta);

      std::vector<Complex> normals{arc.outward_normal_at(theta)};
      if (k == 0 || k == samples_per_arc - 1) {
        // corner point: also try the neighbour's normal and the bisector
        for (const CircularArc& other : arcs) {
          if (&other == &arc) continue;
          double os = std::abs(other.start() - lambda);
          double oe = std::abs(other.end() - lambda);
          if (std::min(os, oe) > 1e-9 * (1.0 + std::abs(lambda))) continue;
          double otheta = std::arg(lambda - other.center);
          Complex n2 = other.outward_normal_at(otheta);
          normals.push_back(n2);
          Complex bis = normals[0] + n2;
          if (std::abs(bis) > 1e-9) normals.push_back(bis / std::abs(bis));
        }
      }

      double best = -std::numeric_limits<double>::infinity();
      Complex best_mu;
      for (Complex n : normals) {
        Complex mu = lambda + radius * n;
        double clearance = domain_clearance(omega, mu) - radius;
        if (clearance > best) {
          best = clearance;
          best_mu = mu;
        }
      }
      report.witness_centers.emplace_back(lambda, best_mu);
      if (best < report.worst_clearance) {
        report.worst_clearance = best;
        report.worst_lambda = lambda;
      }
      if (best < -tol) report.pass = false;
    }
  }
  return report;
}

std::pair<Complex, double> smallest_enclosing_circle(
    const std::vector<Complex>& pts) {
  if (pts.empty()) throw InvalidInput("smallest_enclosing_circle: no points");

  auto circle_from2 = [](Complex a, Complex b) {
    return std::make_pair(0.5 * (a + b), 0.5 * std::abs(a - b));
  };
  auto circle_from3 = [](Complex a, Complex b,
                         Complex c) -> std::optional<std::pair<Complex, double>> {
    Complex ab = b - a, ac = c - a;
    double d = 2.0 * (ab.real() * ac.imag() - ab.imag() * ac.real());
    if (std::abs(d) < 1e-14) return std::nullopt;
    double ux = (ac.imag() * std::norm(ab) - ab.imag() * std::norm(ac)) / d;
    double uy = (ab.real() * std::norm(ac) - ac.real() * std::norm(ab)) / d;
    Complex center = a + Complex(ux, uy);
    return std::make_pair(center, std::abs(center - a));
  };
  auto inside = [](const std::pair<Complex, double>& circ, Complex p) {
    return std::abs(p - circ.first) <= circ.second * (1.0 + 1e-12) + 1e-14;
  };

  std::pair<Complex, double> best{pts[0], 0.0};
  for (size_t i = 1; i < pts.size(); ++i) {
    if (inside(best, pts[i])) continue;
    best = {pts[i], 0.0};
    for (size_t j = 0; j < i; ++j) {
      if (inside(best, pts[j])) continue;
      best = circle_from2(pts[i], pts[j]);
      for (size_t k = 0; k < j; ++k) {
        if (inside(best, pts[k])) continue;
        auto c3 = circle_from3(pts[i], pts[j], pts[k]);
        if (c3)
          best = *c3;
        else
          best = circle_from2(pts[i], pts[k]);
      }
    }
  }
  return best;
}

ConditionAReport condition_A_check(const PiecewiseCircularDomain& omega) {
  if (omega.exterior().empty())
    throw InvalidInput("condition_A_check: domain carries no exterior-disk data");
  ConditionAReport report;
  std::vector<CircularArc> arcs = omega.all_arcs();

  for (const ExteriorArcData& data : omega.exterior()) {
    ConditionAReport::ArcClause clause;
    clause.arc = data.arc_index;
    if (data.centers.empty())
      throw InvalidInput("condition_A_check: arc without center samples");
    double tol = 1e-9 * (1.0 + data.radius);
    clause.worst_clearance = std::numeric_limits<double>::infinity();
    std::vector<Complex> centers;
    for (const auto& [lambda, mu] : data.centers) {
      centers.push_back(mu);
      clause.worst_touch_error =
          std::max(clause.worst_touch_error,
                   std::abs(std::abs(lambda - mu) - data.radius));
      double clearance = domain_clearance(omega, mu) - data.radius;
      clause.worst_clearance = std::min(clause.worst_clearance, clearance);
    }
    clause.touches = clause.worst_touch_error <= tol && clause.worst_clearance >= -tol;
    auto enclosing = smallest_enclosing_circle(centers);
    clause.enclosing_radius = enclosing.second;
    clause.common_intersection = enclosing.second <= data.radius + tol;
    if (!clause.touches || !clause.common_intersection) report.pass = false;
    report.arcs.push_back(clause);
  }

  // endpoint transversality for consecutive arcs in each curve
  int base = 0;
  for (const auto& curve : omega.curves()) {
    int n = static_cast<int>(curve.size());
    for (int i = 0; i < n; ++i) {
      const CircularArc& a = curve[i];
      const CircularArc& b = curve[(i + 1) % n];
      if (n == 1) continue;  // a full closed circle: no corners
      ConditionAReport::CornerClause corner;
      corner.arc_a = base + i;
      corner.arc_b = base + (i + 1) % n;
      corner.corner = a.end();
      // tangent directions leaving the corner along each arc
      double ta = a.from + a.orientation * a.extent();
      Complex dir_a = -static_cast<double>(a.orientation) * Complex(0, 1) *
                      std::polar(1.0, ta);
      Complex dir_b = static_cast<double>(b.orientation) * Complex(0, 1) *
                      std::polar(1.0, b.from);
      corner.angle = angular_gap(std::arg(dir_a), std::arg(dir_b));
      double min_aperture = kTwoPi / 64.0;
      if (corner.angle < min_aperture) {
        corner.transversal = false;
        report.pass = false;
      } else {
        double aperture = std::min(corner.angle * 0.8, kTwoPi / 8.0);
        double reach = 0.1 * std::min(a.length(), b.length());
        Sector sa = centered_sector(corner.corner, std::arg(dir_a), aperture, reach * 2);
        Sector sb = centered_sector(corner.corner, std::arg(dir_b), aperture, reach * 2);
        corner.transversal = sectors_disjoint(sa, sb);
        for (double h : {reach / 8.0, reach / 4.0, reach / 2.0, reach}) {
          Complex pa = a.point_at_arclength(a.length() - h);
          Complex pb = b.point_at_arclength(h);
          if (!sa.contains(pa) || !sb.contains(pb)) corner.transversal = false;
        }
        corner.sectors = {sa, sb};
        if (!corner.transversal) report.pass = false;
      }
      report.corners.push_back(corner);
    }
    base += n;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Pole sets
// ---------------------------------------------------------------------------

namespace {

bool outside_closure(const Domain& omega, const ExtComplex& z) {
  if (z.is_inf()) return !omega.closure_contains_infinity();
  Complex zz = z.value();
  if (omega.contains(z, 0.0)) return false;
  return omega.boundary_distance(zz) > 1e-12 * (1.0 + std::abs(zz));
}

bool segment_outside(const Domain& omega, Complex a, Complex b) {
  for (int k = 0; k <= 64; ++k) {
    Complex z = a + (b - a) * (k / 64.0);
    if (!outside_closure(omega, ExtComplex(z))) return false;
  }
  return true;
}

bool ray_reaches_far(const Domain& omega, Complex from, Complex centroid,
                     double reach) {
  Complex dir = from - centroid;
  if (std::abs(dir) < 1e-9) dir = Complex(1, 0);
  dir /= std::abs(dir);
  for (int k = 1; k <= 64; ++k) {
    Complex z = from + dir * (reach * k / 64.0);
    if (!outside_closure(omega, ExtComplex(z))) return false;
  }
  return true;
}

}  // namespace

bool pole_set_valid(const std::vector<ExtComplex>& poles, const Domain& omega) {
  if (poles.empty()) return false;
  for (const ExtComplex& lambda : poles)
    if (!outside_closure(omega, lambda)) return false;

  if (const auto* pc = omega.as_piecewise()) {
    std::vector<ExtComplex> reps = pc->complement_points();
    if (reps.empty()) reps.push_back(ExtComplex::inf());
    auto signature = [&](const ExtComplex& z) -> std::vector<int> {
      if (z.is_inf())
        return std::vector<int>(pc->curves().size(), 0);
      return pc->winding_signature(z.value());
    };
    for (const ExtComplex& rep : reps) {
      std::vector<int> rep_sig = signature(rep);
      bool covered = false;
      for (const ExtComplex& lambda : poles)
        if (signature(lambda) == rep_sig) covered = true;
      if (!covered) return false;
    }
    return true;
  }

  const DiskIntersection& di = *omega.as_disks();
  Complex centroid(0, 0);
  double geom_scale = 1.0;
  for (const GeneralizedDisk& d : di.members()) {
    if (const auto* cd = std::get_if<ClosedDisk>(&d)) {
      centroid += cd->center;
      geom_scale = std::max(geom_scale, std::abs(cd->center) + cd->radius);
    } else if (const auto* ed = std::get_if<ExteriorDisk>(&d)) {
      centroid += ed->center;
      geom_scale = std::max(geom_scale, std::abs(ed->center) + ed->radius);
    } else {
      const auto& hp = std::get<HalfPlane>(d);
      centroid += hp.anchor;
      geom_scale = std::max(geom_scale, std::abs(hp.anchor) + 1.0);
    }
  }
  centroid /= static_cast<double>(di.members().size());
  double reach = 20.0 * geom_scale;

  // candidate component representatives
  struct Rep {
    ExtComplex point;
    bool merged = false;
  };
  std::vector<Rep> reps;
  bool inf_outside = !di.contains(ExtComplex::inf());
  if (inf_outside) reps.push_back({ExtComplex::inf()});
  for (const GeneralizedDisk& d : di.members()) {
    if (const auto* ed = std::get_if<ExteriorDisk>(&d))
      reps.push_back({ExtComplex(ed->center)});
    if (const auto* hp = std::get_if<HalfPlane>(&d)) {
      Complex far = hp->anchor - std::conj(hp->direction) * reach / 2.0;
      if (outside_closure(omega, ExtComplex(far))) reps.push_back({ExtComplex(far)});
    }
  }
  if (reps.empty()) return false;  // closure covers the sphere complement probes

  // merge representatives that are provably in the same component
  auto connected = [&](const ExtComplex& a, const ExtComplex& b) {
    if (a.is_inf() && b.is_inf()) return true;
    if (a.is_inf()) return ray_reaches_far(omega, b.value(), centroid, reach);
    if (b.is_inf()) return ray_reaches_far(omega, a.value(), centroid, reach);
    return segment_outside(omega, a.value(), b.value());
  };
  std::vector<std::vector<ExtComplex>> components;
  for (const Rep& rep : reps) {
    bool placed = false;
    for (auto& comp : components) {
      if (connected(comp.front(), rep.point)) {
        comp.push_back(rep.point);
        placed = true;
        break;
      }
    }
    if (!placed) components.push_back({rep.point});
  }

  for (const auto& comp : components) {
    bool covered = false;
    for (const ExtComplex& lambda : poles) {
      for (const ExtComplex& member : comp) {
        if (connected(member, lambda)) {
          covered = true;
          break;
        }
      }
      if (covered) break;
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace specset
