#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specset/domain.hpp"
#include "specset/geometry.hpp"
#include "test_util.hpp"

using namespace specset;
using testing::Rng;

namespace {

GeneralizedDisk unit_closed() { return ClosedDisk{Complex(0, 0), 1.0}; }

MobiusMap random_mobius(Rng& rng) {
  for (;;) {
    MobiusMap m{testing::random_complex(rng), testing::random_complex(rng),
                testing::random_complex(rng), testing::random_complex(rng)};
    if (std::abs(m.det()) > 0.2) return m;
  }
}

GeneralizedDisk random_disk(Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> rad(0.3, 2.5);
  switch (kind(rng)) {
    case 0:
      return ClosedDisk{testing::random_complex(rng), rad(rng)};
    case 1:
      return ExteriorDisk{testing::random_complex(rng), rad(rng)};
    default: {
      Complex dir = std::polar(1.0, std::uniform_real_distribution<double>(0, kTwoPi)(rng));
      return HalfPlane{testing::random_complex(rng), dir};
    }
  }
}

}  // namespace

TEST_CASE("disk membership conventions") {
  CHECK(disk_contains(unit_closed(), ExtComplex(Complex(0, 0))));
  CHECK(!disk_contains(unit_closed(), ExtComplex::inf()));
  CHECK(disk_contains(ExteriorDisk{Complex(0, 0), 1.0}, ExtComplex::inf()));
  CHECK(disk_contains(make_half_plane(Complex(0, 0), Complex(1, 0)), ExtComplex::inf()));
  CHECK(!disk_contains(make_half_plane(Complex(0, 0), Complex(1, 0)),
                       ExtComplex(Complex(-0.1, 0))));
}

TEST_CASE("mobius_image spec values") {
  MobiusMap inv{Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)};
  GeneralizedDisk image = mobius_image(inv, ExteriorDisk{Complex(0, 0), 1.0});
  const auto* cd = std::get_if<ClosedDisk>(&image);
  REQUIRE(cd != nullptr);
  CHECK(std::abs(cd->center) < 1e-12);
  CHECK(cd->radius == doctest::Approx(1.0).epsilon(1e-12));

  // (1 - z)/(1 + z) maps the right half-plane onto the unit disk
  MobiusMap cayley{Complex(-1, 0), Complex(1, 0), Complex(1, 0), Complex(1, 0)};
  image = mobius_image(cayley, make_half_plane(Complex(0, 0), Complex(1, 0)));
  cd = std::get_if<ClosedDisk>(&image);
  REQUIRE(cd != nullptr);
  CHECK(std::abs(cd->center) < 1e-12);
  CHECK(cd->radius == doctest::Approx(1.0).epsilon(1e-12));

  // (z - a)/r on ClosedDisk(a, r)
  MobiusMap scale{Complex(1, 0), Complex(-2, 0), Complex(0, 0), Complex(3, 0)};
  image = mobius_image(scale, ClosedDisk{Complex(2, 0), 3.0});
  cd = std::get_if<ClosedDisk>(&image);
  REQUIRE(cd != nullptr);
  CHECK(std::abs(cd->center) < 1e-12);
  CHECK(cd->radius == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("canonical maps take every variant onto the unit disk") {
  GeneralizedDisk cases[] = {ClosedDisk{Complex(2, 0), 3.0},
                             ExteriorDisk{Complex(0, 0), 1.0},
                             make_half_plane(Complex(0, 0), Complex(1, 0)),
                             ClosedDisk{Complex(-1, 4), 0.5},
                             ExteriorDisk{Complex(3, -2), 2.0},
                             make_half_plane(Complex(1, 1), Complex(0, -1))};
  for (const GeneralizedDisk& d : cases) {
    MobiusMap psi = canonical_map_to_unit_disk(d);
    GeneralizedDisk image = mobius_image(psi, d);
    const auto* cd = std::get_if<ClosedDisk>(&image);
    REQUIRE(cd != nullptr);
    CHECK(std::abs(cd->center) < 1e-9);
    CHECK(cd->radius == doctest::Approx(1.0).epsilon(1e-9));
  }

  // the specific maps from the construction
  MobiusMap m1 = canonical_map_to_unit_disk(ClosedDisk{Complex(2, 0), 3.0});
  CHECK(std::abs(m1(ExtComplex(Complex(5, 0))).value() - Complex(1, 0)) < 1e-12);
  MobiusMap m2 = canonical_map_to_unit_disk(ExteriorDisk{Complex(0, 0), 1.0});
  CHECK(std::abs(m2(ExtComplex(Complex(2, 0))).value() - Complex(0.5, 0)) < 1e-12);
  MobiusMap m3 = canonical_map_to_unit_disk(make_half_plane(Complex(0, 0), Complex(1, 0)));
  CHECK(std::abs(m3(ExtComplex(Complex(1, 0))).value()) < 1e-12);
}

TEST_CASE("mobius composition transports disks consistently") {
  Rng rng(41);
  int done = 0;
  for (int rep = 0; rep < 200 && done < 100; ++rep) {
    MobiusMap f = random_mobius(rng), g = random_mobius(rng);
    GeneralizedDisk d = random_disk(rng);
    GeneralizedDisk via_compose, via_steps;
    try {
      via_compose = mobius_image(MobiusMap::compose(f, g), d);
      via_steps = mobius_image(f, mobius_image(g, d));
    } catch (const NumericalError&) {
      continue;  // pole nearly on the boundary: skip the ill-conditioned draw
    }
    ++done;
    // compare by sampling the boundary of the two images
    REQUIRE(disk_kind(via_compose) == disk_kind(via_steps));
    for (int k = 0; k < 16; ++k) {
      Complex probe = testing::random_complex(rng, 2.0);
      double m1 = disk_margin(via_compose, probe);
      double m2 = disk_margin(via_steps, probe);
      CHECK(std::abs(m1 - m2) < 1e-6 * (1.0 + std::abs(m1)));
    }
  }
  CHECK(done >= 100);
}

TEST_CASE("disk_subset covers the variant table") {
  CHECK(disk_subset(ClosedDisk{Complex(0, 0), 1.0}, ClosedDisk{Complex(0.5, 0), 2.0}));
  CHECK(!disk_subset(ClosedDisk{Complex(0, 0), 1.0}, ClosedDisk{Complex(3, 0), 1.5}));
  CHECK(disk_subset(ClosedDisk{Complex(0, 0), 1.0}, ExteriorDisk{Complex(5, 0), 2.0}));
  CHECK(disk_subset(ClosedDisk{Complex(2, 0), 1.0},
                    make_half_plane(Complex(0, 0), Complex(1, 0))));
  CHECK(!disk_subset(ClosedDisk{Complex(0.5, 0), 1.0},
                     make_half_plane(Complex(0, 0), Complex(1, 0))));
  CHECK(disk_subset(ExteriorDisk{Complex(0, 0), 2.0}, ExteriorDisk{Complex(0.5, 0), 1.0}));
  CHECK(!disk_subset(ExteriorDisk{Complex(0, 0), 1.0}, ClosedDisk{Complex(0, 0), 5.0}));
  CHECK(disk_subset(make_half_plane(Complex(3, 0), Complex(1, 0)),
                    ExteriorDisk{Complex(0, 0), 2.0}));
  CHECK(disk_subset(make_half_plane(Complex(1, 0), Complex(1, 0)),
                    make_half_plane(Complex(0, 0), Complex(1, 0))));
  CHECK(!disk_subset(make_half_plane(Complex(0, 0), Complex(1, 0)),
                     make_half_plane(Complex(1, 0), Complex(1, 0))));
}

TEST_CASE("boundary_grid spec values") {
  Domain disk = Domain::unit_disk();
  std::vector<Complex> pts = boundary_grid(disk, 4);
  REQUIRE(pts.size() == 4);
  CHECK(std::abs(pts[0] - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(pts[1] - Complex(0, 1)) < 1e-12);
  CHECK(std::abs(pts[2] - Complex(-1, 0)) < 1e-12);
  CHECK(std::abs(pts[3] - Complex(0, -1)) < 1e-12);

  // lens: every grid point satisfies both disk inequalities, one with equality
  DiskIntersection lens({ClosedDisk{Complex(0, 0), 1.25}, ClosedDisk{Complex(1, 0), 1.25}});
  std::vector<Complex> lens_pts = boundary_grid(Domain(lens), 100);
  REQUIRE(lens_pts.size() == 100);
  for (Complex z : lens_pts) {
    double m1 = disk_margin(ClosedDisk{Complex(0, 0), 1.25}, z);
    double m2 = disk_margin(ClosedDisk{Complex(1, 0), 1.25}, z);
    CHECK(m1 >= -1e-9);
    CHECK(m2 >= -1e-9);
    CHECK(std::min(std::abs(m1), std::abs(m2)) < 1e-9);
  }

  // half-plane boundary is unbounded
  DiskIntersection half({make_half_plane(Complex(0, 0), Complex(1, 0))});
  CHECK_THROWS_AS(boundary_grid(Domain(half), 8), InvalidInput);
}

TEST_CASE("disk intersection membership and boundary") {
  DiskIntersection annulus({ClosedDisk{Complex(0, 0), 1.0},
                            ExteriorDisk{Complex(0, 0), 0.5}});
  CHECK(annulus.contains(ExtComplex(Complex(0.7, 0))));
  CHECK(!annulus.contains(ExtComplex(Complex(0.2, 0))));
  CHECK(!annulus.contains(ExtComplex(Complex(1.2, 0))));
  CHECK(!annulus.contains(ExtComplex::inf()));
  CHECK(annulus.boundary_distance(Complex(0.7, 0)) == doctest::Approx(0.2).epsilon(1e-9));

  auto loops = annulus.loops();
  CHECK(loops.size() == 2);

  PiecewiseCircularDomain pc = annulus.to_piecewise();
  CHECK(pc.contains(ExtComplex(Complex(0.7, 0))));
  CHECK(!pc.contains(ExtComplex(Complex(0.2, 0))));
  CHECK(pc.boundary_length() == doctest::Approx(kTwoPi * 1.5).epsilon(1e-9));
}

TEST_CASE("piecewise domain validates closure and exterior data") {
  CircularArc open_arc{Complex(0, 0), 1.0, 0.0, kPi, 1};
  CHECK_THROWS_AS(PiecewiseCircularDomain({{open_arc}}), InvalidInput);

  CircularArc circle{Complex(0, 0), 1.0, 0.0, kTwoPi, 1};
  ExteriorArcData bad{0, 1.0, {{Complex(1, 0), Complex(2.5, 0)}}};
  CHECK_THROWS_AS(PiecewiseCircularDomain({{circle}}, {bad}), InvalidInput);

  ExteriorArcData good{0, 1.0, {{Complex(1, 0), Complex(2, 0)}}};
  PiecewiseCircularDomain dom({{circle}}, {good}, {ExtComplex::inf()});
  CHECK(dom.contains(ExtComplex(Complex(0.5, 0.5))));
}

TEST_CASE("transversal_at: crossing circles are transversal") {
  DiskIntersection d1({ClosedDisk{Complex(0, 0), 1.0}});
  DiskIntersection d2({ClosedDisk{Complex(1, 0), 1.0}});
  Complex z0(0.5, std::sqrt(3.0) / 2.0);
  TransversalityWitness w = transversal_at(Domain(d1), Domain(d2), ExtComplex(z0));
  CHECK(w.transversal);
  REQUIRE(w.sectors.size() == 5);
  // oracle: the circles cross at angle pi/3, so disjoint sectors must exist
  // for apertures below that angle; the witness aperture obeys the bound
  CHECK(kTwoPi / w.aperture_m < kPi / 3.0 + 1e-9);
  for (size_t i = 0; i < w.sectors.size(); ++i)
    for (size_t j = i + 1; j < w.sectors.size(); ++j)
      CHECK(sectors_disjoint(w.sectors[i], w.sectors[j]));
}

TEST_CASE("transversal_at: internally tangent disks are refuted") {
  DiskIntersection d1({ClosedDisk{Complex(0, 0), 1.0}});
  DiskIntersection d2({ClosedDisk{Complex(0.5, 0), 0.5}});
  TransversalityWitness w =
      transversal_at(Domain(d1), Domain(d2), ExtComplex(Complex(1, 0)));
  CHECK(!w.transversal);
}

TEST_CASE("transversal_at: empty open intersection fails the third bullet") {
  DiskIntersection d1({ClosedDisk{Complex(0, 0), 1.0}});
  DiskIntersection d2({ExteriorDisk{Complex(0, 0), 1.0}});
  TransversalityWitness w =
      transversal_at(Domain(d1), Domain(d2), ExtComplex(Complex(1, 0)));
  CHECK(!w.transversal);
}

TEST_CASE("transversal_at at infinity moves through the inversion") {
  // two half-planes whose boundary lines cross at 0 and at infinity
  DiskIntersection right({make_half_plane(Complex(0, 0), Complex(1, 0))});
  DiskIntersection lower({make_half_plane(Complex(0, 0), Complex(0, 1))});
  TransversalityWitness w =
      transversal_at(Domain(right), Domain(lower), ExtComplex::inf());
  CHECK(w.transversal);
}

TEST_CASE("transversal_at is symmetric") {
  DiskIntersection d1({ClosedDisk{Complex(0, 0), 1.0}});
  DiskIntersection d2({ClosedDisk{Complex(1, 0), 1.0}});
  Complex z0(0.5, -std::sqrt(3.0) / 2.0);
  TransversalityWitness w12 = transversal_at(Domain(d1), Domain(d2), ExtComplex(z0));
  TransversalityWitness w21 = transversal_at(Domain(d2), Domain(d1), ExtComplex(z0));
  CHECK(w12.transversal == w21.transversal);

  CHECK_THROWS_AS(transversal_at(Domain(d1), Domain(d2), ExtComplex(Complex(5, 0))),
                  InvalidInput);
}

TEST_CASE("exterior disk condition on the unit circle") {
  CircularArc circle{Complex(0, 0), 1.0, 0.0, kTwoPi, 1};
  PiecewiseCircularDomain disk({{circle}}, {}, {ExtComplex::inf()});

  ExteriorDiskReport r1 = exterior_disk_condition(disk, 1.0, 32);
  CHECK(r1.pass);
  // witness centers are mu = 2 lambda
  for (const auto& [lambda, mu] : r1.witness_centers)
    CHECK(std::abs(mu - 2.0 * lambda) < 1e-9);

  // any radius works for a convex disk
  ExteriorDiskReport r2 = exterior_disk_condition(disk, 10.0, 32);
  CHECK(r2.pass);
}

TEST_CASE("exterior disk condition on convex and concave boundaries") {
  // intersections of genuine disks admit externally tangent disks of every
  // radius: tangency to the member circle clears the whole member disk
  DiskIntersection lens({ClosedDisk{Complex(0, 0), 1.25}, ClosedDisk{Complex(1, 0), 1.25}});
  PiecewiseCircularDomain pc = lens.to_piecewise();
  CHECK(exterior_disk_condition(pc, 0.3, 64).pass);
  CHECK(exterior_disk_condition(pc, 8.0, 64).pass);

  // concave boundary: a touching disk must fit inside the hole, so the
  // condition flips exactly at R = hole radius (internal tangency oracle)
  DiskIntersection annulus({ClosedDisk{Complex(0, 0), 1.0},
                            ExteriorDisk{Complex(0, 0), 0.5}});
  PiecewiseCircularDomain ring = annulus.to_piecewise();
  ExteriorDiskReport fits = exterior_disk_condition(ring, 0.4, 32);
  CHECK(fits.pass);
  ExteriorDiskReport too_big = exterior_disk_condition(ring, 0.6, 32);
  CHECK(!too_big.pass);
  // the failure is on the hole boundary
  CHECK(std::abs(too_big.worst_lambda) == doctest::Approx(0.5).epsilon(1e-6));
  // clearance deficit matches the internal-tangency formula: the touching
  // disk pokes out of the hole by 2R - 2*r_hole ... dist(mu, boundary) = 1-R
  CHECK(too_big.worst_clearance ==
        doctest::Approx((1.0 - 0.6) - 0.6).epsilon(1e-6));
}

TEST_CASE("condition A passes on an annulus with subdivided outer arcs") {
  // outer circle split into 8 arcs: each short enough that its sampled
  // touching disks share a point; hole arc keeps the constant center 0,
  // which trivially is the common intersection point
  std::vector<CircularArc> outer;
  for (int k = 0; k < 8; ++k)
    outer.push_back(CircularArc{Complex(0, 0), 1.0, kTwoPi * k / 8.0,
                                kTwoPi * (k + 1) / 8.0, 1});
  CircularArc hole{Complex(0, 0), 0.5, kTwoPi, 0.0, -1};

  std::vector<ExteriorArcData> exterior;
  for (int k = 0; k < 8; ++k) {
    ExteriorArcData data;
    data.arc_index = k;
    data.radius = 1.0;
    for (int i = 0; i <= 8; ++i) {
      double theta = kTwoPi * (k + i / 8.0) / 8.0;
      Complex lambda = std::polar(1.0, theta);
      data.centers.emplace_back(lambda, 2.0 * lambda);
    }
    exterior.push_back(std::move(data));
  }
  ExteriorArcData hole_data;
  hole_data.arc_index = 8;
  hole_data.radius = 0.5;
  for (int i = 0; i <= 8; ++i)
    hole_data.centers.emplace_back(std::polar(0.5, kTwoPi * i / 8.0), Complex(0, 0));
  exterior.push_back(hole_data);

  PiecewiseCircularDomain dom({outer, {hole}}, exterior,
                              {ExtComplex::inf(), ExtComplex(Complex(0, 0))});
  ConditionAReport report = condition_A_check(dom);
  CHECK(report.pass);
  for (const auto& corner : report.corners) CHECK(corner.transversal);
  for (const auto& arc : report.arcs) {
    CHECK(arc.touches);
    CHECK(arc.common_intersection);
  }
  // the subdivided outer arcs have enclosing radius 2 sin(pi/8) <= R = 1
  CHECK(report.arcs[0].enclosing_radius ==
        doctest::Approx(2.0 * std::sin(kPi / 8.0)).epsilon(1e-9));
}

TEST_CASE("condition A on the lens with one exterior center per arc") {
  DiskIntersection lens({ClosedDisk{Complex(0, 0), 1.25}, ClosedDisk{Complex(1, 0), 1.25}});
  PiecewiseCircularDomain plain = lens.to_piecewise();
  std::vector<ExteriorArcData> exterior;
  std::vector<CircularArc> arcs = plain.all_arcs();
  for (size_t k = 0; k < arcs.size(); ++k) {
    ExteriorArcData data;
    data.arc_index = static_cast<int>(k);
    data.radius = 1.25;
    double mid_theta = arcs[k].from + arcs[k].orientation * arcs[k].extent() / 2.0;
    Complex lambda = arcs[k].point_at_angle(mid_theta);
    data.centers.emplace_back(lambda, lambda + 1.25 * arcs[k].outward_normal_at(mid_theta));
    exterior.push_back(std::move(data));
  }
  PiecewiseCircularDomain dom(plain.curves(), exterior, plain.complement_points());
  ConditionAReport report = condition_A_check(dom);
  CHECK(report.pass);
  for (const auto& corner : report.corners) CHECK(corner.transversal);
  for (const auto& arc : report.arcs) {
    CHECK(arc.touches);
    CHECK(arc.common_intersection);
  }
}

TEST_CASE("condition A catches spread-out centers") {
  CircularArc circle{Complex(0, 0), 1.0, 0.0, kTwoPi, 1};
  // two sampled centers of radius R at distance > 2R apart cannot share a point
  ExteriorArcData data{0, 0.5,
                       {{Complex(1, 0), Complex(1.5, 0)}, {Complex(-1, 0), Complex(-1.5, 0)}}};
  PiecewiseCircularDomain dom({{circle}}, {data}, {ExtComplex::inf()});
  ConditionAReport report = condition_A_check(dom);
  CHECK(!report.pass);
  CHECK(!report.arcs[0].common_intersection);
  CHECK(report.arcs[0].enclosing_radius > 1.0);
}

TEST_CASE("condition A rejects tangent corner meetings") {
  // a crescent whose boundary passes twice through the internal tangency
  // point z = 1 with zero angle between the meeting arcs
  CircularArc outer{Complex(0, 0), 1.0, 0.0, kTwoPi, 1};
  CircularArc hole{Complex(0.5, 0), 0.5, kTwoPi, 0.0, -1};
  std::vector<ExteriorArcData> exterior;
  for (int k = 0; k < 2; ++k) {
    const CircularArc& arc = k == 0 ? outer : hole;
    ExteriorArcData data;
    data.arc_index = k;
    data.radius = 0.05;
    double mid_theta = arc.from + arc.orientation * arc.extent() / 2.0;
    Complex lambda = arc.point_at_angle(mid_theta);
    data.centers.emplace_back(lambda, lambda + 0.05 * arc.outward_normal_at(mid_theta));
    exterior.push_back(std::move(data));
  }
  PiecewiseCircularDomain dom({{outer, hole}}, exterior, {ExtComplex::inf()});
  ConditionAReport report = condition_A_check(dom);
  bool has_tangent_corner = false;
  for (const auto& corner : report.corners)
    if (!corner.transversal && corner.angle < kTwoPi / 64.0) has_tangent_corner = true;
  CHECK(has_tangent_corner);
  CHECK(!report.pass);
}

TEST_CASE("pole_set_valid spec values") {
  Domain disk = Domain::unit_disk();
  CHECK(pole_set_valid({ExtComplex::inf()}, disk));
  CHECK(!pole_set_valid({ExtComplex(Complex(0, 0))}, disk));  // inside closure

  DiskIntersection annulus({ClosedDisk{Complex(0, 0), 1.0},
                            ExteriorDisk{Complex(0, 0), 0.5}});
  CHECK(!pole_set_valid({ExtComplex::inf()}, Domain(annulus)));
  CHECK(pole_set_valid({ExtComplex(Complex(0, 0)), ExtComplex::inf()}, Domain(annulus)));

  // same through the piecewise representation with winding signatures
  PiecewiseCircularDomain pc = annulus.to_piecewise();
  CHECK(!pole_set_valid({ExtComplex::inf()}, Domain(pc)));
  CHECK(pole_set_valid({ExtComplex(Complex(0, 0)), ExtComplex::inf()}, Domain(pc)));
}

TEST_CASE("pole_set_valid is monotone under adding exterior points") {
  Rng rng(42);
  DiskIntersection annulus({ClosedDisk{Complex(0, 0), 1.0},
                            ExteriorDisk{Complex(0.1, 0), 0.4}});
  Domain dom(annulus);
  std::vector<ExtComplex> poles{ExtComplex(Complex(0.1, 0)), ExtComplex::inf()};
  REQUIRE(pole_set_valid(poles, dom));
  for (int rep = 0; rep < 20; ++rep) {
    Complex extra = testing::random_complex(rng, 4.0);
    if (dom.contains(ExtComplex(extra), 1e-9)) continue;
    if (dom.boundary_distance(extra) < 1e-6) continue;
    std::vector<ExtComplex> bigger = poles;
    bigger.emplace_back(extra);
    CHECK(pole_set_valid(bigger, dom));
  }
}

TEST_CASE("smallest enclosing circle") {
  auto [c, r] = smallest_enclosing_circle({Complex(0, 0), Complex(2, 0)});
  CHECK(std::abs(c - Complex(1, 0)) < 1e-12);
  CHECK(r == doctest::Approx(1.0).epsilon(1e-12));

  auto [c3, r3] = smallest_enclosing_circle(
      {Complex(0, 0), Complex(2, 0), Complex(1, 1), Complex(1, 0.5)});
  CHECK(r3 <= 1.0 + 1e-9);
  for (Complex p : {Complex(0, 0), Complex(2, 0), Complex(1, 1)})
    CHECK(std::abs(p - c3) <= r3 + 1e-9);
}

TEST_CASE("arc winding angles") {
  CircularArc circle{Complex(0, 0), 1.0, 0.0, kTwoPi, 1};
  CHECK(circle.winding_angle(Complex(0.3, 0.1)) == doctest::Approx(kTwoPi).epsilon(1e-9));
  CHECK(circle.winding_angle(Complex(2, 0)) == doctest::Approx(0.0).epsilon(1e-9));

  CircularArc reversed{Complex(0, 0), 1.0, kTwoPi, 0.0, -1};
  CHECK(reversed.winding_angle(Complex(0.3, 0.1)) ==
        doctest::Approx(-kTwoPi).epsilon(1e-9));
}
