#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specset/io.hpp"
#include "test_util.hpp"

using namespace specset;
using io::Json;

TEST_CASE("matrix round-trip and validation") {
  testing::Rng rng(101);
  CMat t = testing::random_matrix(rng, 3);
  CMat back = io::matrix_from_json(io::matrix_to_json(t));
  CHECK(opnorm(t - back) < 1e-15);

  Json bad = io::matrix_to_json(t);
  bad["entries"][1][2][0] = std::numeric_limits<double>::quiet_NaN();
  // NaN serializes to null; either way the loader must name the entry
  try {
    io::matrix_from_json(bad);
    FAIL("NaN entry accepted");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("entries[1][2]") != std::string::npos);
  }

  Json short_row = io::matrix_to_json(t);
  short_row["entries"][0].erase(2);
  CHECK_THROWS_AS(io::matrix_from_json(short_row), InvalidInput);
}

TEST_CASE("rational round-trip keeps both representations in sync") {
  testing::Rng rng(102);
  ScalarRational f = testing::random_rational_with_poles(
      rng, {Complex(2, 1), Complex(-1, -3)}, 2);
  ScalarRational back = io::rational_from_json(io::rational_to_json(f));
  for (int k = 0; k < 12; ++k) {
    Complex z = testing::random_complex(rng, 0.5);
    CHECK(std::abs(f.eval(z) - back.eval(z)) < 1e-12 * (1.0 + std::abs(f.eval(z))));
  }
  CHECK(back.representation_mismatch() < 1e-10);

  Json bad{{"constant", Json::array({0.0, 0.0})},
           {"terms", Json::array({Json{{"pole", Json::array({1.0, 0.0})},
                                       {"power", 0},
                                       {"coeff", Json::array({1.0, 0.0})}}})}};
  CHECK_THROWS_AS(io::rational_from_json(bad), InvalidInput);
}

TEST_CASE("domain round-trips for both representations") {
  // piecewise: annulus with exterior data
  CircularArc outer{Complex(0, 0), 1.0, 0.0, kTwoPi, 1};
  CircularArc hole{Complex(0, 0), 0.5, kTwoPi, 0.0, -1};
  ExteriorArcData data{0, 1.0, {{Complex(1, 0), Complex(2, 0)}}};
  PiecewiseCircularDomain pc({{outer}, {hole}}, {data},
                             {ExtComplex::inf(), ExtComplex(Complex(0, 0))});
  Domain d1(pc);
  Domain back = io::domain_from_json(io::domain_to_json(d1));
  REQUIRE(back.as_piecewise() != nullptr);
  CHECK(back.as_piecewise()->curves().size() == 2);
  CHECK(back.as_piecewise()->exterior().size() == 1);
  CHECK(back.contains(ExtComplex(Complex(0.7, 0))));
  CHECK(!back.contains(ExtComplex(Complex(0.2, 0))));

  // disk intersection
  Domain lens(DiskIntersection({ClosedDisk{Complex(0, 0), 1.25},
                                ClosedDisk{Complex(1, 0), 1.25}}));
  Domain lens_back = io::domain_from_json(io::domain_to_json(lens));
  REQUIRE(lens_back.as_disks() != nullptr);
  CHECK(lens_back.contains(ExtComplex(Complex(0.5, 0))));

  // arcs that do not close are rejected with the gap distance named
  Json gap{{"curves",
            Json::array({Json{{"arcs", Json::array({Json{{"center", Json::array({0.0, 0.0})},
                                                         {"radius", 1.0},
                                                         {"from", 0.0},
                                                         {"to", kPi}}})}}})}};
  try {
    io::domain_from_json(gap);
    FAIL("open curve accepted");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("gap") != std::string::npos);
  }
}

TEST_CASE("blaschke round-trip and validation") {
  BlaschkeProduct b(0.4, {Complex(0.5, 0.2), Complex(0, 0)},
                    BlaschkeNormalization::kMascioni);
  BlaschkeProduct back = io::blaschke_from_json(io::blaschke_to_json(b));
  CHECK(back.theta() == doctest::Approx(0.4));
  CHECK(back.normalization() == BlaschkeNormalization::kMascioni);
  REQUIRE(back.zeros().size() == 2);

  Json bad{{"theta", 0.0}, {"zeros", Json::array({Json::array({1.0, 0.0})})}};
  try {
    io::blaschke_from_json(bad);
    FAIL("unimodular zero accepted");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("|lambda| < 1") != std::string::npos);
  }
}

TEST_CASE("disk round-trip") {
  for (const GeneralizedDisk& d :
       {GeneralizedDisk(ClosedDisk{Complex(1, 2), 3.0}),
        GeneralizedDisk(ExteriorDisk{Complex(-1, 0), 0.5}),
        make_half_plane(Complex(0, 1), Complex(0, -1))}) {
    GeneralizedDisk back = io::disk_from_json(io::disk_to_json(d));
    CHECK(disk_kind(back) == disk_kind(d));
    for (int k = 0; k < 8; ++k) {
      Complex z = std::polar(1.7, kTwoPi * k / 8.0);
      CHECK(disk_contains(back, ExtComplex(z)) == disk_contains(d, ExtComplex(z)));
    }
  }
}

TEST_CASE("reports serialize deterministically") {
  ClassifyReport report;
  report.verdict = true;
  report.margin = 0.25;
  report.tol = 1e-9;
  report.witness = {{"theta", 1.5}};
  Json j1 = io::classify_report_to_json(report);
  Json j2 = io::classify_report_to_json(report);
  CHECK(j1.dump() == j2.dump());
  CHECK(j1.at("verdict").get<bool>() == true);

  report.margin = 1e-12;
  report.boundary = true;
  Json j3 = io::classify_report_to_json(report);
  CHECK(j3.at("verdict").get<std::string>() == "boundary");
}
