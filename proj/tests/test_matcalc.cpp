#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specset/matcalc.hpp"
#include "test_util.hpp"

using namespace specset;
using testing::Rng;

namespace {

CMat nilpotent_pair(double n) {
  CMat t = CMat::Zero(2, 2);
  t(0, 1) = n;
  return t;
}

}  // namespace

TEST_CASE("opnorm basics") {
  CHECK(opnorm(CMat::Identity(3, 3)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(opnorm(nilpotent_pair(7.0)) == doctest::Approx(7.0).epsilon(1e-14));

  CMat bad = CMat::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(opnorm(bad), InvalidInput);
}

TEST_CASE("opnorm against power-iteration oracle") {
  Rng rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    CMat t = testing::random_matrix(rng, 4);
    double reference = testing::opnorm_power_iteration(t);
    CHECK(opnorm(t) == doctest::Approx(reference).epsilon(1e-8));
  }
}

TEST_CASE("resolvent spec values") {
  CMat zero = CMat::Zero(2, 2);
  CHECK(opnorm(resolvent(zero, ExtComplex(Complex(2, 0)))) ==
        doctest::Approx(0.5).epsilon(1e-14));

  CMat d = CMat::Zero(2, 2);
  d(0, 0) = Complex(1, 0);
  d(1, 1) = Complex(-1, 0);
  CHECK(opnorm(resolvent(d, ExtComplex::inf()) - d) < 1e-15);

  CHECK_THROWS_AS(resolvent(d, ExtComplex(Complex(1, 0))), SingularityError);
}

TEST_CASE("resolvent inverts the shift") {
  Rng rng(22);
  for (int rep = 0; rep < 20; ++rep) {
    CMat t = testing::random_matrix(rng, 5);
    Complex lambda = testing::random_complex(rng) + Complex(8, 0);
    CMat r = resolvent(t, ExtComplex(lambda));
    CMat shifted = t - lambda * CMat::Identity(5, 5);
    CHECK(opnorm(shifted * r - CMat::Identity(5, 5)) < 1e-10);
  }
}

TEST_CASE("pole_size spec values") {
  CMat zero = CMat::Zero(2, 2);
  CHECK(pole_size(zero, {ExtComplex(Complex(2, 0))}) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pole_size(zero, {ExtComplex::inf()}) == doctest::Approx(0.0));

  CMat d = CMat::Zero(2, 2);
  d(0, 0) = Complex(0.9, 0);
  d(1, 1) = Complex(-0.9, 0);
  // normal matrix: max over eigenvalues of the scalar values
  double expected = std::max(1.0 / 1.1, 0.9);
  CHECK(pole_size(d, {ExtComplex(Complex(2, 0)), ExtComplex::inf()}) ==
        doctest::Approx(expected).epsilon(1e-12));

  CHECK_THROWS_AS(pole_size(d, {}), InvalidInput);
}

TEST_CASE("eval_on_matrix spec values") {
  ScalarRational z2 = ScalarRational::polynomial(
      Poly{Complex(0, 0), Complex(0, 0), Complex(1, 0)});
  CHECK(opnorm(eval_on_matrix(z2, nilpotent_pair(5.0))) < 1e-14);

  Rng rng(23);
  CMat t = testing::random_matrix(rng, 4);
  CHECK(opnorm(eval_on_matrix(ScalarRational(Complex(1, 0)), t) -
               CMat::Identity(4, 4)) < 1e-14);
}

TEST_CASE("eval_on_matrix spectral mapping on diagonalizable matrices") {
  Rng rng(24);
  for (int rep = 0; rep < 15; ++rep) {
    CMat t = testing::random_diagonalizable(rng, 4, 1.0);
    ScalarRational f = testing::random_rational_with_poles(
        rng, {Complex(6, 0), Complex(0, 7)}, 2);
    CMat ft = eval_on_matrix(f, t);
    // oracle: f applied to the eigenvalues, via an eigendecomposition
    CVec eig = eigenvalues(t);
    CVec mapped(eig.size());
    for (Eigen::Index i = 0; i < eig.size(); ++i) mapped(i) = f.eval(eig(i));
    CHECK(testing::spectrum_mismatch(eigenvalues(ft), mapped) < 1e-8);
  }
}

TEST_CASE("eval_on_matrix guards poles near the spectrum") {
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = Complex(1, 0);
  d(1, 1) = Complex(2, 0);
  ScalarRational f = ScalarRational::pole_power(ExtComplex(Complex(1.0, 1e-14)));
  CHECK_THROWS_AS(eval_on_matrix(f, d), SingularityError);
}

TEST_CASE("eval_on_matrix commutes with T") {
  Rng rng(25);
  for (int rep = 0; rep < 10; ++rep) {
    CMat t = testing::random_matrix(rng, 5);
    ScalarRational f = testing::random_rational_with_poles(
        rng, {Complex(9, 0), Complex(-9, 2)}, 2);
    CMat ft = eval_on_matrix(f, t);
    CHECK(opnorm(ft * t - t * ft) < 1e-10 * (1.0 + opnorm(ft)) * (1.0 + opnorm(t)));
  }
}

TEST_CASE("eval_on_matrix is linear and multiplicative") {
  Rng rng(26);
  for (int rep = 0; rep < 10; ++rep) {
    CMat t = testing::random_with_norm(rng, 4, 1.0);
    ScalarRational f = testing::random_rational_with_poles(rng, {Complex(4, 0)}, 2);
    ScalarRational g = testing::random_rational_with_poles(rng, {Complex(0, -5)}, 2);
    Complex alpha = testing::random_complex(rng), beta = testing::random_complex(rng);

    CMat lin = eval_on_matrix(f * alpha + g * beta, t);
    CHECK(opnorm(lin - alpha * eval_on_matrix(f, t) - beta * eval_on_matrix(g, t)) <
          1e-11 * (1.0 + opnorm(lin)));

    CMat prod = eval_on_matrix(f * g, t);
    CHECK(opnorm(prod - eval_on_matrix(f, t) * eval_on_matrix(g, t)) <
          1e-9 * (1.0 + opnorm(prod)));
  }
}

TEST_CASE("cauchy calculus spec values") {
  Rng rng(27);
  CMat t = testing::random_with_spectral_radius(rng, 3, 0.6);
  Contour gamma{{{Complex(0, 0), 2.0, 1}}, 512};

  CHECK(opnorm(eval_on_matrix_cauchy(ScalarRational(Complex(1, 0)), t, gamma) -
               CMat::Identity(3, 3)) < 1e-8);

  ScalarRational idz = ScalarRational::polynomial(Poly{Complex(0, 0), Complex(1, 0)});
  CHECK(opnorm(eval_on_matrix_cauchy(idz, t, gamma) - t) < 1e-8);

  CMat d = CMat::Zero(2, 2);
  d(1, 1) = Complex(0.5, 0);
  ScalarRational p3 = ScalarRational::pole_power(ExtComplex(Complex(3, 0)));
  CMat expected = CMat::Zero(2, 2);
  expected(0, 0) = Complex(-1.0 / 3.0, 0);
  expected(1, 1) = Complex(-0.4, 0);
  Contour unit{{{Complex(0, 0), 1.0, 1}}, 512};
  CHECK(opnorm(eval_on_matrix_cauchy(p3, d, unit) - expected) < 1e-8);
}

TEST_CASE("cauchy calculus rejects bad contours") {
  CMat d = CMat::Zero(2, 2);
  d(1, 1) = Complex(0.5, 0);
  ScalarRational p3 = ScalarRational::pole_power(ExtComplex(Complex(3, 0)));
  // pole enclosed
  CHECK_THROWS_AS(eval_on_matrix_cauchy(p3, d, Contour{{{Complex(0, 0), 4.0, 1}}, 512}),
                  InvalidInput);
  // contour through an eigenvalue
  CHECK_THROWS_AS(eval_on_matrix_cauchy(p3, d, Contour{{{Complex(0, 0), 0.5, 1}}, 512}),
                  SingularityError);
  // spectrum not enclosed
  CHECK_THROWS_AS(eval_on_matrix_cauchy(p3, d, Contour{{{Complex(10, 0), 1.0, 1}}, 512}),
                  InvalidInput);
}

TEST_CASE("oracle equivalence of the two calculi") {
  Rng rng(28);
  for (int rep = 0; rep < 25; ++rep) {
    CMat t = testing::random_with_spectral_radius(rng, 4, 0.7);
    // poles at distance >= 0.5 from the spectrum
    std::vector<Complex> poles{std::polar(2.0, kTwoPi * rep / 25.0),
                               std::polar(2.5, 1.1 + kTwoPi * rep / 25.0)};
    ScalarRational f = testing::random_rational_with_poles(rng, poles, 2);
    Contour gamma{{{Complex(0, 0), 1.4, 1}}, 1024};
    CMat direct = eval_on_matrix(f, t);
    CMat cauchy = eval_on_matrix_cauchy(f, t, gamma);
    CHECK(opnorm(direct - cauchy) <= 1e-7);
  }
}

TEST_CASE("adaptive cauchy refines to tolerance") {
  Rng rng(29);
  CMat t = testing::random_with_spectral_radius(rng, 3, 0.5);
  ScalarRational f = testing::random_rational_with_poles(rng, {Complex(3, 1)}, 1);
  auto [value, points] = eval_on_matrix_cauchy_adaptive(f, t, {{Complex(0, 0), 1.6, 1}});
  CHECK(points <= 8192);
  CHECK(opnorm(value - eval_on_matrix(f, t)) < 1e-8);
}

TEST_CASE("eval_matrix_rational spec values") {
  // identity-valued constant, s = 2, dim 3 -> identity of dim 6
  ScalarRational one(Complex(1, 0));
  ScalarRational zero;
  MatrixRational f(2, {one, zero, zero, one});
  Rng rng(30);
  CMat t = testing::random_matrix(rng, 3);
  CHECK(opnorm(eval_matrix_rational(f, t) - CMat::Identity(6, 6)) < 1e-14);

  // diagonal (z, z^2) on the nilpotent pair -> block-diag(T, 0)
  ScalarRational z = ScalarRational::polynomial(Poly{Complex(0, 0), Complex(1, 0)});
  ScalarRational z2 = ScalarRational::polynomial(
      Poly{Complex(0, 0), Complex(0, 0), Complex(1, 0)});
  MatrixRational g(2, {z, zero, zero, z2});
  CMat n = nilpotent_pair(1.0);
  CMat got = eval_matrix_rational(g, n);
  CHECK(opnorm(got.block(0, 0, 2, 2) - n) < 1e-14);
  CHECK(opnorm(got.block(2, 2, 2, 2)) < 1e-14);
  CHECK(opnorm(got.block(0, 2, 2, 2)) < 1e-14);
}

TEST_CASE("eval_matrix_rational block-diagonalizes over diagonal T") {
  Rng rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    CMat t = CMat::Zero(3, 3);
    for (int i = 0; i < 3; ++i) t(i, i) = testing::random_complex(rng);
    std::vector<ScalarRational> entries;
    for (int k = 0; k < 4; ++k)
      entries.push_back(testing::random_rational_with_poles(rng, {Complex(5, 5)}, 2));
    MatrixRational f(2, entries);
    // oracle: max over eigenvalues of ||F(mu)||
    double expected = 0.0;
    for (int i = 0; i < 3; ++i)
      expected = std::max(expected, opnorm(f.eval(t(i, i))));
    CHECK(opnorm(eval_matrix_rational(f, t)) ==
          doctest::Approx(expected).epsilon(1e-8));
  }
}
