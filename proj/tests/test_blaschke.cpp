#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specset/blaschke.hpp"
#include "test_util.hpp"

using namespace specset;
using testing::Rng;

namespace {

BlaschkeProduct z_squared() { return BlaschkeProduct(0.0, {Complex(0, 0), Complex(0, 0)}); }

BlaschkeProduct random_product(Rng& rng, int degree, double max_radius = 0.85) {
  std::vector<Complex> zeros;
  std::uniform_real_distribution<double> rad(0.0, max_radius);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  for (int i = 0; i < degree; ++i) zeros.push_back(std::polar(rad(rng), ang(rng)));
  return BlaschkeProduct(ang(rng), std::move(zeros));
}

}  // namespace

TEST_CASE("eval spec values") {
  CHECK(std::abs(z_squared().eval(Complex(0, 1)) - Complex(-1, 0)) < 1e-14);

  BlaschkeProduct single(0.0, {Complex(0.5, 0)});
  CHECK(std::abs(single.eval(Complex(0.5, 0))) < 1e-14);

  Rng rng(71);
  BlaschkeProduct b = random_product(rng, 5);
  for (int k = 0; k < 32; ++k) {
    Complex z = std::polar(1.0, kTwoPi * (k + 0.3) / 32.0);
    CHECK(std::abs(std::abs(b.eval(z)) - 1.0) < 1e-12);
    CHECK(std::abs(b.eval(0.93 * z)) < 1.0 + 1e-12);
  }

  CHECK_THROWS_AS(BlaschkeProduct(0.0, {Complex(1.0, 0)}), InvalidInput);
  CHECK_THROWS_AS(single.eval(Complex(2, 0)), SingularityError);
}

TEST_CASE("mascioni and plain normalizations share their modulus") {
  Rng rng(72);
  std::vector<Complex> zeros{Complex(0.3, 0.2), Complex(-0.4, 0.1), Complex(0, -0.6)};
  BlaschkeProduct plain(0.7, zeros, BlaschkeNormalization::kPlain);
  BlaschkeProduct mas(0.7, zeros, BlaschkeNormalization::kMascioni);
  for (int k = 0; k < 40; ++k) {
    Complex z = testing::random_complex(rng, 0.8);
    CHECK(std::abs(std::abs(plain.eval(z)) - std::abs(mas.eval(z))) < 1e-12);
  }
}

TEST_CASE("blaschke_on_matrix spec values") {
  CMat t = CMat::Zero(2, 2);
  t(0, 1) = Complex(7, 0);
  CHECK(opnorm(blaschke_on_matrix(z_squared(), t)) < 1e-12);

  BlaschkeProduct single(0.0, {Complex(0.5, 0)});
  CHECK(opnorm(blaschke_on_matrix(single, 0.5 * CMat::Identity(3, 3))) < 1e-12);

  CHECK_THROWS_AS(blaschke_on_matrix(single, 2.0 * CMat::Identity(2, 2)),
                  InvalidInput);
}

TEST_CASE("blaschke_on_matrix maps the spectrum through B") {
  Rng rng(73);
  for (int rep = 0; rep < 15; ++rep) {
    CMat t = testing::random_diagonalizable(rng, 4, 0.5);
    if (spectral_radius(t) > 1.0) continue;
    BlaschkeProduct b = random_product(rng, 3);
    CMat bt = blaschke_on_matrix(b, t);
    CVec eig = eigenvalues(t);
    CVec mapped(eig.size());
    for (Eigen::Index i = 0; i < eig.size(); ++i) mapped(i) = b.eval(eig(i));
    CHECK(testing::spectrum_mismatch(eigenvalues(bt), mapped) < 1e-8);
  }
}

TEST_CASE("model basis spec values") {
  ModelBasis mb = model_basis(z_squared());
  REQUIRE(mb.functions.size() == 2);
  Rng rng(74);
  for (int k = 0; k < 10; ++k) {
    Complex z = testing::random_complex(rng);
    CHECK(std::abs(mb.functions[0].eval(z) - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(mb.functions[1].eval(z) - z) < 1e-12);
  }

  BlaschkeProduct single(0.0, {Complex(0.5, 0)});
  ModelBasis mb1 = model_basis(single);
  REQUIRE(mb1.functions.size() == 1);
  for (int k = 0; k < 10; ++k) {
    Complex z = testing::random_complex(rng, 0.8);
    Complex expected = std::sqrt(0.75) / (1.0 - 0.5 * z);
    CHECK(std::abs(mb1.functions[0].eval(z) - expected) < 1e-12);
  }

  CHECK_THROWS_AS(model_basis(BlaschkeProduct(0.0, {})), InvalidInput);
  CHECK_THROWS_AS(
      model_basis(BlaschkeProduct(0.0, {Complex(0.5, 0)}, BlaschkeNormalization::kMascioni)),
      InvalidInput);
}

TEST_CASE("model basis is orthonormal in the Hardy inner product") {
  Rng rng(75);
  for (int rep = 0; rep < 3; ++rep) {
    BlaschkeProduct b = random_product(rng, 3);
    ModelBasis mb = model_basis(b);
    CMat gram = mb.gram(4096);
    CHECK(opnorm(gram - CMat::Identity(3, 3)) < 1e-8);
  }
}

TEST_CASE("reproducing kernel identity") {
  CHECK(kernel_identity_residual(z_squared(), Complex(0, 0), Complex(0, 0)) < 1e-14);

  Rng rng(76);
  std::uniform_real_distribution<double> rad(0.0, 1.05);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  for (int rep = 0; rep < 10; ++rep) {
    BlaschkeProduct b = random_product(rng, 4);
    for (int k = 0; k < 20; ++k) {
      Complex z = std::polar(rad(rng), ang(rng));
      Complex w = std::polar(rad(rng), ang(rng));
      CHECK(kernel_identity_residual(b, z, w) <= 1e-10);
    }
    // on the circle with w = z both sides vanish
    Complex zc = std::polar(1.0, ang(rng));
    CHECK(std::abs(1.0 - std::conj(b.eval(zc)) * b.eval(zc)) < 1e-12);
    CHECK(kernel_identity_residual(b, zc, zc) < 1e-12);
  }
}

TEST_CASE("defect identity") {
  Rng rng(77);
  CMat t = testing::random_with_norm(rng, 4, 1.4);
  CVec h = CVec::Ones(4);
  // B = z^2 telescopes regardless of the contraction hypothesis
  CHECK(defect_identity_residual(z_squared(), t * (0.6 / opnorm(t)), h) < 1e-12);

  for (int rep = 0; rep < 10; ++rep) {
    BlaschkeProduct b = random_product(rng, 4);
    CMat c = testing::random_with_norm(rng, 6, 0.95);
    CVec v(6);
    for (int i = 0; i < 6; ++i) v(i) = testing::random_complex(rng);
    CHECK(defect_identity_residual(b, c, v) <= 1e-10);
  }

  BlaschkeProduct b = random_product(rng, 3);
  CMat c = testing::random_with_norm(rng, 4, 0.9);
  CHECK(defect_identity_residual(b, c, CVec::Zero(4)) == doctest::Approx(0.0));
}

TEST_CASE("similarity transform spec values") {
  CMat t = CMat::Zero(2, 2);
  t(0, 1) = Complex(5, 0);
  SimilarityResult res = similarity_transform(z_squared(), t);
  // M = I + T*T = diag(1, 26)
  CHECK(std::abs(res.s(0, 0) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(res.s(1, 1) - Complex(std::sqrt(26.0), 0)) < 1e-12);
  CHECK(res.contraction_norm == doctest::Approx(5.0 / std::sqrt(26.0)).epsilon(1e-12));
  CHECK(res.contraction_norm <= 1.0);

  // T already a contraction with B = z: M = I
  Rng rng(78);
  CMat c = testing::random_with_norm(rng, 3, 0.8);
  SimilarityResult res2 = similarity_transform(BlaschkeProduct(0.0, {Complex(0, 0)}), c);
  CHECK(opnorm(res2.s - CMat::Identity(3, 3)) < 1e-12);
  CHECK(res2.contraction_norm <= 1.0 + 1e-12);

  // scaled unitary with a random product
  CMat u = 0.5 * testing::random_unitary(rng, 4);
  BlaschkeProduct b = random_product(rng, 3);
  CHECK(opnorm(blaschke_on_matrix(b, u)) <= 1.0 + 1e-12);
  SimilarityResult res3 = similarity_transform(b, u);
  CHECK(res3.contraction_norm <= 1.0 + 1e-10);

  // rejected when ||B(T)|| > 1
  CMat big = CMat::Zero(2, 2);
  big(0, 1) = Complex(5, 0);
  CHECK_THROWS_AS(similarity_transform(BlaschkeProduct(0.0, {Complex(0, 0)}), big),
                  InvalidInput);
}

TEST_CASE("similarity transform invariants") {
  Rng rng(79);
  for (int rep = 0; rep < 8; ++rep) {
    BlaschkeProduct b = random_product(rng, 3);
    CMat t = testing::random_with_norm(rng, 4, 0.9);
    SimilarityResult res = similarity_transform(b, t);

    // spectrum preserved by the similarity
    CMat conj = res.s * t * res.s.fullPivLu().solve(CMat::Identity(4, 4));
    CHECK(testing::spectrum_mismatch(eigenvalues(conj), eigenvalues(t)) < 1e-8);

    CHECK(res.contraction_norm <= 1.0 + 1e-10);
    CHECK(std::isfinite(res.condition));

    // the new norm matches sum ||s_k(T) h||^2 and contracts under T
    ModelBasis mb = model_basis(b);
    CMat m = res.s.adjoint() * res.s;
    CMat bt = blaschke_on_matrix(b, t);
    for (int k = 0; k < 12; ++k) {
      CVec h(4);
      for (int i = 0; i < 4; ++i) h(i) = testing::random_complex(rng);
      double via_s = (res.s * h).squaredNorm();
      double via_basis = 0.0;
      for (const ScalarRational& sk : mb.functions)
        via_basis += (eval_on_matrix(sk, t) * h).squaredNorm();
      CHECK(std::abs(via_s - via_basis) < 1e-10 * (1.0 + via_basis));

      double lhs = (h.adjoint() * (m * h))(0, 0).real() -
                   ((t * h).adjoint() * (m * (t * h)))(0, 0).real();
      double rhs = h.squaredNorm() - (bt * h).squaredNorm();
      CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
      CHECK(lhs >= -1e-10);
    }
  }
}
