#include "specset/blaschke.hpp"

#include <algorithm>
#include <cmath>

namespace specset {

namespace {

constexpr double kZeroBound = 1.0 - 1e-12;

Complex plain_factor(Complex lambda, Complex z, double pole_tol) {
  Complex den = 1.0 - std::conj(lambda) * z;
  if (std::abs(den) < pole_tol)
    throw SingularityError("blaschke: evaluation at a factor pole");
  return (z - lambda) / den;
}

}  // namespace

BlaschkeProduct::BlaschkeProduct(double theta, std::vector<Complex> zeros,
                                 BlaschkeNormalization normalization)
    : theta_(theta), zeros_(std::move(zeros)), normalization_(normalization) {
  for (Complex z : zeros_)
    if (std::abs(z) > kZeroBound)
      throw InvalidInput("blaschke: zero with |lambda| >= 1 - 1e-12");
}

BlaschkeProduct BlaschkeProduct::power_times(double theta, int zero_power,
                                             std::vector<Complex> zeros,
                                             BlaschkeNormalization normalization) {
  if (zero_power < 0) throw InvalidInput("blaschke: negative zero power");
  std::vector<Complex> all(zero_power, Complex(0, 0));
  all.insert(all.end(), zeros.begin(), zeros.end());
  return BlaschkeProduct(theta, std::move(all), normalization);
}

Complex BlaschkeProduct::eval(Complex z) const {
  double pole_tol = 1e-13 * (1.0 + std::abs(z));
  Complex acc = std::polar(1.0, theta_);
  for (Complex lambda : zeros_) {
    if (std::abs(lambda) == 0.0) {
      acc *= z;
      continue;
    }
    Complex factor = plain_factor(lambda, z, pole_tol);
    if (normalization_ == BlaschkeNormalization::kMascioni)
      factor *= -std::conj(lambda) / std::abs(lambda);
    acc *= factor;
  }
  return acc;
}

Complex eval_blaschke(const BlaschkeProduct& b, Complex z) { return b.eval(z); }

CMat blaschke_on_matrix(const BlaschkeProduct& b, const CMat& t) {
  require_finite(t, "blaschke_on_matrix");
  const Eigen::Index n = t.rows();
  if (spectral_radius(t) > 1.0 + 1e-10)
    throw InvalidInput("blaschke_on_matrix: spectrum outside the closed unit disk");
  const CMat identity = CMat::Identity(n, n);
  const double guard = 1e-12 * (1.0 + opnorm(t));

  auto factor = [&](Complex lambda) -> CMat {
    if (std::abs(lambda) == 0.0) return t;
    Complex pole = 1.0 / std::conj(lambda);
    if (spectrum_distance(t, pole) <= guard)
      throw SingularityError("blaschke_on_matrix: factor pole on the spectrum");
    CMat den = identity - std::conj(lambda) * t;
    CMat value = den.fullPivLu().solve(t - lambda * identity);
    if (b.normalization() == BlaschkeNormalization::kMascioni)
      value *= -std::conj(lambda) / std::abs(lambda);
    return value;
  };

  CMat forward = std::polar(1.0, b.theta()) * identity;
  for (Complex lambda : b.zeros()) forward = forward * factor(lambda);
  CMat reversed = std::polar(1.0, b.theta()) * identity;
  for (auto it = b.zeros().rbegin(); it != b.zeros().rend(); ++it)
    reversed = reversed * factor(*it);
  if (opnorm(forward - reversed) > 1e-10 * (1.0 + opnorm(forward)))
    throw NumericalError("blaschke_on_matrix: factor ordering check failed");
  return forward;
}

ModelBasis model_basis(const BlaschkeProduct& b) {
  if (b.normalization() != BlaschkeNormalization::kPlain)
    throw InvalidInput("model_basis: requires the plain factor convention");
  if (b.degree() < 1) throw InvalidInput("model_basis: empty product");

  ModelBasis basis;
  const auto& zeros = b.zeros();
  for (int k = 0; k < b.degree(); ++k) {
    Complex lk = zeros[k];
    // numerator sqrt(1-|l_k|^2) prod_{j<k} (z - l_j),
    // denominator (1 - conj(l_k) z) prod_{j<k} (1 - conj(l_j) z)
    Poly num{Complex(std::sqrt(1.0 - std::norm(lk)), 0.0)};
    Poly den{Complex(1.0, 0.0)};
    std::vector<std::pair<Complex, int>> poles;
    auto add_pole = [&poles](Complex lambda) {
      if (std::abs(lambda) == 0.0) return;
      Complex p = 1.0 / std::conj(lambda);
      for (auto& [q, m] : poles) {
        if (std::abs(q - p) < 1e-12 * (1.0 + std::abs(p))) {
          ++m;
          return;
        }
      }
      poles.emplace_back(p, 1);
    };
    for (int j = 0; j < k; ++j) {
      num = poly_mul(num, Poly{-zeros[j], Complex(1, 0)});
      if (std::abs(zeros[j]) > 0.0)
        den = poly_mul(den, Poly{Complex(1, 0), -std::conj(zeros[j])});
      add_pole(zeros[j]);
    }
    den = poly_mul(den, Poly{Complex(1, 0), -std::conj(lk)});
    add_pole(lk);
    if (poles.empty())
      basis.functions.push_back(ScalarRational::polynomial(num));
    else
      basis.functions.push_back(ScalarRational::from_num_den(num, den, poles));
  }
  return basis;
}

CMat ModelBasis::gram(int quadrature_points) const {
  const int n = static_cast<int>(functions.size());
  CMat g = CMat::Zero(n, n);
  for (int q = 0; q < quadrature_points; ++q) {
    Complex z = std::polar(1.0, kTwoPi * q / quadrature_points);
    CVec values(n);
    for (int i = 0; i < n; ++i) values(i) = functions[i].eval(z);
    g += values * values.adjoint();
  }
  return g / static_cast<double>(quadrature_points);
}

double kernel_identity_residual(const BlaschkeProduct& b, Complex z, Complex w) {
  ModelBasis basis = model_basis(b);
  Complex left = 1.0 - std::conj(b.eval(w)) * b.eval(z);
  Complex sum(0, 0);
  for (const ScalarRational& s : basis.functions)
    sum += std::conj(s.eval(w)) * s.eval(z);
  Complex right = (1.0 - std::conj(w) * z) * sum;
  return std::abs(left - right);
}

double defect_identity_residual(const BlaschkeProduct& b, const CMat& t,
                                const CVec& h) {
  ModelBasis basis = model_basis(b);
  double lhs = 0.0;
  CVec th = t * h;
  for (const ScalarRational& s : basis.functions) {
    CMat st = eval_on_matrix(s, t);
    lhs += (st * h).squaredNorm();
    lhs -= (st * th).squaredNorm();
  }
  double rhs = h.squaredNorm() - (blaschke_on_matrix(b, t) * h).squaredNorm();
  return std::abs(lhs - rhs);
}

SimilarityResult similarity_transform(const BlaschkeProduct& b, const CMat& t) {
  require_finite(t, "similarity_transform");
  const Eigen::Index n = t.rows();
  double bt_norm = opnorm(blaschke_on_matrix(b, t));
  if (bt_norm > 1.0 + 1e-10)
    throw InvalidInput("similarity_transform: ||B(T)|| exceeds 1 (got " +
                       std::to_string(bt_norm) + ")");

  ModelBasis basis = model_basis(b);
  std::vector<CMat> st;
  st.reserve(basis.functions.size());
  for (const ScalarRational& s : basis.functions) st.push_back(eval_on_matrix(s, t));

  // s_1(T) invertibility backs the norm equivalence
  Eigen::JacobiSVD<CMat> svd1(st.front());
  if (svd1.singularValues()(svd1.singularValues().size() - 1) < 1e-10)
    throw NumericalError("similarity_transform: s_1(T) numerically singular");

  CMat m = CMat::Zero(n, n);
  for (const CMat& sk : st) m += sk.adjoint() * sk;
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success)
    throw NumericalError("similarity_transform: eigensolver failed");
  if (es.eigenvalues()(0) <= 1e-14)
    throw NumericalError("similarity_transform: defect metric numerically singular");

  CMat root = es.eigenvectors() *
              es.eigenvalues().cwiseSqrt().asDiagonal() *
              es.eigenvectors().adjoint();
  CMat root_inv = es.eigenvectors() *
                  es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                  es.eigenvectors().adjoint();
  SimilarityResult result;
  result.s = root;
  result.contraction_norm = opnorm(root * t * root_inv);
  result.condition = std::sqrt(es.eigenvalues()(n - 1) / es.eigenvalues()(0));
  return result;
}

}  // namespace specset
