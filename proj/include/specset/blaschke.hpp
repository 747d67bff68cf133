#pragma once

#include <vector>

#include "specset/matcalc.hpp"
#include "specset/rational.hpp"

namespace specset {

enum class BlaschkeNormalization { kPlain, kMascioni };

/// Finite Blaschke product e^{i theta} prod_j b_{lambda_j}(z) with zeros in
/// the open unit disk. Factors are (z - lambda)/(1 - conj(lambda) z) in the
/// plain convention or (conj(lambda)/|lambda|) (lambda - z)/(1 - conj(lambda) z)
/// in the Mascioni one; zeros at the origin always contribute the plain
/// factor z.
class BlaschkeProduct {
 public:
  BlaschkeProduct(double theta, std::vector<Complex> zeros,
                  BlaschkeNormalization normalization = BlaschkeNormalization::kPlain);

  /// e^{i theta} z^k prod b_j: the power k is folded into the zero list.
  static BlaschkeProduct power_times(double theta, int zero_power,
                                     std::vector<Complex> zeros,
                                     BlaschkeNormalization normalization =
                                         BlaschkeNormalization::kPlain);

  double theta() const { return theta_; }
  const std::vector<Complex>& zeros() const { return zeros_; }
  BlaschkeNormalization normalization() const { return normalization_; }
  int degree() const { return static_cast<int>(zeros_.size()); }

  Complex eval(Complex z) const;

 private:
  double theta_;
  std::vector<Complex> zeros_;
  BlaschkeNormalization normalization_;
};

Complex eval_blaschke(const BlaschkeProduct& b, Complex z);

/// Ordered factor product e^{i theta} prod (T - lambda_j)(I - conj(lambda_j) T)^{-1}.
/// Requires sigma(T) in the closed unit disk; the factors commute and the
/// reversed product is checked against the forward one.
CMat blaschke_on_matrix(const BlaschkeProduct& b, const CMat& t);

/// Orthonormal model-space basis
///   s_k(z) = sqrt(1 - |lambda_k|^2) / (1 - conj(lambda_k) z) * prod_{j<k} b_j(z)
/// stored as rational functions.
struct ModelBasis {
  std::vector<ScalarRational> functions;

  /// Gram matrix in the Hardy inner product by circle quadrature.
  CMat gram(int quadrature_points = 4096) const;
};

ModelBasis model_basis(const BlaschkeProduct& b);

/// |(1 - conj(B(w)) B(z)) - (1 - conj(w) z) sum_k conj(s_k(w)) s_k(z)|.
double kernel_identity_residual(const BlaschkeProduct& b, Complex z, Complex w);

/// | sum ||s_k(T) h||^2 - sum ||s_k(T) T h||^2 - (||h||^2 - ||B(T) h||^2) |.
double defect_identity_residual(const BlaschkeProduct& b, const CMat& t,
                                const CVec& h);

struct SimilarityResult {
  CMat s;                    // principal Hermitian square root of sum s_k(T)* s_k(T)
  double contraction_norm;   // ||S T S^{-1}||
  double condition;          // cond(S)
};

/// The explicit similarity: S = (sum_k s_k(T)^* s_k(T))^{1/2} makes S T S^{-1}
/// a contraction whenever ||B(T)|| <= 1.
SimilarityResult similarity_transform(const BlaschkeProduct& b, const CMat& t);

}  // namespace specset
