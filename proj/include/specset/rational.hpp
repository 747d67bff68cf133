#pragma once

#include <optional>
#include <vector>

#include "specset/types.hpp"

namespace specset {

// Dense polynomial with ascending coefficients; empty vector is the zero
// polynomial.
using Poly = std::vector<Complex>;

Poly poly_trim(Poly p, double rel_tol = 0.0);
Complex poly_eval(const Poly& p, Complex z);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, Complex c);
Poly poly_mul(const Poly& a, const Poly& b);
// quotient, remainder with deg(remainder) < deg(den)
std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den);
// coefficients of p(c + w) as a polynomial in w
Poly poly_shift(const Poly& p, Complex c);
// all roots, via the companion matrix
std::vector<Complex> poly_roots(const Poly& p);
Poly poly_from_roots(const std::vector<Complex>& roots, Complex lead);
int poly_degree(const Poly& p);

/// One principal-part term of a rational function: coeff / (z - pole)^power,
/// or coeff * z^power when the pole is infinity.
struct PoleTerm {
  ExtComplex pole;
  int power = 1;
  Complex coeff{0.0, 0.0};
};

/// Scalar rational function kept in two synchronized representations:
/// a pole-residue expansion
///     f(z) = c0 + sum_j c_{inf,j} z^j + sum_{p,j} c_{p,j} (z - p)^{-j}
/// and a numerator/denominator coefficient pair with monic denominator.
///
/// The pole-residue form is canonical; the polynomial pair is derived on
/// construction and used for boundary-sup style evaluations.
class ScalarRational {
 public:
  ScalarRational() = default;
  explicit ScalarRational(Complex constant);
  ScalarRational(Complex constant, std::vector<PoleTerm> terms);

  /// c0 + c1 z + c2 z^2 + ...
  static ScalarRational polynomial(const Poly& coeffs);
  /// p_lambda: (z - lambda)^{-1} for finite lambda, z for lambda = inf.
  static ScalarRational pole_power(const ExtComplex& lambda, int power = 1,
                                   Complex coeff = Complex(1.0, 0.0));
  /// Partial-fraction decomposition of num/den with denominator roots found
  /// numerically and clustered into multiplicities.
  static ScalarRational from_num_den(const Poly& num, const Poly& den);
  /// Same, with the distinct poles and multiplicities supplied exactly.
  static ScalarRational from_num_den(
      const Poly& num, const Poly& den,
      const std::vector<std::pair<Complex, int>>& poles);

  Complex constant() const { return constant_; }
  const std::vector<PoleTerm>& terms() const { return terms_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  /// Distinct finite poles with their maximal power.
  std::vector<std::pair<Complex, int>> finite_poles() const;
  /// Highest power of the z^j part (0 when there is none).
  int infinity_power() const;
  bool is_zero(double tol = 0.0) const;

  /// Pointwise value from the pole-residue form.
  Complex eval(Complex z) const;
  /// Pointwise value from the num/den form.
  Complex eval_num_den(Complex z) const;
  /// f(scale * z + shift) as a new rational (exact in pole-residue form).
  ScalarRational compose_affine(Complex scale, Complex shift) const;

  /// Largest |num/den mismatch| over sample points; the two representations
  /// must agree to ~1e-10 relative for a well-formed value.
  double representation_mismatch(int samples = 32) const;

  ScalarRational operator+(const ScalarRational& other) const;
  ScalarRational operator-(const ScalarRational& other) const;
  ScalarRational operator*(const ScalarRational& other) const;
  ScalarRational operator*(Complex c) const;

 private:
  void canonicalize_();
  void rebuild_num_den_();

  Complex constant_{0.0, 0.0};
  std::vector<PoleTerm> terms_;
  Poly num_;        // num_/den_ in sync with the pole-residue data
  Poly den_{1.0};   // monic
};

/// s x s matrix-valued rational function, entries row-major.
class MatrixRational {
 public:
  MatrixRational() : s_(1), entries_(1) {}
  MatrixRational(int s, std::vector<ScalarRational> entries);
  static MatrixRational scalar(ScalarRational f);

  int size() const { return s_; }
  const ScalarRational& at(int i, int j) const { return entries_[i * s_ + j]; }
  ScalarRational& at(int i, int j) { return entries_[i * s_ + j]; }

  /// Union of the entries' finite poles (merged within tol).
  std::vector<std::pair<Complex, int>> finite_poles(double tol = 1e-12) const;
  int infinity_power() const;

  CMat eval(Complex z) const;
  MatrixRational operator*(Complex c) const;

 private:
  int s_;
  std::vector<ScalarRational> entries_;
};

}  // namespace specset
