#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace specset {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed files, bad arguments, violated preconditions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A pole or evaluation point collided with the spectrum / a singularity.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// A computation that should succeed did not converge or lost accuracy.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Point on the Riemann sphere: a finite complex number or infinity.
class ExtComplex {
 public:
  ExtComplex() = default;
  ExtComplex(Complex v) : value_(v) {}  // NOLINT: implicit conversion intended
  ExtComplex(double re, double im) : value_(re, im) {}

  static ExtComplex inf() {
    ExtComplex e;
    e.infinite_ = true;
    return e;
  }

  bool is_inf() const { return infinite_; }

  Complex value() const {
    if (infinite_) throw InvalidInput("ExtComplex: value() called on infinity");
    return value_;
  }

  friend bool operator==(const ExtComplex& a, const ExtComplex& b) {
    if (a.infinite_ != b.infinite_) return false;
    if (a.infinite_) return true;
    return a.value_ == b.value_;
  }

 private:
  Complex value_{0.0, 0.0};
  bool infinite_ = false;
};

inline bool approx_equal(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol;
}

inline bool approx_equal(const ExtComplex& a, const ExtComplex& b, double tol) {
  if (a.is_inf() || b.is_inf()) return a.is_inf() && b.is_inf();
  return approx_equal(a.value(), b.value(), tol);
}

inline std::string to_string(const ExtComplex& z) {
  if (z.is_inf()) return "inf";
  return "(" + std::to_string(z.value().real()) + ", " +
         std::to_string(z.value().imag()) + ")";
}

}  // namespace specset
