#include "specset/rational.hpp"

#include <algorithm>
#include <cmath>

namespace specset {

namespace {

double max_abs(const Poly& p) {
  double m = 0.0;
  for (Complex c : p) m = std::max(m, std::abs(c));
  return m;
}

bool ext_less(const ExtComplex& a, const ExtComplex& b) {
  // finite poles ordered by (re, im); infinity sorts last
  if (a.is_inf() != b.is_inf()) return !a.is_inf();
  if (a.is_inf()) return false;
  Complex u = a.value(), v = b.value();
  if (u.real() != v.real()) return u.real() < v.real();
  return u.imag() < v.imag();
}

}  // namespace

int poly_degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_trim(Poly p, double rel_tol) {
  double cutoff = rel_tol > 0.0 ? rel_tol * max_abs(p) : 0.0;
  while (!p.empty() && std::abs(p.back()) <= cutoff) p.pop_back();
  return p;
}

Complex poly_eval(const Poly& p, Complex z) {
  Complex acc(0.0, 0.0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Complex(0.0, 0.0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly poly_scale(const Poly& a, Complex c) {
  Poly out = a;
  for (Complex& x : out) x *= c;
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Complex(0.0, 0.0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den) {
  Poly d = poly_trim(den);
  if (d.empty()) throw InvalidInput("poly_divmod: division by zero polynomial");
  Poly r = poly_trim(num);
  if (r.size() < d.size()) return {Poly{}, r};
  Poly q(r.size() - d.size() + 1, Complex(0.0, 0.0));
  for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
    Complex f = r[k + d.size() - 1] / d.back();
    q[k] = f;
    for (size_t j = 0; j < d.size(); ++j) r[k + j] -= f * d[j];
  }
  r.resize(d.size() - 1);
  return {poly_trim(q, 1e-14), r};
}

Poly poly_shift(const Poly& p, Complex c) {
  // repeated synthetic division by (z - c); remainders are the Taylor
  // coefficients at c and each quotient lands in work[0..] in place
  Poly work = p;
  Poly out(p.size(), Complex(0.0, 0.0));
  for (size_t k = 0; k < p.size(); ++k) {
    Complex rem(0.0, 0.0);
    for (int i = static_cast<int>(work.size()) - 1 - static_cast<int>(k); i >= 0; --i) {
      Complex tmp = work[i];
      work[i] = rem;
      rem = tmp + rem * c;
    }
    out[k] = rem;
  }
  return out;
}

std::vector<Complex> poly_roots(const Poly& p_in) {
  Poly p = poly_trim(p_in, 1e-14);
  if (p.size() <= 1) return {};
  int n = static_cast<int>(p.size()) - 1;
  CMat companion = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p[i] / p[n];
  for (int i = 1; i < n; ++i) companion(i, i - 1) = Complex(1.0, 0.0);
  Eigen::ComplexEigenSolver<CMat> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("poly_roots: eigensolver failed");
  std::vector<Complex> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = solver.eigenvalues()(i);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

Poly poly_from_roots(const std::vector<Complex>& roots, Complex lead) {
  Poly out{lead};
  for (Complex r : roots) out = poly_mul(out, Poly{-r, Complex(1.0, 0.0)});
  return out;
}

// ---------------------------------------------------------------------------
// ScalarRational
// ---------------------------------------------------------------------------

ScalarRational::ScalarRational(Complex constant) : constant_(constant) {
  rebuild_num_den_();
}

ScalarRational::ScalarRational(Complex constant, std::vector<PoleTerm> terms)
    : constant_(constant), terms_(std::move(terms)) {
  for (const PoleTerm& t : terms_)
    if (t.power < 1) throw InvalidInput("ScalarRational: term power must be >= 1");
  canonicalize_();
  rebuild_num_den_();
}

ScalarRational ScalarRational::polynomial(const Poly& coeffs) {
  Poly c = poly_trim(coeffs);
  Complex c0 = c.empty() ? Complex(0.0, 0.0) : c[0];
  std::vector<PoleTerm> terms;
  for (size_t j = 1; j < c.size(); ++j)
    terms.push_back({ExtComplex::inf(), static_cast<int>(j), c[j]});
  return ScalarRational(c0, std::move(terms));
}

ScalarRational ScalarRational::pole_power(const ExtComplex& lambda, int power,
                                          Complex coeff) {
  return ScalarRational(Complex(0.0, 0.0), {{lambda, power, coeff}});
}

void ScalarRational::canonicalize_() {
  // merge identical (pole, power) keys, drop negligible coefficients,
  // deterministic ordering
  std::vector<PoleTerm> merged;
  for (const PoleTerm& t : terms_) {
    bool found = false;
    for (PoleTerm& m : merged) {
      if (m.power == t.power && m.pole == t.pole) {
        m.coeff += t.coeff;
        found = true;
        break;
      }
    }
    if (!found) merged.push_back(t);
  }
  double scale = std::abs(constant_);
  for (const PoleTerm& t : merged) scale = std::max(scale, std::abs(t.coeff));
  std::vector<PoleTerm> kept;
  for (const PoleTerm& t : merged)
    if (std::abs(t.coeff) > 1e-14 * scale && t.coeff != Complex(0.0, 0.0))
      kept.push_back(t);
  std::sort(kept.begin(), kept.end(), [](const PoleTerm& a, const PoleTerm& b) {
    if (!(a.pole == b.pole)) return ext_less(a.pole, b.pole);
    return a.power < b.power;
  });
  terms_ = std::move(kept);
}

void ScalarRational::rebuild_num_den_() {
  std::vector<std::pair<Complex, int>> poles = finite_poles();
  Poly den{Complex(1.0, 0.0)};
  for (const auto& [p, m] : poles)
    for (int j = 0; j < m; ++j) den = poly_mul(den, Poly{-p, Complex(1.0, 0.0)});

  Poly poly_part{constant_};
  for (const PoleTerm& t : terms_) {
    if (!t.pole.is_inf()) continue;
    if (static_cast<int>(poly_part.size()) <= t.power)
      poly_part.resize(t.power + 1, Complex(0.0, 0.0));
    poly_part[t.power] += t.coeff;
  }
  Poly num = poly_mul(poly_part, den);

  for (const PoleTerm& t : terms_) {
    if (t.pole.is_inf()) continue;
    // cofactor den / (z - pole)^power
    Poly cof{t.coeff};
    for (const auto& [p, m] : poles) {
      int copies = (p == t.pole.value()) ? m - t.power : m;
      for (int j = 0; j < copies; ++j)
        cof = poly_mul(cof, Poly{-p, Complex(1.0, 0.0)});
    }
    num = poly_add(num, cof);
  }
  num_ = poly_trim(num, 1e-14);
  den_ = den;
}

std::vector<std::pair<Complex, int>> ScalarRational::finite_poles() const {
  std::vector<std::pair<Complex, int>> out;
  for (const PoleTerm& t : terms_) {
    if (t.pole.is_inf()) continue;
    bool found = false;
    for (auto& [p, m] : out) {
      if (p == t.pole.value()) {
        m = std::max(m, t.power);
        found = true;
        break;
      }
    }
    if (!found) out.emplace_back(t.pole.value(), t.power);
  }
  return out;
}

int ScalarRational::infinity_power() const {
  int p = 0;
  for (const PoleTerm& t : terms_)
    if (t.pole.is_inf()) p = std::max(p, t.power);
  return p;
}

bool ScalarRational::is_zero(double tol) const {
  if (std::abs(constant_) > tol) return false;
  for (const PoleTerm& t : terms_)
    if (std::abs(t.coeff) > tol) return false;
  return true;
}

Complex ScalarRational::eval(Complex z) const {
  Complex acc = constant_;
  for (const PoleTerm& t : terms_) {
    if (t.pole.is_inf()) {
      acc += t.coeff * std::pow(z, t.power);
    } else {
      Complex d = z - t.pole.value();
      if (std::abs(d) < 1e-13 * (1.0 + std::abs(z) + std::abs(t.pole.value())))
        throw SingularityError("ScalarRational::eval: evaluation at a pole");
      acc += t.coeff / std::pow(d, t.power);
    }
  }
  return acc;
}

Complex ScalarRational::eval_num_den(Complex z) const {
  Complex d = poly_eval(den_, z);
  if (std::abs(d) == 0.0)
    throw SingularityError("ScalarRational::eval_num_den: denominator zero");
  return poly_eval(num_, z) / d;
}

double ScalarRational::representation_mismatch(int samples) const {
  double worst = 0.0;
  // deterministic sample ring avoiding poles with high probability
  for (int k = 0; k < samples; ++k) {
    double theta = kTwoPi * (k + 0.37) / samples;
    double rho = 1.318 + 0.71 * std::cos(3.1 * k);
    Complex z = std::polar(rho, theta);
    bool near_pole = false;
    for (const auto& [p, m] : finite_poles())
      if (std::abs(z - p) < 1e-3 * (1.0 + std::abs(p))) near_pole = true;
    if (near_pole) continue;
    Complex a = eval(z);
    Complex b = eval_num_den(z);
    double denom = std::max(1.0, std::abs(a));
    worst = std::max(worst, std::abs(a - b) / denom);
  }
  return worst;
}

ScalarRational ScalarRational::operator+(const ScalarRational& other) const {
  std::vector<PoleTerm> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return ScalarRational(constant_ + other.constant_, std::move(terms));
}

ScalarRational ScalarRational::operator-(const ScalarRational& other) const {
  return *this + (other * Complex(-1.0, 0.0));
}

ScalarRational ScalarRational::operator*(Complex c) const {
  std::vector<PoleTerm> terms = terms_;
  for (PoleTerm& t : terms) t.coeff *= c;
  return ScalarRational(constant_ * c, std::move(terms));
}

ScalarRational ScalarRational::operator*(const ScalarRational& other) const {
  Poly num = poly_mul(num_, other.num_);
  Poly den = poly_mul(den_, other.den_);
  // the product's poles are known: union with summed multiplicities
  std::vector<std::pair<Complex, int>> poles = finite_poles();
  for (const auto& [p, m] : other.finite_poles()) {
    bool found = false;
    for (auto& [q, n] : poles) {
      if (std::abs(q - p) <= 1e-12 * (1.0 + std::abs(p))) {
        n += m;
        found = true;
        break;
      }
    }
    if (!found) poles.emplace_back(p, m);
  }
  return from_num_den(num, den, poles);
}

ScalarRational ScalarRational::compose_affine(Complex scale,
                                              Complex shift) const {
  if (scale == Complex(0.0, 0.0))
    throw InvalidInput("compose_affine: degenerate scale");
  std::vector<PoleTerm> terms;
  Complex c0 = constant_;
  for (const PoleTerm& t : terms_) {
    if (t.pole.is_inf()) {
      // c (scale z + shift)^j, expanded binomially
      Poly base{shift, scale};
      Poly pw{Complex(1.0, 0.0)};
      for (int j = 0; j < t.power; ++j) pw = poly_mul(pw, base);
      pw = poly_scale(pw, t.coeff);
      if (!pw.empty()) c0 += pw[0];
      for (size_t j = 1; j < pw.size(); ++j)
        terms.push_back({ExtComplex::inf(), static_cast<int>(j), pw[j]});
    } else {
      // c / (scale z + shift - p)^j = (c / scale^j) / (z - (p - shift)/scale)^j
      Complex new_pole = (t.pole.value() - shift) / scale;
      Complex new_coeff = t.coeff / std::pow(scale, t.power);
      terms.push_back({ExtComplex(new_pole), t.power, new_coeff});
    }
  }
  return ScalarRational(c0, std::move(terms));
}

ScalarRational ScalarRational::from_num_den(const Poly& num_in,
                                            const Poly& den_in) {
  Poly den = poly_trim(den_in, 1e-14);
  if (den.empty()) throw InvalidInput("from_num_den: zero denominator");
  std::vector<Complex> roots = poly_roots(den);
  // cluster nearby roots into multiplicities
  std::vector<std::pair<Complex, int>> poles;
  std::vector<bool> used(roots.size(), false);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Complex sum = roots[i];
    int count = 1;
    used[i] = true;
    double tol = 1e-7 * (1.0 + std::abs(roots[i]));
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) <= tol) {
        sum += roots[j];
        ++count;
        used[j] = true;
      }
    }
    poles.emplace_back(sum / static_cast<double>(count), count);
  }
  return from_num_den(num_in, den_in, poles);
}

ScalarRational ScalarRational::from_num_den(
    const Poly& num_in, const Poly& den_in,
    const std::vector<std::pair<Complex, int>>& poles) {
  Poly den = poly_trim(den_in, 1e-14);
  if (den.empty()) throw InvalidInput("from_num_den: zero denominator");
  Complex lead = den.back();
  Poly num = poly_scale(poly_trim(num_in, 1e-14), Complex(1.0, 0.0) / lead);

  Complex c0(0.0, 0.0);
  std::vector<PoleTerm> terms;

  // polynomial part
  Poly rem = num;
  if (poly_degree(num) >= static_cast<int>(den.size()) - 1) {
    Poly monic_den = poly_scale(den, Complex(1.0, 0.0) / lead);
    auto [q, r] = poly_divmod(num, monic_den);
    rem = r;
    if (!q.empty()) c0 += q[0];
    for (size_t j = 1; j < q.size(); ++j)
      terms.push_back({ExtComplex::inf(), static_cast<int>(j), q[j]});
  }

  double num_scale = std::max(1e-300, max_abs(num));
  for (size_t pi = 0; pi < poles.size(); ++pi) {
    const Complex p = poles[pi].first;
    const int m = poles[pi].second;
    // Laurent principal part at p via power-series division of the shifted
    // remainder by the shifted cofactor
    Poly cof{Complex(1.0, 0.0)};
    for (size_t qi = 0; qi < poles.size(); ++qi) {
      if (qi == pi) continue;
      for (int j = 0; j < poles[qi].second; ++j)
        cof = poly_mul(cof, Poly{p - poles[qi].first, Complex(1.0, 0.0)});
    }
    Poly n_shift = poly_shift(rem, p);
    // series coefficients g with n_shift = g * cof
    std::vector<Complex> g(m, Complex(0.0, 0.0));
    Complex d0 = cof.empty() ? Complex(0.0, 0.0) : cof[0];
    if (std::abs(d0) == 0.0)
      throw NumericalError("from_num_den: pole clustering produced a zero cofactor");
    for (int i = 0; i < m; ++i) {
      Complex ni = i < static_cast<int>(n_shift.size()) ? n_shift[i]
                                                        : Complex(0.0, 0.0);
      Complex acc = ni;
      for (int j = 0; j < i; ++j) {
        Complex dij = (i - j) < static_cast<int>(cof.size())
                          ? cof[i - j]
                          : Complex(0.0, 0.0);
        acc -= g[j] * dij;
      }
      g[i] = acc / d0;
    }
    bool significant = false;
    for (int i = 0; i < m; ++i)
      if (std::abs(g[i]) > 1e-13 * num_scale) significant = true;
    if (!significant) continue;  // spurious pole cancelled by the numerator
    for (int j = 1; j <= m; ++j)
      terms.push_back({ExtComplex(p), j, g[m - j]});
  }
  return ScalarRational(c0, std::move(terms));
}

// ---------------------------------------------------------------------------
// MatrixRational
// ---------------------------------------------------------------------------

MatrixRational::MatrixRational(int s, std::vector<ScalarRational> entries)
    : s_(s), entries_(std::move(entries)) {
  if (s_ < 1 || entries_.size() != static_cast<size_t>(s_) * s_)
    throw InvalidInput("MatrixRational: entry count must be s*s");
}

MatrixRational MatrixRational::scalar(ScalarRational f) {
  return MatrixRational(1, {std::move(f)});
}

std::vector<std::pair<Complex, int>> MatrixRational::finite_poles(
    double tol) const {
  std::vector<std::pair<Complex, int>> out;
  for (const ScalarRational& e : entries_) {
    for (const auto& [p, m] : e.finite_poles()) {
      bool found = false;
      for (auto& [q, n] : out) {
        if (std::abs(q - p) <= tol * (1.0 + std::abs(p))) {
          n = std::max(n, m);
          found = true;
          break;
        }
      }
      if (!found) out.emplace_back(p, m);
    }
  }
  return out;
}

int MatrixRational::infinity_power() const {
  int p = 0;
  for (const ScalarRational& e : entries_)
    p = std::max(p, e.infinity_power());
  return p;
}

CMat MatrixRational::eval(Complex z) const {
  CMat out(s_, s_);
  for (int i = 0; i < s_; ++i)
    for (int j = 0; j < s_; ++j) out(i, j) = at(i, j).eval(z);
  return out;
}

MatrixRational MatrixRational::operator*(Complex c) const {
  std::vector<ScalarRational> entries;
  entries.reserve(entries_.size());
  for (const ScalarRational& e : entries_) entries.push_back(e * c);
  return MatrixRational(s_, std::move(entries));
}

}  // namespace specset
