#include "specset/ksearch.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace specset {

namespace {

void require_poles_off_closure(const MatrixRational& f, const Domain& omega) {
  for (const auto& [p, m] : f.finite_poles()) {
    if (omega.contains(ExtComplex(p), 0.0) ||
        omega.boundary_distance(p) <= 1e-12 * (1.0 + std::abs(p)))
      throw InvalidInput("sup_boundary: pole inside the domain closure");
  }
  if (f.infinity_power() > 0 && omega.closure_contains_infinity())
    throw InvalidInput("sup_boundary: polynomial part on an unbounded domain");
}

void require_spectrum_inside(const CMat& t, const Domain& omega) {
  CVec eig = eigenvalues(t);
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    Complex z = eig(i);
    if (!omega.contains(ExtComplex(z), 1e-9 * (1.0 + std::abs(z))) &&
        omega.boundary_distance(z) > 1e-9 * (1.0 + std::abs(z)))
      throw InvalidInput("vn_ratio: spectrum leaves the domain closure");
  }
}

}  // namespace

double sup_boundary(const MatrixRational& f, const Domain& omega, int grid) {
  require_poles_off_closure(f, omega);
  double sup = 0.0;
  for (Complex z : boundary_grid(omega, grid)) sup = std::max(sup, opnorm(f.eval(z)));
  return sup;
}

double vn_ratio(const MatrixRational& f, const CMat& t, const Domain& omega,
                int grid) {
  require_poles_off_closure(f, omega);
  require_spectrum_inside(t, omega);
  double sup = sup_boundary(f, omega, grid);
  if (sup <= 0.0) throw InvalidInput("vn_ratio: zero boundary sup");
  return opnorm(eval_matrix_rational(f, t)) / sup;
}

namespace {

struct SearchWorkspace {
  std::vector<ScalarRational> basis;
  std::vector<CMat> basis_on_t;          // basis_b(T)
  std::vector<std::vector<Complex>> basis_on_boundary;  // [b][grid point]
  int s = 1;
  Eigen::Index dim = 0;

  // coefficients: one s x s complex matrix per basis element, flattened
  // into real degrees of freedom
  int dof_count() const {
    return static_cast<int>(basis.size()) * s * s * 2;
  }

  CMat coefficient(const std::vector<double>& x, int b) const {
    CMat c(s, s);
    int base = b * s * s * 2;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) {
        int at = base + (i * s + j) * 2;
        c(i, j) = Complex(x[at], x[at + 1]);
      }
    return c;
  }

  double objective(const std::vector<double>& x) const {
    const int nb = static_cast<int>(basis.size());
    std::vector<CMat> coeffs(nb);
    for (int b = 0; b < nb; ++b) coeffs[b] = coefficient(x, b);

    double sup = 0.0;
    const size_t npts = basis_on_boundary.empty() ? 0 : basis_on_boundary[0].size();
    for (size_t k = 0; k < npts; ++k) {
      CMat value = CMat::Zero(s, s);
      for (int b = 0; b < nb; ++b) value += basis_on_boundary[b][k] * coeffs[b];
      sup = std::max(sup, opnorm(value));
    }
    if (sup < 1e-12) return -1.0;

    CMat ft = CMat::Zero(s * dim, s * dim);
    for (int b = 0; b < nb; ++b)
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
          ft.block(i * dim, j * dim, dim, dim) += coeffs[b](i, j) * basis_on_t[b];
    return opnorm(ft) / sup;
  }

  MatrixRational assemble(const std::vector<double>& x) const {
    const int nb = static_cast<int>(basis.size());
    std::vector<ScalarRational> entries(s * s);
    for (int b = 0; b < nb; ++b) {
      CMat c = coefficient(x, b);
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
          entries[i * s + j] = entries[i * s + j] + basis[b] * c(i, j);
    }
    return MatrixRational(s, std::move(entries));
  }
};

// cyclic coordinate refinement with a halving step schedule (0.5 down to
// 1e-4) and a zero-snap probe per coordinate
double refine(SearchWorkspace& ws, std::vector<double>& x, double value,
              int passes_per_level) {
  const int n = ws.dof_count();
  for (double step = 0.5; step >= 1e-4; step *= 0.5) {
    for (int pass = 0; pass < passes_per_level; ++pass) {
      for (int i = 0; i < n; ++i) {
        double original = x[i];
        double scale = std::max(1.0, std::abs(original));
        double best = value;
        double best_x = original;
        for (double candidate :
             {original + step * scale, original - step * scale, 0.0}) {
          x[i] = candidate;
          double v = ws.objective(x);
          if (v > best + 1e-15 || (candidate == 0.0 && v >= best)) {
            best = v;
            best_x = candidate;
          }
        }
        x[i] = best_x;
        value = best;
      }
    }
  }
  return value;
}

}  // namespace

SearchResult k_lower_bound(const CMat& t, const Domain& omega,
                           const std::vector<ExtComplex>& poles,
                           const SearchConfig& cfg) {
  require_finite(t, "k_lower_bound");
  if (cfg.degree < 1 || cfg.restarts < 0 || cfg.boundary_points < 16 ||
      cfg.s < 1 || cfg.s > 4 || cfg.refine_passes < 1)
    throw InvalidInput("k_lower_bound: bad search configuration");
  if (!pole_set_valid(poles, omega))
    throw InvalidInput("k_lower_bound: pole set does not cover the complement");
  require_spectrum_inside(t, omega);

  SearchWorkspace ws;
  ws.s = cfg.s;
  ws.dim = t.rows();
  ws.basis.push_back(ScalarRational(Complex(1, 0)));
  for (const ExtComplex& lambda : poles)
    for (int j = 1; j <= cfg.degree; ++j)
      ws.basis.push_back(ScalarRational::pole_power(lambda, j));

  std::vector<Complex> grid_pts = boundary_grid(omega, cfg.boundary_points);
  for (const ScalarRational& b : ws.basis) {
    ws.basis_on_t.push_back(eval_on_matrix(b, t));
    std::vector<Complex> row;
    row.reserve(grid_pts.size());
    for (Complex z : grid_pts) row.push_back(b.eval(z));
    ws.basis_on_boundary.push_back(std::move(row));
  }

  SearchResult result;
  result.seed = cfg.seed;
  std::vector<double> best_x(ws.dof_count(), 0.0);
  double best = -1.0;

  // deterministic probes: each basis element with an identity coefficient
  for (size_t b = 0; b < ws.basis.size(); ++b) {
    std::vector<double> x(ws.dof_count(), 0.0);
    for (int i = 0; i < cfg.s; ++i)
      x[(b * cfg.s * cfg.s + i * cfg.s + i) * 2] = 1.0;
    double v = ws.objective(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  result.best_trace.push_back(best);

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ULL + restart + 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(ws.dof_count());
    for (double& v : x) v = gauss(rng);
    double value = ws.objective(x);
    value = refine(ws, x, value, cfg.refine_passes);
    if (value > best) {
      best = value;
      best_x = x;
    }
    result.best_trace.push_back(best);
  }

  // polish the incumbent and normalize it to boundary sup 1
  double polished = refine(ws, best_x, ws.objective(best_x), cfg.refine_passes);
  best = std::max(best, polished);
  MatrixRational f = ws.assemble(best_x);
  double sup = sup_boundary(f, omega, cfg.boundary_points);
  if (sup > 0.0) f = f * Complex(1.0 / sup, 0.0);
  result.maximizer = f;
  result.boundary_sup = sup_boundary(f, omega, cfg.boundary_points);
  result.k_lower = best;
  return result;
}

std::pair<ScalarRational, ScalarRational> split_by_poles(const ScalarRational& f,
                                                         const Domain& omega1,
                                                         const Domain& omega2) {
  auto closure_has = [](const Domain& omega, const ExtComplex& z) {
    if (z.is_inf()) return omega.closure_contains_infinity();
    Complex zz = z.value();
    return omega.contains(z, 0.0) ||
           omega.boundary_distance(zz) <= 1e-12 * (1.0 + std::abs(zz));
  };

  std::vector<PoleTerm> terms1, terms2;
  for (const PoleTerm& term : f.terms()) {
    bool in1 = closure_has(omega1, term.pole);
    bool in2 = closure_has(omega2, term.pole);
    if (in1 && in2)
      throw InvalidInput("split_by_poles: pole " + to_string(term.pole) +
                         " lies in both closures");
    if (!in1)
      terms1.push_back(term);
    else
      terms2.push_back(term);
  }
  ScalarRational f1(f.constant(), std::move(terms1));
  ScalarRational f2(Complex(0, 0), std::move(terms2));
  return {f1, f2};
}

double verify_split_calculus(const ScalarRational& f, const CMat& t,
                             const Domain& omega1, const Domain& omega2) {
  auto [f1, f2] = split_by_poles(f, omega1, omega2);
  CMat whole = eval_on_matrix(f, t);
  CMat parts = eval_on_matrix(f1, t) + eval_on_matrix(f2, t);
  return opnorm(whole - parts);
}

CMat shrink_operator(const CMat& t, Complex a, double eps) {
  require_finite(t, "shrink_operator");
  if (!(eps >= 0.0 && eps < 1.0))
    throw InvalidInput("shrink_operator: eps must lie in [0, 1)");
  const Eigen::Index n = t.rows();
  return (1.0 - eps) * (t - a * CMat::Identity(n, n)) + a * CMat::Identity(n, n);
}

}  // namespace specset
