#pragma once

#include <cstdint>
#include <vector>

#include "specset/domain.hpp"
#include "specset/matcalc.hpp"
#include "specset/rational.hpp"

namespace specset {

struct SearchConfig {
  int degree = 3;          // powers per pole
  int s = 1;               // matrix-coefficient size, desk scale caps at 4
  int boundary_points = 512;
  int restarts = 8;
  int refine_passes = 2;   // coordinate passes per step level
  std::uint64_t seed = 0;
};

struct SearchResult {
  double k_lower = 0.0;
  MatrixRational maximizer;     // normalized to boundary sup 1
  double boundary_sup = 1.0;    // recomputed after normalization
  std::vector<double> best_trace;  // best-so-far after probes and each restart
  std::uint64_t seed = 0;
};

/// max over the boundary grid of ||F(z)||. Poles must stay off the closure;
/// a polynomial part needs a bounded domain.
double sup_boundary(const MatrixRational& f, const Domain& omega, int grid);

/// ||F(T)|| / sup_boundary(F). Requires sigma(T) inside the closure.
double vn_ratio(const MatrixRational& f, const CMat& t, const Domain& omega,
                int grid);

/// Seeded search for a lower bound on the spectral constant: maximize the
/// ratio over span{1} + span{p_lambda^j} with s x s matrix coefficients,
/// by basis probes, random draws, and cyclic coordinate refinement with a
/// halving step schedule. Deterministic in the seed.
SearchResult k_lower_bound(const CMat& t, const Domain& omega,
                           const std::vector<ExtComplex>& poles,
                           const SearchConfig& cfg);

/// Partial-fraction split: each pole's terms go to the summand whose domain
/// closure excludes the pole (ties toward the first domain); the constant
/// goes to the first summand. f = f1 + f2 identically.
std::pair<ScalarRational, ScalarRational> split_by_poles(const ScalarRational& f,
                                                         const Domain& omega1,
                                                         const Domain& omega2);

/// ||f(T) - f1(T) - f2(T)|| for the split above.
double verify_split_calculus(const ScalarRational& f, const CMat& t,
                             const Domain& omega1, const Domain& omega2);

/// (1 - eps)(T - aI) + aI: the star-shaped shrinking applied to an operator.
CMat shrink_operator(const CMat& t, Complex a, double eps);

}  // namespace specset
