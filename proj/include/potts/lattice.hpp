#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "potts/rng.hpp"
#include "potts/weights.hpp"

namespace potts {

/// Boundary twist matrix with a symbolic label. `matrix` is gauge-fixed so
/// that its first nonzero entry (row-major) equals 1.
struct Seam {
  std::string label;
  ComplexMatrix matrix;
  /// False when the matrix is not a word in X and C.
  bool recognized = true;
};

Seam identity_seam(int n);
Seam g_plus_seam(int n);  ///< X^dagger
Seam g_minus_seam(int n); ///< X
Seam g_conj_seam(int n);  ///< C
/// X^{n-l}: the seam of the omega^{-l} twisted Z(n) chain.
Seam zn_twist_seam(int n, int l);

/// Scales M so that its first nonzero entry (row-major, |m| > 1e-12) is 1.
ComplexMatrix normalize_gauge(const ComplexMatrix& M);

/// Labels a gauge-fixed n x n matrix as a word X^k C^e, or returns an
/// unrecognized seam.
Seam label_seam(const ComplexMatrix& G);

/// Lax operator acting on aux (x) phys, row index aux*n + phys:
/// L[(a,b),(c,d)] = delta_{ad} W_h(b,a|x) W_v(b,c|x). At x = 0 it is the
/// permutation P.
ComplexMatrix lax(const WeightFamily& wf, cplx x);
/// Derivative of the Lax operator with respect to x.
ComplexMatrix lax_derivative(const WeightFamily& wf, cplx x);

ComplexMatrix permutation_operator(int n);

/// R[(a,b),(c,a)] = W_h(b,a|x) W_v(b,c|x-y) / W_h(c,a|y), so R(x,0) = lax(x).
ComplexMatrix r_matrix(const WeightFamily& wf, cplx x, cplx y);

/// Normalized max-entry residual of R12(x,y) L13(x) L23(y) = L23(y) L13(x) R12(x,y).
double ybe_residual(const WeightFamily& wf, cplx x, cplx y);

/// Normalized max-entry residual of [R(x,y), G (x) G].
double seam_residual(const WeightFamily& wf, const ComplexMatrix& G, cplx x, cplx y);

struct SeamDiscovery {
  std::vector<Seam> seams;
  /// Dimension of the linear commutant of the sampled R-matrices (n^2 x n^2
  /// matrices K with [R, K] = 0 at every sampled pair).
  int commutant_dimension = 0;
  int monomial_candidates = 0;
  int continuous_starts = 0;
  int continuous_solutions = 0;
  double max_certification_residual = 0.0;
  std::vector<std::string> flagged;
};

/// Finds the invertible G with [R(x,y), G (x) G] = 0 for all x, y.
///
/// Candidates come from an exhaustive scan of monomial matrices (permutation
/// times n-th roots of unity, n <= 5) and from Gauss-Newton runs on the
/// stacked residual over `trials` sampled pairs, started from seeded random
/// matrices. Every survivor is certified on 5 fresh pairs, the set is closed
/// under multiplication, and the result is sorted by matrix entries.
SeamDiscovery discover_seams(const WeightFamily& wf, int trials, std::uint64_t seed);

/// Draws a spectral parameter uniformly from (0.02, pi/6 - 0.02).
double sample_spectral_parameter(CounterRng& rng);

} // namespace potts
