#pragma once

#include <vector>

#include "potts/transfer.hpp"

namespace potts {

enum class BetheVariant { periodic, z3_plus, z3_minus, conj };

/// Maps a chain variant to its Bethe system; throws for bulk and zn variants.
BetheVariant bethe_variant_of(Variant v);

struct BetheSystem {
  BetheVariant variant = BetheVariant::z3_plus;
  int L = 2;
  /// Q in {0,1,2} for periodic and z3, nu in {+1,-1} for conj.
  int sector = 0;
  int root_count = 0;
  /// Right-hand-side scalar: (-1)^L (periodic), (-1)^L exp(+-2 pi i Q/3) (z3),
  /// -(-1)^L (conj).
  cplx phase;
  /// Chemical-potential integer: -1 / +1 for Q = 1 / 2 on the X^dagger seam,
  /// the opposite on the X seam, 0 otherwise.
  int mu = 0;
};

/// Builds the system with the census root count for the sector.
BetheSystem make_bethe_system(BetheVariant variant, int L, int sector);

/// Census root count: z3 N0 = 2L-2, N1 = N2 = 2L-1; conj 2L; periodic N0 = 2L,
/// N1 = N2 = 2L-2.
int expected_root_count(BetheVariant variant, int L, int sector);

/// max_j |LHS_j - phase RHS_j| / (|LHS_j| + |phase RHS_j|) with
/// LHS_j = [sinh(l_j + i pi/12) / sinh(l_j - i pi/12)]^{2L},
/// RHS_j = prod_{k != j} sinh(l_j - l_k + i pi/3) / sinh(l_j - l_k - i pi/3).
/// Throws DomainError within 1e-10 of a pole configuration.
double bethe_residual(const BetheSystem& sys, const std::vector<cplx>& roots);

struct RootSet {
  std::vector<cplx> lambdas;
  double residual = 0.0;
  double energy = 0.0;
  double spin = 0.0;
  int iterations = 0;
  std::vector<double> residual_trace;
};

/// Damped Newton with analytic Jacobian on F_j = LHS_j - phase RHS_j.
/// Steps are halved (up to 20 times) until the residual decreases; stops when
/// bethe_residual < 1e-12 or after 100 iterations. Throws SolverError on
/// failure or a singular Jacobian.
RootSet newton_refine(const BetheSystem& sys, const std::vector<cplx>& seeds);

/// E = sum_j cot(pi/12 - i l_j) + i mu - 2L/sqrt(3); the imaginary part must
/// stay below imag_tolerance (else NumericalError) and is discarded.
double energy_from_roots(const BetheSystem& sys, const std::vector<cplx>& roots,
                         double imag_tolerance = 1e-9);

struct SpinResult {
  double value = 0.0; ///< reduced into (-L/2, L/2]
  double raw = 0.0;   ///< before reduction
  int branch_cut_hits = 0;
};

/// s_p = (iL/2pi) sum_k Log[sinh(l_k + i pi/12) / sinh(l_k - i pi/12)] - L mu/12.
/// A factor on the negative real axis takes Log = log|.| + i pi.
SpinResult spin_from_roots(const BetheSystem& sys, const std::vector<cplx>& roots,
                           double imag_tolerance = 1e-9);

/// Shifts each root by multiples of i pi into Im in (-pi/2 + 1e-10, pi/2 + 1e-10]
/// and sorts by (Re, Im), which places conjugate pairs next to each other.
std::vector<cplx> canonicalize_roots(const std::vector<cplx>& roots);

/// Distance between two roots modulo i pi.
double root_distance(cplx a, cplx b);

/// Smallest max-distance over all pairings of two equal-size root lists,
/// distances taken modulo i pi. Returns +inf on a size mismatch.
double multiset_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

} // namespace potts
