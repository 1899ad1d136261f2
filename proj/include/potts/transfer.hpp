#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "potts/lattice.hpp"

namespace potts {

enum class Variant {
  periodic,
  z3_plus,
  z3_minus,
  conj,
  bulk_xdagger,
  bulk_conj,
  zn_twist,
  zn_conj
};

enum class Placement { end_seam, bulk_spread };

std::string to_string(Variant v);
/// Accepts the names printed by to_string; throws ArgumentError otherwise.
Variant parse_variant(const std::string& name);

struct ChainSpec {
  int n = 3;
  int L = 2;
  Variant variant = Variant::periodic;
  /// l for zn_twist (0 <= l < n); ignored otherwise.
  int twist = 0;

  Placement placement() const;
  /// Throws ArgumentError for L < 2, n != 3 outside the zn variants, or a
  /// twist outside [0, n).
  void validate() const;
  WeightFamily weights() const;
  Seam seam() const;
};

/// T(x) = Tr_A[G L_{AL}(x) ... L_{A1}(x)] on (C^n)^{(x)L}, site 1 slowest.
ComplexMatrix transfer_end_seam(const WeightFamily& wf, const ComplexMatrix& G, int L, cplx x);
/// T(x) = Tr_A[G L_{AL}(x) G L_{A,L-1}(x) ... G L_{A1}(x)].
ComplexMatrix transfer_bulk_seam(const WeightFamily& wf, const ComplexMatrix& G, int L, cplx x);
ComplexMatrix transfer(const ChainSpec& spec, cplx x);

struct TransferWithDerivative {
  ComplexMatrix T;
  ComplexMatrix dT;
};

/// T(x) and dT/dx from the analytic Lax derivative, in one sweep.
TransferWithDerivative transfer_with_derivative(const WeightFamily& wf, const ComplexMatrix& G,
                                                int L, cplx x, Placement placement);

/// Diagonal-to-diagonal transfer matrix of the spin model:
/// entry (a|b) = prod_j W_v(a_j, b_j|x) W_h(a_j, b_{j+1}|x), b_{L+1} = b_1.
ComplexMatrix transfer_diagonal(const WeightFamily& wf, int L, cplx x);

struct HamiltonianBundle {
  ComplexMatrix matrix;
  /// Adding additive_constant * I to matrix gives the traceless chain
  /// Hamiltonian in its usual normalization.
  double additive_constant = 0.0;
  Seam seam;
  std::vector<std::pair<std::string, ComplexMatrix>> conserved_charges;

  ComplexMatrix normalized() const;
};

/// Two-site density P L'(0), acting on (first, second) in tensor order.
ComplexMatrix local_density(const WeightFamily& wf);

/// Minus the logarithmic derivative of the transfer matrix at x = 0,
/// assembled from local densities: -sum_j h_{j,j+1} - G_L^{-1} h_{L,1} G_L
/// for an end seam, -sum_j G_j^{-1} h_{j,j+1} G_j for a bulk seam.
HamiltonianBundle hamiltonian_limit(const WeightFamily& wf, const Seam& G, int L,
                                    Placement placement);

/// Explicit operator sum -sum_j sum_{k=1}^{n-1} ([Z_j Z_{j+1}^dagger]^k + X_j^k) / sin(k pi/n)
/// with the boundary (or bulk) bonds modified according to the variant.
HamiltonianBundle named_hamiltonian(const ChainSpec& spec);

/// Least-squares fit target ~ scale * model + shift * I.
struct AffineFit {
  double scale = 0.0;
  double shift = 0.0;
  double residual = 0.0; ///< max-entry residual after the fit
};
AffineFit affine_fit(const ComplexMatrix& target, const ComplexMatrix& model);

struct ShiftReport {
  /// residuals[j-1] for the bulk relation at bond j (j <= L-2), then the
  /// boundary relation last.
  std::vector<double> residuals;
  double max_residual = 0.0;
};

/// T(0) h_{j,j+1} T(0)^{-1} = h_{j+1,j+2} and T(0) h_{L-1,L} T(0)^{-1} = G_L^{-1} h_{L,1} G_L.
ShiftReport shift_relations_check(const WeightFamily& wf, const Seam& G, int L);

cplx aux_f1(cplx x); ///< 3 tan(x) cot(x + pi/6)
cplx aux_f2(cplx x); ///< 3 tan(x - pi/6) cot(x)
cplx aux_f3(cplx x); ///< 3 tan(x - pi/6) cot(x + pi/6)

/// Sign of the last term of the cubic identity: -1 for the conjugation seam,
/// +1 for the periodic and Z(3) seams.
int functional_identity_sign(Variant v);

/// Normalized max-entry residual of
///   T(x-pi/3) T(x-pi/6) T(x) - T(0) [f1^L T(x-pi/3) + f2^L T(x) + s f3^L T(x+pi/3)]
/// with s = functional_identity_sign(variant) unless overridden.
double functional_identity_residual(Variant variant, int L, cplx x,
                                    std::optional<int> sign_override = std::nullopt);

enum class EquivalencePair { h1_vs_twisted, h2_vs_parity };

struct SimilarityReport {
  Variant reference = Variant::periodic;
  double spectral_deviation = 0.0;
  double conjugation_residual = 0.0;
};

/// Compares the bulk-seam chain with the end-seam chain selected by L mod 3
/// (X^dagger seam) or L mod 2 (C seam), both through sorted spectra and
/// through the explicit site-local unitary relating them.
SimilarityReport similarity_spectral_check(EquivalencePair pair, int L);

/// Reference end-seam variant for the bulk chain at length L.
Variant equivalence_reference(EquivalencePair pair, int L);

/// Local unitary U with U H_bulk U^dagger = H_reference: X^j on site j for
/// the X^dagger pair, C on even sites for the C pair. Both are basis
/// permutations; U e_s = e_{image[s]}.
std::vector<int> equivalence_permutation(EquivalencePair pair, int L);

} // namespace potts
