#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "potts/transfer.hpp"

namespace potts {

struct EigenState {
  ComplexVector vector;
  double energy = 0.0;
  /// Expectation values of the conserved charges ("z3", "z2").
  std::map<std::string, cplx> charges;
  /// Index of the H-eigenspace (equal energies share a group).
  int degeneracy_group = 0;
  /// Q in {0,1,2} (O_{Z(3)} eigenvalue omega^{-Q}) or nu in {+1,-1}.
  int sector = 0;
  double eig_residual = 0.0;
};

struct EigenSystem {
  Eigen::VectorXd values;
  ComplexMatrix vectors;
};

/// Full Hermitian eigendecomposition, eigenvalues ascending.
EigenSystem eigensolve_hermitian(const ComplexMatrix& H);

/// Eigenstates of the named chain, resolved jointly with the charge
/// (O_{Z(3)} for periodic and z3 variants, O_{Z(2)} for conj) and, inside
/// any remaining degenerate block, with T(0.09). Ordered by (sector, energy)
/// with ties kept in resolution order.
std::vector<EigenState> resolve_sectors(const ComplexMatrix& H, const ChainSpec& spec);

/// Q from an O_{Z(3)} eigenvalue c = omega^{-Q}.
int z3_sector_of(cplx eigenvalue);

/// Which charge labels the sectors of a variant: "z3" or "z2".
std::string sector_charge(Variant v);

/// Lambda(x) for one state: (T v)_i / v_i at the largest component, after
/// checking |T v - Lambda v| <= 1e-8 max|T| |v|_1. Throws DegeneracyError
/// when the check fails.
cplx lambda_of_x(const EigenState& state, const ChainSpec& spec, cplx x);

/// Lambda(x) for many states from one transfer matrix.
std::vector<cplx> lambda_batch(const ComplexMatrix& T, const std::vector<EigenState>& states);

struct LambdaForm {
  int mu = 0;
  int root_count = 0;
  /// Zeros in xi = pi/6 - x, real part reduced to (-pi/2, pi/2].
  std::vector<cplx> zeros_xi;
  /// Lambda(pi/6), which is 1 for a normalized eigenvalue.
  cplx normalization_check;
  /// Coefficients c_k of w^k, k = lo..hi, of Lambda(x) [g(x) g1(x)]^L with w = e^{2ix}.
  int lo = 0;
  int hi = 0;
  std::vector<cplx> coefficients;
  double reconstruction_error = 0.0;
  /// A kept or trimmed coefficient lies within a factor 10 of the threshold.
  bool flagged = false;

  cplx evaluate(cplx x, int L) const;
  cplx derivative(cplx x, int L) const;
};

/// Sample points x_m = -pi/2 + 0.013 + pi m / M, M = 4L + 9.
std::vector<double> lambda_sample_grid(int L);

/// Fits a LambdaForm from Lambda values on the sample grid (w-exponents
/// -(L+1)..L+1) and validates it on `holdout` pairs (x, Lambda(x)).
LambdaForm fit_lambda_form(const std::vector<cplx>& samples, int L,
                           const std::vector<std::pair<double, cplx>>& holdout);

/// Held-out validation points used by interpolate_lambda_form.
std::vector<double> lambda_holdout_grid();

LambdaForm interpolate_lambda_form(const EigenState& state, const ChainSpec& spec);

/// Forms for all states, sharing the transfer matrices across states.
std::vector<LambdaForm> interpolate_lambda_forms(const std::vector<EigenState>& states,
                                                 const ChainSpec& spec);

/// lambda_k = -i (xi_k - pi/12), canonicalized to Im in (-pi/2, pi/2].
std::vector<cplx> seeds_from_lambda(const LambdaForm& form);

} // namespace potts
