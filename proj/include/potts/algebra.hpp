#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace potts {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Integer power for small non-negative exponents (basis dimensions n^L).
int ipow(int base, int exp);

/// e_{ij} with 1-based indices: a single 1 at row i, column j.
ComplexMatrix weyl_unit(int n, int i, int j);

/// Generators of the Z(n) clock algebra on one site.
///
/// Z = diag(1, w, ..., w^{n-1}); X shifts basis state j to j+1 (mod n), so
/// X(j+1 mod n, j) = 1; C fixes state 0 and reverses the others, which for
/// n = 3 swaps states 1 and 2 (charge conjugation).
struct SiteAlgebra {
  int n = 0;
  cplx omega;
  ComplexMatrix Z;
  ComplexMatrix X;
  ComplexMatrix C;
};

SiteAlgebra site_algebra(int n);

/// I (x) ... (x) op (x) ... (x) I with op in slot `site` (1-based, slot 1 is
/// the leftmost, slowest-varying factor).
ComplexMatrix embed_at_site(const ComplexMatrix& op, int site, int L, int n);

/// Product of single-site operators, each placed at its own slot. Operators
/// listed for the same slot are multiplied left to right.
ComplexMatrix embed_product(const std::vector<std::pair<int, ComplexMatrix>>& ops,
                            int L, int n);

/// Embeds an n^2 x n^2 two-site operator acting on (first, second) in that
/// tensor order. Slots need not be adjacent and may wrap (e.g. (L, 1)).
ComplexMatrix embed_two_site(const ComplexMatrix& op, int first, int second,
                             int L, int n);

enum class ChargeKind {
  z3, ///< product of shift generators X_j (the Z(n) charge for general n)
  z2  ///< product of conjugations C_j
};

ComplexMatrix global_charge(ChargeKind kind, int L, int n);

/// max_ij |(AB - BA)_ij|
double commutant_residual(const ComplexMatrix& A, const ComplexMatrix& B);

double max_abs(const ComplexMatrix& M);

/// max_ij |M_ij - conj(M_ji)|
double hermiticity_defect(const ComplexMatrix& M);

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B);

} // namespace potts
