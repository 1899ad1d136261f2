#include "potts/algebra.hpp"

#include <cmath>
#include <string>

#include "potts/errors.hpp"

namespace potts {

int ipow(int base, int exp) {
  int r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

ComplexMatrix weyl_unit(int n, int i, int j) {
  if (n < 1 || i < 1 || j < 1 || i > n || j > n)
    throw ArgumentError("weyl_unit: index (" + std::to_string(i) + "," +
                        std::to_string(j) + ") out of range for n=" +
                        std::to_string(n));
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i - 1, j - 1) = 1.0;
  return e;
}

SiteAlgebra site_algebra(int n) {
  if (n < 2) throw ArgumentError("site_algebra: n must be >= 2");
  SiteAlgebra s;
  s.n = n;
  s.omega = std::polar(1.0, 2.0 * kPi / n);
  s.Z = ComplexMatrix::Zero(n, n);
  s.X = ComplexMatrix::Zero(n, n);
  s.C = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    // exact powers of omega, avoids accumulated rounding from repeated products
    s.Z(j, j) = std::polar(1.0, 2.0 * kPi * j / n);
    s.X((j + 1) % n, j) = 1.0;
    s.C((n - j) % n, j) = 1.0;
  }
  return s;
}

namespace {

void check_site(int site, int L, const char* who) {
  if (L < 1 || site < 1 || site > L)
    throw ArgumentError(std::string(who) + ": site " + std::to_string(site) +
                        " out of range for L=" + std::to_string(L));
}

} // namespace

ComplexMatrix embed_at_site(const ComplexMatrix& op, int site, int L, int n) {
  return embed_product({{site, op}}, L, n);
}

ComplexMatrix embed_product(const std::vector<std::pair<int, ComplexMatrix>>& ops,
                            int L, int n) {
  if (n < 1) throw ArgumentError("embed_product: n must be positive");
  // Merge operators per slot.
  std::vector<ComplexMatrix> local(L + 1);
  std::vector<bool> used(L + 1, false);
  for (const auto& [site, op] : ops) {
    check_site(site, L, "embed_product");
    if (op.rows() != n || op.cols() != n)
      throw ArgumentError("embed_product: operator must be n x n");
    local[site] = used[site] ? ComplexMatrix(local[site] * op) : op;
    used[site] = true;
  }
  ComplexMatrix out = ComplexMatrix::Ones(1, 1);
  for (int s = 1; s <= L; ++s)
    out = kron(out, used[s] ? local[s] : ComplexMatrix::Identity(n, n));
  return out;
}

ComplexMatrix embed_two_site(const ComplexMatrix& op, int first, int second,
                             int L, int n) {
  check_site(first, L, "embed_two_site");
  check_site(second, L, "embed_two_site");
  if (first == second) throw ArgumentError("embed_two_site: slots must differ");
  if (op.rows() != n * n || op.cols() != n * n)
    throw ArgumentError("embed_two_site: operator must be n^2 x n^2");

  const int dim = ipow(n, L);
  const int s1 = ipow(n, L - first);
  const int s2 = ipow(n, L - second);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    const int a_in = (c / s1) % n;
    const int b_in = (c / s2) % n;
    const int base = c - a_in * s1 - b_in * s2;
    const int col = a_in * n + b_in;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const cplx v = op(a * n + b, col);
        if (v != cplx(0.0)) out(base + a * s1 + b * s2, c) += v;
      }
  }
  return out;
}

ComplexMatrix global_charge(ChargeKind kind, int L, int n) {
  if (L < 1) throw ArgumentError("global_charge: L must be >= 1");
  const SiteAlgebra alg = site_algebra(n);
  const ComplexMatrix& g = kind == ChargeKind::z3 ? alg.X : alg.C;
  ComplexMatrix out = ComplexMatrix::Ones(1, 1);
  for (int s = 0; s < L; ++s) out = kron(out, g);
  return out;
}

double commutant_residual(const ComplexMatrix& A, const ComplexMatrix& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw ArgumentError("commutant_residual: dimension mismatch");
  return max_abs(A * B - B * A);
}

double max_abs(const ComplexMatrix& M) {
  return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& M) {
  if (M.rows() != M.cols()) throw ArgumentError("hermiticity_defect: not square");
  return max_abs(M - M.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B) {
  ComplexMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

} // namespace potts
