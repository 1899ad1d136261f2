#include <algorithm>
#include <cmath>

#include "potts/errors.hpp"
#include "potts/transfer.hpp"

namespace potts {

namespace {

enum class BondKind { plain, conj };

struct Bond {
  BondKind kind = BondKind::plain;
  int twist = 0; ///< plain bonds carry [omega^{-twist} Z_j Z_{j+1}^dagger]^k
};

std::vector<int> state_digits(int s, int n, int L) {
  std::vector<int> d(L);
  for (int j = L - 1; j >= 0; --j) {
    d[j] = s % n;
    s /= n;
  }
  return d;
}

// -sum_bonds sum_k c_k B_j^k - sum_j sum_k c_k X_j^k, c_k = 1/sin(k pi/n),
// where bonds[j] couples sites j+1 and (j+1) mod L + 1.
ComplexMatrix clock_chain(int n, int L, const std::vector<Bond>& bonds) {
  const int D = ipow(n, L);
  std::vector<double> coef(n, 0.0);
  for (int k = 1; k < n; ++k) coef[k] = 1.0 / std::sin(k * kPi / n);
  std::vector<cplx> omega_pow(n);
  for (int k = 0; k < n; ++k) omega_pow[k] = std::polar(1.0, 2.0 * kPi * k / n);

  ComplexMatrix H = ComplexMatrix::Zero(D, D);
  for (int s = 0; s < D; ++s) {
    const std::vector<int> d = state_digits(s, n, L);
    cplx diag = 0.0;
    for (int j = 0; j < L; ++j) {
      const int a = d[j], b = d[(j + 1) % L];
      const Bond& bond = bonds[j];
      const int base = bond.kind == BondKind::plain ? a - b - bond.twist : a + b;
      for (int k = 1; k < n; ++k) diag -= coef[k] * omega_pow[(((k * base) % n) + n) % n];
    }
    H(s, s) += diag.real();
    // X_j^k raises the digit of site j by k.
    for (int j = 0; j < L; ++j) {
      const int stride = ipow(n, L - 1 - j);
      for (int k = 1; k < n; ++k) {
        const int raised = (d[j] + k) % n;
        const int t = s + (raised - d[j]) * stride;
        H(t, s) -= coef[k];
      }
    }
  }
  return H;
}

} // namespace

HamiltonianBundle named_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n, L = spec.L;
  std::vector<Bond> bonds(L);
  Bond& boundary = bonds[L - 1];
  switch (spec.variant) {
  case Variant::periodic: break;
  case Variant::z3_plus: boundary.twist = 1; break;
  case Variant::z3_minus: boundary.twist = n - 1; break;
  case Variant::conj:
  case Variant::zn_conj: boundary.kind = BondKind::conj; break;
  case Variant::zn_twist: boundary.twist = spec.twist; break;
  case Variant::bulk_xdagger:
    for (Bond& b : bonds) b.twist = 1;
    break;
  case Variant::bulk_conj:
    for (Bond& b : bonds) b.kind = BondKind::conj;
    break;
  }
  HamiltonianBundle out;
  out.matrix = clock_chain(n, L, bonds);
  out.seam = spec.seam();
  const ComplexMatrix shift = global_charge(ChargeKind::z3, L, n);
  const ComplexMatrix conjugation = global_charge(ChargeKind::z2, L, n);
  const bool has_shift = spec.variant != Variant::conj && spec.variant != Variant::zn_conj &&
                         spec.variant != Variant::bulk_conj;
  const bool untwisted = spec.variant == Variant::periodic ||
                         (spec.variant == Variant::zn_twist && spec.twist == 0);
  const bool has_conj = untwisted || spec.variant == Variant::conj ||
                        spec.variant == Variant::zn_conj || spec.variant == Variant::bulk_conj;
  if (has_shift) out.conserved_charges.emplace_back("z3", shift);
  if (has_conj) out.conserved_charges.emplace_back("z2", conjugation);
  return out;
}

Variant equivalence_reference(EquivalencePair pair, int L) {
  if (pair == EquivalencePair::h1_vs_twisted) {
    switch (L % 3) {
    case 0: return Variant::periodic;
    case 1: return Variant::z3_plus;
    default: return Variant::z3_minus;
    }
  }
  return L % 2 == 0 ? Variant::periodic : Variant::conj;
}

std::vector<int> equivalence_permutation(EquivalencePair pair, int L) {
  const int n = 3, D = ipow(n, L);
  std::vector<int> image(D);
  for (int s = 0; s < D; ++s) {
    std::vector<int> d = state_digits(s, n, L);
    for (int j = 1; j <= L; ++j) {
      int& digit = d[j - 1];
      if (pair == EquivalencePair::h1_vs_twisted)
        digit = (digit + j) % n;
      else if (j % 2 == 0)
        digit = (n - digit) % n;
    }
    int t = 0;
    for (int digit : d) t = t * n + digit;
    image[s] = t;
  }
  return image;
}

SimilarityReport similarity_spectral_check(EquivalencePair pair, int L) {
  if (L < 2 || L > 7) throw ArgumentError("similarity_spectral_check: L must be in 2..7");
  ChainSpec bulk;
  bulk.L = L;
  bulk.variant =
      pair == EquivalencePair::h1_vs_twisted ? Variant::bulk_xdagger : Variant::bulk_conj;
  ChainSpec ref;
  ref.L = L;
  ref.variant = equivalence_reference(pair, L);

  const ComplexMatrix Hb = named_hamiltonian(bulk).matrix;
  const ComplexMatrix Hr = named_hamiltonian(ref).matrix;

  SimilarityReport rep;
  rep.reference = ref.variant;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eb(Hb, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> er(Hr, Eigen::EigenvaluesOnly);
  if (eb.info() != Eigen::Success || er.info() != Eigen::Success)
    throw NumericalError("similarity_spectral_check: eigensolver failed");
  rep.spectral_deviation = (eb.eigenvalues() - er.eigenvalues()).cwiseAbs().maxCoeff();

  // (U H U^dagger)[image[r], image[c]] = H[r, c] for the permutation U.
  const std::vector<int> image = equivalence_permutation(pair, L);
  const int D = static_cast<int>(Hb.rows());
  double worst = 0.0;
  for (int c = 0; c < D; ++c)
    for (int r = 0; r < D; ++r)
      worst = std::max(worst, std::abs(Hb(r, c) - Hr(image[r], image[c])));
  rep.conjugation_residual = worst;
  return rep;
}

} // namespace potts
