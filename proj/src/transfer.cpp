#include "potts/transfer.hpp"

#include <cmath>

#include "potts/errors.hpp"

namespace potts {

std::string to_string(Variant v) {
  switch (v) {
  case Variant::periodic: return "periodic";
  case Variant::z3_plus: return "z3_plus";
  case Variant::z3_minus: return "z3_minus";
  case Variant::conj: return "conj";
  case Variant::bulk_xdagger: return "bulk_xdagger";
  case Variant::bulk_conj: return "bulk_conj";
  case Variant::zn_twist: return "zn_twist";
  case Variant::zn_conj: return "zn_conj";
  }
  throw ArgumentError("unknown variant");
}

Variant parse_variant(const std::string& name) {
  for (Variant v : {Variant::periodic, Variant::z3_plus, Variant::z3_minus, Variant::conj,
                    Variant::bulk_xdagger, Variant::bulk_conj, Variant::zn_twist,
                    Variant::zn_conj})
    if (to_string(v) == name) return v;
  throw ArgumentError("unknown variant '" + name + "'");
}

Placement ChainSpec::placement() const {
  return variant == Variant::bulk_xdagger || variant == Variant::bulk_conj
             ? Placement::bulk_spread
             : Placement::end_seam;
}

void ChainSpec::validate() const {
  if (L < 2) throw ArgumentError("chain length must be >= 2");
  const bool zn = variant == Variant::zn_twist || variant == Variant::zn_conj;
  if (zn && n < 2) throw ArgumentError("zn variants need n >= 2");
  if (!zn && n != 3) throw ArgumentError(to_string(variant) + " is defined for n = 3 only");
  if (variant == Variant::zn_twist && (twist < 0 || twist >= n))
    throw ArgumentError("twist l must satisfy 0 <= l < n");
}

WeightFamily ChainSpec::weights() const {
  validate();
  return n == 3 && variant != Variant::zn_twist && variant != Variant::zn_conj ? potts3_weights()
                                                                              : fz_weights(n);
}

Seam ChainSpec::seam() const {
  validate();
  switch (variant) {
  case Variant::periodic: return identity_seam(n);
  case Variant::z3_plus:
  case Variant::bulk_xdagger: return g_plus_seam(n);
  case Variant::z3_minus: return g_minus_seam(n);
  case Variant::conj:
  case Variant::bulk_conj:
  case Variant::zn_conj: return g_conj_seam(n);
  case Variant::zn_twist: return zn_twist_seam(n, twist);
  }
  throw ArgumentError("unknown variant");
}

namespace {

// Monodromy slab: rows aux*D + phys, columns likewise; starts as identity.
// apply_pair contracts a two-site operator on (aux, site) into the rows.
void apply_pair(ComplexMatrix& S, const ComplexMatrix& op, int n, int L, int site) {
  const int D = ipow(n, L);
  const int stride = ipow(n, L - site);
  const Eigen::Index cols = S.cols();
  ComplexMatrix gathered(n * n, cols);
  std::vector<int> rows(n * n);
  for (int rest = 0; rest < D / n; ++rest) {
    // Insert a zero digit at the site's position to get the base index.
    const int high = rest / stride, low = rest % stride;
    const int base = high * stride * n + low;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        rows[a * n + b] = a * D + base + b * stride;
        gathered.row(a * n + b) = S.row(rows[a * n + b]);
      }
    const ComplexMatrix out = op * gathered;
    for (int k = 0; k < n * n; ++k) S.row(rows[k]) = out.row(k);
  }
}

void apply_aux(ComplexMatrix& S, const ComplexMatrix& G, int n, int D) {
  ComplexMatrix out = ComplexMatrix::Zero(S.rows(), S.cols());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G(a, b) != cplx(0.0)) out.middleRows(a * D, D) += G(a, b) * S.middleRows(b * D, D);
  S = std::move(out);
}

// Tr_A of an aux-block matrix: sum_a block (a, a).
ComplexMatrix aux_trace(const ComplexMatrix& S, int n, int D) {
  ComplexMatrix T = ComplexMatrix::Zero(D, D);
  for (int a = 0; a < n; ++a) T += S.block(a * D, a * D, D, D);
  return T;
}

void check_transfer_args(const WeightFamily& wf, const ComplexMatrix& G, int L) {
  if (L < 1) throw ArgumentError("transfer: L must be >= 1");
  if (G.rows() != wf.n || G.cols() != wf.n) throw ArgumentError("transfer: seam must be n x n");
}

ComplexMatrix sweep(const WeightFamily& wf, const ComplexMatrix& G, int L, cplx x,
                    Placement placement) {
  check_transfer_args(wf, G, L);
  const int n = wf.n, D = ipow(n, L);
  const ComplexMatrix Lx = lax(wf, x);
  ComplexMatrix S = ComplexMatrix::Identity(n * D, n * D);
  for (int j = 1; j <= L; ++j) {
    apply_pair(S, Lx, n, L, j);
    if (placement == Placement::bulk_spread) apply_aux(S, G, n, D);
  }
  if (placement == Placement::end_seam) apply_aux(S, G, n, D);
  return aux_trace(S, n, D);
}

} // namespace

ComplexMatrix transfer_end_seam(const WeightFamily& wf, const ComplexMatrix& G, int L, cplx x) {
  return sweep(wf, G, L, x, Placement::end_seam);
}

ComplexMatrix transfer_bulk_seam(const WeightFamily& wf, const ComplexMatrix& G, int L, cplx x) {
  return sweep(wf, G, L, x, Placement::bulk_spread);
}

ComplexMatrix transfer(const ChainSpec& spec, cplx x) {
  return sweep(spec.weights(), spec.seam().matrix, spec.L, x, spec.placement());
}

TransferWithDerivative transfer_with_derivative(const WeightFamily& wf, const ComplexMatrix& G,
                                                int L, cplx x, Placement placement) {
  check_transfer_args(wf, G, L);
  const int n = wf.n, D = ipow(n, L);
  const ComplexMatrix Lx = lax(wf, x), dLx = lax_derivative(wf, x);
  ComplexMatrix S = ComplexMatrix::Identity(n * D, n * D);
  ComplexMatrix dS = ComplexMatrix::Zero(n * D, n * D);
  for (int j = 1; j <= L; ++j) {
    ComplexMatrix term = S;
    apply_pair(term, dLx, n, L, j);
    apply_pair(dS, Lx, n, L, j);
    dS += term;
    apply_pair(S, Lx, n, L, j);
    if (placement == Placement::bulk_spread) {
      apply_aux(S, G, n, D);
      apply_aux(dS, G, n, D);
    }
  }
  if (placement == Placement::end_seam) {
    apply_aux(S, G, n, D);
    apply_aux(dS, G, n, D);
  }
  return {aux_trace(S, n, D), aux_trace(dS, n, D)};
}

ComplexMatrix transfer_diagonal(const WeightFamily& wf, int L, cplx x) {
  if (L < 1) throw ArgumentError("transfer_diagonal: L must be >= 1");
  const int n = wf.n, D = ipow(n, L);
  ComplexMatrix wv(n, n), wh(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      wv(a, b) = wf.wv(a, b, x);
      wh(a, b) = wf.wh(a, b, x);
    }
  auto digits = [n, L](int s) {
    std::vector<int> d(L);
    for (int j = L - 1; j >= 0; --j) {
      d[j] = s % n;
      s /= n;
    }
    return d;
  };
  std::vector<std::vector<int>> states(D);
  for (int s = 0; s < D; ++s) states[s] = digits(s);
  ComplexMatrix T(D, D);
  for (int r = 0; r < D; ++r)
    for (int c = 0; c < D; ++c) {
      const auto& a = states[r];
      const auto& b = states[c];
      cplx p = 1.0;
      for (int j = 0; j < L && p != cplx(0.0); ++j) p *= wv(a[j], b[j]) * wh(a[j], b[(j + 1) % L]);
      T(r, c) = p;
    }
  return T;
}

ComplexMatrix HamiltonianBundle::normalized() const {
  return matrix + additive_constant * ComplexMatrix::Identity(matrix.rows(), matrix.cols());
}

ComplexMatrix local_density(const WeightFamily& wf) {
  return permutation_operator(wf.n) * lax_derivative(wf, 0.0);
}

namespace {

ComplexMatrix conjugate_on_site(const ComplexMatrix& op, const ComplexMatrix& G, int site, int L,
                                int n) {
  const ComplexMatrix Gs = embed_at_site(G, site, L, n);
  const ComplexMatrix Gi = embed_at_site(G.inverse(), site, L, n);
  return Gi * op * Gs;
}

void require_invertible(const ComplexMatrix& G) {
  Eigen::JacobiSVD<ComplexMatrix> svd(G);
  const auto& s = svd.singularValues();
  if (!(s(s.size() - 1) > 1e-12 * s(0))) throw ArgumentError("seam matrix is not invertible");
}

} // namespace

HamiltonianBundle hamiltonian_limit(const WeightFamily& wf, const Seam& G, int L,
                                    Placement placement) {
  if (L < 2) throw ArgumentError("hamiltonian_limit: L must be >= 2");
  require_invertible(G.matrix);
  const int n = wf.n, D = ipow(n, L);
  const ComplexMatrix h = local_density(wf);
  ComplexMatrix H = ComplexMatrix::Zero(D, D);
  for (int j = 1; j <= L; ++j) {
    const int k = j % L + 1;
    const ComplexMatrix term = embed_two_site(h, j, k, L, n);
    if (placement == Placement::bulk_spread)
      H -= conjugate_on_site(term, G.matrix, j, L, n);
    else if (j == L)
      H -= conjugate_on_site(term, G.matrix, L, L, n);
    else
      H -= term;
  }
  HamiltonianBundle out;
  out.additive_constant = -H.trace().real() / D;
  out.matrix = std::move(H);
  out.seam = G;
  return out;
}

AffineFit affine_fit(const ComplexMatrix& target, const ComplexMatrix& model) {
  if (target.rows() != model.rows() || target.cols() != model.cols())
    throw ArgumentError("affine_fit: dimension mismatch");
  const Eigen::Index m = target.size();
  ComplexMatrix A(m, 2);
  A.col(0) = Eigen::Map<const ComplexVector>(model.data(), m);
  const ComplexMatrix I = ComplexMatrix::Identity(target.rows(), target.cols());
  A.col(1) = Eigen::Map<const ComplexVector>(I.data(), m);
  const ComplexVector b = Eigen::Map<const ComplexVector>(target.data(), m);
  const ComplexVector coef = A.colPivHouseholderQr().solve(b);
  AffineFit fit;
  fit.scale = coef(0).real();
  fit.shift = coef(1).real();
  fit.residual = (A * coef - b).cwiseAbs().maxCoeff();
  return fit;
}

ShiftReport shift_relations_check(const WeightFamily& wf, const Seam& G, int L) {
  if (L < 2) throw ArgumentError("shift_relations_check: L must be >= 2");
  const int n = wf.n;
  const ComplexMatrix T0 = transfer_end_seam(wf, G.matrix, L, 0.0);
  const ComplexMatrix T0inv = T0.inverse();
  const ComplexMatrix h = local_density(wf);
  ShiftReport rep;
  auto bond = [&](int j) { return embed_two_site(h, j, j % L + 1, L, n); };
  for (int j = 1; j <= L - 2; ++j)
    rep.residuals.push_back(max_abs(T0 * bond(j) * T0inv - bond(j + 1)));
  const ComplexMatrix boundary = conjugate_on_site(bond(L), G.matrix, L, L, n);
  rep.residuals.push_back(max_abs(T0 * bond(L - 1) * T0inv - boundary));
  for (double r : rep.residuals) rep.max_residual = std::max(rep.max_residual, r);
  return rep;
}

namespace {

void guard_trig(cplx denominator, const char* what) {
  if (std::abs(denominator) < 1e-6)
    throw DomainError(std::string("auxiliary function pole: ") + what);
}

} // namespace

cplx aux_f1(cplx x) {
  guard_trig(std::cos(x), "tan(x)");
  guard_trig(std::sin(x + kPi / 6.0), "cot(x + pi/6)");
  return 3.0 * std::tan(x) / std::tan(x + kPi / 6.0);
}

cplx aux_f2(cplx x) {
  guard_trig(std::cos(x - kPi / 6.0), "tan(x - pi/6)");
  guard_trig(std::sin(x), "cot(x)");
  return 3.0 * std::tan(x - kPi / 6.0) / std::tan(x);
}

cplx aux_f3(cplx x) {
  guard_trig(std::cos(x - kPi / 6.0), "tan(x - pi/6)");
  guard_trig(std::sin(x + kPi / 6.0), "cot(x + pi/6)");
  return 3.0 * std::tan(x - kPi / 6.0) / std::tan(x + kPi / 6.0);
}

int functional_identity_sign(Variant v) {
  switch (v) {
  case Variant::periodic:
  case Variant::z3_plus:
  case Variant::z3_minus: return 1;
  case Variant::conj: return -1;
  default: throw ArgumentError("functional identity: unsupported variant " + to_string(v));
  }
}

double functional_identity_residual(Variant variant, int L, cplx x,
                                    std::optional<int> sign_override) {
  const int sign = sign_override ? *sign_override : functional_identity_sign(variant);
  if (sign != 1 && sign != -1) throw ArgumentError("functional identity: sign must be +1 or -1");
  ChainSpec spec;
  spec.L = L;
  spec.variant = variant;
  functional_identity_sign(variant); // rejects unsupported variants even with an override
  const WeightFamily wf = spec.weights();
  const ComplexMatrix G = spec.seam().matrix;
  auto T = [&](cplx y) { return transfer_end_seam(wf, G, L, y); };
  const cplx f1 = std::pow(aux_f1(x), L), f2 = std::pow(aux_f2(x), L),
             f3 = std::pow(aux_f3(x), L);
  const ComplexMatrix Tm = T(x - kPi / 3.0), Th = T(x - kPi / 6.0), Tx = T(x),
                      Tp = T(x + kPi / 3.0), T0 = T(0.0);
  const ComplexMatrix lhs = Tm * Th * Tx;
  const ComplexMatrix rhs = T0 * (f1 * Tm + f2 * Tx + static_cast<double>(sign) * f3 * Tp);
  const double scale = std::max(max_abs(lhs), max_abs(rhs));
  return scale > 0.0 ? max_abs(lhs - rhs) / scale : 0.0;
}

} // namespace potts
