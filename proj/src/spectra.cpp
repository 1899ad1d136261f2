#include "potts/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "potts/bethe.hpp"
#include "potts/errors.hpp"

namespace potts {

EigenSystem eigensolve_hermitian(const ComplexMatrix& H) {
  if (H.rows() != H.cols()) throw ArgumentError("eigensolve_hermitian: matrix is not square");
  const double scale = std::max(1.0, max_abs(H));
  if (hermiticity_defect(H) > 1e-10 * scale)
    throw ArgumentError("eigensolve_hermitian: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolve_hermitian: no convergence");
  return {es.eigenvalues(), es.eigenvectors()};
}

std::string sector_charge(Variant v) {
  switch (v) {
  case Variant::periodic:
  case Variant::z3_plus:
  case Variant::z3_minus:
  case Variant::bulk_xdagger:
  case Variant::zn_twist: return "z3";
  case Variant::conj:
  case Variant::bulk_conj:
  case Variant::zn_conj: return "z2";
  }
  throw ArgumentError("unknown variant");
}

int z3_sector_of(cplx eigenvalue) {
  const double turns = -std::arg(eigenvalue) / (2.0 * kPi / 3.0);
  return static_cast<int>(((std::lround(turns) % 3) + 3) % 3);
}

namespace {

constexpr double kDegeneracyTolerance = 1e-8;
constexpr double kResolutionPoint = 0.09;

// Rotates the columns [first, first+count) of V by the eigenvectors of the
// Hermitian projection of K.
void resolve_hermitian(ComplexMatrix& V, Eigen::Index first, Eigen::Index count,
                       const ComplexMatrix& K) {
  const ComplexMatrix block = V.middleCols(first, count);
  const ComplexMatrix P = block.adjoint() * K * block;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (P + P.adjoint()));
  if (es.info() != Eigen::Success) throw NumericalError("resolve_sectors: projected charge");
  V.middleCols(first, count) = block * es.eigenvectors();
}

// Rotates columns by the eigenvectors of the (non-normal) projected transfer
// matrix; columns are renormalized afterwards.
void resolve_general(ComplexMatrix& V, const std::vector<Eigen::Index>& cols,
                     const ComplexMatrix& T) {
  const Eigen::Index k = static_cast<Eigen::Index>(cols.size());
  ComplexMatrix block(V.rows(), k);
  for (Eigen::Index i = 0; i < k; ++i) block.col(i) = V.col(cols[i]);
  // Orthonormal basis of the block, so the projection is a similarity.
  Eigen::HouseholderQR<ComplexMatrix> qr(block);
  const ComplexMatrix Qb = qr.householderQ() * ComplexMatrix::Identity(V.rows(), k);
  const ComplexMatrix P = Qb.adjoint() * T * Qb;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(P);
  if (es.info() != Eigen::Success) throw NumericalError("resolve_sectors: projected transfer");
  const ComplexMatrix rotated = Qb * es.eigenvectors();
  for (Eigen::Index i = 0; i < k; ++i) V.col(cols[i]) = rotated.col(i).normalized();
}

int sector_order(const std::string& charge, int sector) {
  if (charge == "z3") return sector;
  return sector == 1 ? 0 : 1;
}

} // namespace

std::vector<EigenState> resolve_sectors(const ComplexMatrix& H, const ChainSpec& spec) {
  spec.validate();
  const std::string label = sector_charge(spec.variant);
  const ComplexMatrix O = global_charge(label == "z3" ? ChargeKind::z3 : ChargeKind::z2,
                                        spec.L, spec.n);
  const double scale = std::max(1.0, max_abs(H));
  if (commutant_residual(H, O) > 1e-10 * scale)
    throw ConsistencyError("resolve_sectors: " + label + " charge does not commute with H");

  EigenSystem es = eigensolve_hermitian(H);
  ComplexMatrix V = es.vectors;
  const Eigen::Index D = H.rows();

  // Hermitian mix of the unitary charge with distinct values on its spectrum.
  const ComplexMatrix K = (O + O.adjoint()) + cplx(0.0, 0.3) * (O - O.adjoint());

  std::vector<int> group(D);
  int g = 0;
  for (Eigen::Index i = 0; i < D;) {
    Eigen::Index j = i + 1;
    while (j < D && es.values(j) - es.values(j - 1) < kDegeneracyTolerance) ++j;
    if (j - i > 1) resolve_hermitian(V, i, j - i, K);
    for (Eigen::Index t = i; t < j; ++t) group[t] = g;
    ++g;
    i = j;
  }

  std::vector<int> sector(D);
  for (Eigen::Index i = 0; i < D; ++i) {
    const cplx c = V.col(i).dot(O * V.col(i));
    sector[i] = label == "z3" ? z3_sector_of(c) : (c.real() > 0.0 ? 1 : -1);
  }

  // Residual degeneracy inside (group, sector): split with the transfer matrix.
  std::optional<ComplexMatrix> T;
  for (Eigen::Index i = 0; i < D; ++i) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = i; j < D && group[j] == group[i]; ++j)
      if (sector[j] == sector[i]) cols.push_back(j);
    if (cols.size() < 2 || cols.front() != i) continue;
    // Only the first member of each (group, sector) cluster starts a split.
    bool first_of_cluster = true;
    for (Eigen::Index j = i - 1; j >= 0 && group[j] == group[i]; --j)
      if (sector[j] == sector[i]) first_of_cluster = false;
    if (!first_of_cluster) continue;
    if (!T) T = transfer(spec, kResolutionPoint);
    resolve_general(V, cols, *T);
  }

  std::vector<EigenState> states;
  for (Eigen::Index i = 0; i < D; ++i) {
    EigenState s;
    s.vector = V.col(i);
    s.energy = es.values(i);
    s.degeneracy_group = group[i];
    s.sector = sector[i];
    s.charges["z3"] = s.vector.dot(global_charge(ChargeKind::z3, spec.L, spec.n) * s.vector);
    s.charges["z2"] = s.vector.dot(global_charge(ChargeKind::z2, spec.L, spec.n) * s.vector);
    s.eig_residual = (H * s.vector - s.energy * s.vector).norm() / s.vector.norm();
    states.push_back(std::move(s));
  }
  std::stable_sort(states.begin(), states.end(), [&](const EigenState& a, const EigenState& b) {
    const int oa = sector_order(label, a.sector), ob = sector_order(label, b.sector);
    if (oa != ob) return oa < ob;
    return a.energy < b.energy - kDegeneracyTolerance;
  });
  return states;
}

namespace {

cplx ratio_checked(const ComplexVector& v, const ComplexVector& Tv, double t_scale) {
  Eigen::Index i;
  v.cwiseAbs().maxCoeff(&i);
  const cplx lambda = Tv(i) / v(i);
  const double mismatch = (Tv - lambda * v).cwiseAbs().maxCoeff();
  const double bound = 1e-8 * std::max(t_scale, 1e-300) * v.cwiseAbs().sum();
  if (mismatch > bound)
    throw DegeneracyError("lambda_of_x: state is not an eigenvector of the transfer matrix "
                          "(component mismatch " + std::to_string(mismatch) + ")");
  return lambda;
}

} // namespace

cplx lambda_of_x(const EigenState& state, const ChainSpec& spec, cplx x) {
  const ComplexMatrix T = transfer(spec, x);
  return ratio_checked(state.vector, T * state.vector, max_abs(T));
}

std::vector<cplx> lambda_batch(const ComplexMatrix& T, const std::vector<EigenState>& states) {
  const double scale = max_abs(T);
  std::vector<cplx> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(ratio_checked(s.vector, T * s.vector, scale));
  return out;
}

std::vector<double> lambda_sample_grid(int L) {
  const int M = 4 * L + 9;
  const double spacing = kPi / M;
  const double zeros[] = {-kPi / 6.0, kPi / 3.0};
  std::vector<double> xs;
  for (int m = 0; m < M; ++m) {
    double x = -kPi / 2.0 + 0.013 + spacing * m;
    for (double z : zeros)
      if (std::abs(std::remainder(x - z, kPi)) < 0.03) x += 0.5 * spacing;
    xs.push_back(x);
  }
  return xs;
}

std::vector<double> lambda_holdout_grid() { return {-0.4137, -0.2213, 0.0711, 0.2689, 0.6931}; }

namespace {

cplx gg1_power(cplx x, int L) { return std::pow(potts3_g(x) * potts3_g1(x), L); }

} // namespace

cplx LambdaForm::evaluate(cplx x, int L) const {
  const cplx w = std::exp(2.0 * kI * x);
  cplx p = 0.0;
  for (int k = hi; k >= lo; --k) p = p * w + coefficients[k - lo];
  p *= std::pow(w, lo);
  return p / gg1_power(x, L);
}

cplx LambdaForm::derivative(cplx x, int L) const {
  cplx p = 0.0, dp = 0.0;
  for (int k = lo; k <= hi; ++k) {
    const cplx term = coefficients[k - lo] * std::exp(2.0 * kI * cplx(k) * x);
    p += term;
    dp += 2.0 * kI * cplx(k) * term;
  }
  const cplx g = potts3_g(x), g1 = potts3_g1(x);
  const cplx log_deriv = static_cast<double>(L) *
                         (std::cos(kPi / 6.0 + x) / g - std::cos(kPi / 3.0 - x) / g1);
  return (dp - p * log_deriv) / gg1_power(x, L);
}

LambdaForm fit_lambda_form(const std::vector<cplx>& samples, int L,
                           const std::vector<std::pair<double, cplx>>& holdout) {
  const std::vector<double> xs = lambda_sample_grid(L);
  if (samples.size() != xs.size()) throw ArgumentError("fit_lambda_form: wrong sample count");
  const int kmin = -(L + 1), kmax = L + 1, K = kmax - kmin + 1;
  const int M = static_cast<int>(xs.size());
  ComplexMatrix A(M, K);
  ComplexVector b(M);
  for (int m = 0; m < M; ++m) {
    for (int k = kmin; k <= kmax; ++k) A(m, k - kmin) = std::exp(2.0 * kI * cplx(k) * xs[m]);
    b(m) = samples[m] * gg1_power(xs[m], L);
  }
  const ComplexVector c = A.colPivHouseholderQr().solve(b);
  const double cmax = c.cwiseAbs().maxCoeff();
  if (!(cmax > 0.0)) throw InterpolationError("fit_lambda_form: eigenvalue vanishes identically");

  LambdaForm form;
  const double threshold = 1e-8 * cmax;
  int lo = kmax + 1, hi = kmin - 1;
  for (int k = kmin; k <= kmax; ++k) {
    const double mag = std::abs(c(k - kmin));
    if (mag > threshold) {
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
    if (mag > 0.1 * threshold && mag < 10.0 * threshold) form.flagged = true;
  }
  form.lo = lo;
  form.hi = hi;
  for (int k = lo; k <= hi; ++k) form.coefficients.push_back(c(k - kmin));
  form.root_count = hi - lo;
  form.mu = -(hi + lo);

  // Zeros: roots of sum_k c_k w^{k-lo}, via the companion matrix.
  const int N = form.root_count;
  if (N > 0) {
    ComplexMatrix comp = ComplexMatrix::Zero(N, N);
    const cplx lead = form.coefficients[N];
    for (int i = 0; i < N; ++i) comp(0, i) = -form.coefficients[N - 1 - i] / lead;
    for (int i = 1; i < N; ++i) comp(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(comp, false);
    if (es.info() != Eigen::Success) throw InterpolationError("fit_lambda_form: companion roots");
    for (int i = 0; i < N; ++i) {
      const cplx w = es.eigenvalues()(i);
      const cplx x = std::log(w) / (2.0 * kI);
      cplx xi = kPi / 6.0 - x;
      const double shift = std::ceil((xi.real() - kPi / 2.0) / kPi);
      xi -= shift * kPi;
      form.zeros_xi.push_back(xi);
    }
  }

  form.normalization_check = form.evaluate(kPi / 6.0, L);
  double err = 0.0, scale = 0.0;
  for (const auto& [x, value] : holdout) {
    err = std::max(err, std::abs(form.evaluate(x, L) - value));
    scale = std::max(scale, std::abs(value));
  }
  form.reconstruction_error = scale > 0.0 ? err / scale : err;
  if (form.reconstruction_error > 1e-8)
    throw InterpolationError("fit_lambda_form: reconstruction mismatch " +
                             std::to_string(form.reconstruction_error));
  return form;
}

std::vector<LambdaForm> interpolate_lambda_forms(const std::vector<EigenState>& states,
                                                 const ChainSpec& spec) {
  const std::vector<double> xs = lambda_sample_grid(spec.L);
  const std::vector<double> hs = lambda_holdout_grid();
  std::vector<std::vector<cplx>> samples(states.size());
  std::vector<std::vector<std::pair<double, cplx>>> holdout(states.size());
  for (double x : xs) {
    const std::vector<cplx> lam = lambda_batch(transfer(spec, x), states);
    for (std::size_t s = 0; s < states.size(); ++s) samples[s].push_back(lam[s]);
  }
  for (double x : hs) {
    const std::vector<cplx> lam = lambda_batch(transfer(spec, x), states);
    for (std::size_t s = 0; s < states.size(); ++s) holdout[s].emplace_back(x, lam[s]);
  }
  std::vector<LambdaForm> forms;
  for (std::size_t s = 0; s < states.size(); ++s)
    forms.push_back(fit_lambda_form(samples[s], spec.L, holdout[s]));
  return forms;
}

LambdaForm interpolate_lambda_form(const EigenState& state, const ChainSpec& spec) {
  return interpolate_lambda_forms({state}, spec).front();
}

std::vector<cplx> seeds_from_lambda(const LambdaForm& form) {
  std::vector<cplx> seeds;
  for (const cplx& xi : form.zeros_xi) seeds.push_back(-kI * (xi - kPi / 12.0));
  return canonicalize_roots(seeds);
}

} // namespace potts
