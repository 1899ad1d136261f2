#include "potts/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "potts/errors.hpp"

namespace potts {

namespace {

// Sparse n^2 x n^2 operator as (row, col, value) triplets.
struct Triplet {
  int r, c;
  cplx v;
};

std::vector<Triplet> sparse_of(const ComplexMatrix& M) {
  std::vector<Triplet> out;
  for (int c = 0; c < M.cols(); ++c)
    for (int r = 0; r < M.rows(); ++r)
      if (M(r, c) != cplx(0.0)) out.push_back({r, c, M(r, c)});
  return out;
}

// R K - K R for sparse R and dense K.
ComplexMatrix sparse_commutator(const std::vector<Triplet>& R, const ComplexMatrix& K) {
  ComplexMatrix out = ComplexMatrix::Zero(K.rows(), K.cols());
  for (const auto& t : R) {
    out.row(t.r) += t.v * K.row(t.c);
    out.col(t.c) -= t.v * K.col(t.r);
  }
  return out;
}

double ratio_or_zero(double num, double den) { return den > 0.0 ? num / den : num; }

void require_square(const ComplexMatrix& G, int n, const char* who) {
  if (G.rows() != n || G.cols() != n)
    throw ArgumentError(std::string(who) + ": seam must be n x n");
}

} // namespace

ComplexMatrix normalize_gauge(const ComplexMatrix& M) {
  for (int r = 0; r < M.rows(); ++r)
    for (int c = 0; c < M.cols(); ++c)
      if (std::abs(M(r, c)) > 1e-12) return M / M(r, c);
  throw ArgumentError("normalize_gauge: zero matrix");
}

Seam identity_seam(int n) { return {"identity", ComplexMatrix::Identity(n, n), true}; }
Seam g_plus_seam(int n) { return {"g_plus", site_algebra(n).X.adjoint(), true}; }
Seam g_minus_seam(int n) { return {"g_minus", site_algebra(n).X, true}; }
Seam g_conj_seam(int n) { return {"g_conj", site_algebra(n).C, true}; }

Seam zn_twist_seam(int n, int l) {
  if (l < 0 || l >= n) throw ArgumentError("zn_twist_seam: need 0 <= l < n");
  ComplexMatrix G = ComplexMatrix::Identity(n, n);
  const ComplexMatrix X = site_algebra(n).X;
  for (int k = 0; k < (n - l) % n; ++k) G = X * G;
  return label_seam(G);
}

Seam label_seam(const ComplexMatrix& G) {
  const int n = static_cast<int>(G.rows());
  const SiteAlgebra alg = site_algebra(n);
  const ComplexMatrix target = normalize_gauge(G);
  ComplexMatrix Xk = ComplexMatrix::Identity(n, n);
  for (int k = 0; k < n; ++k) {
    for (int e = 0; e < 2; ++e) {
      const ComplexMatrix word = e ? ComplexMatrix(Xk * alg.C) : Xk;
      if (max_abs(normalize_gauge(word) - target) > 1e-9) continue;
      std::string label;
      if (k == 0 && e == 0) label = "identity";
      else if (k == n - 1 && e == 0) label = "g_plus";
      else if (k == 1 && e == 0) label = "g_minus";
      else if (k == 0 && e == 1) label = "g_conj";
      else {
        label = k == 1 ? "X" : "X^" + std::to_string(k);
        if (e) label += "*C";
      }
      return {label, target, true};
    }
    Xk = alg.X * Xk;
  }
  return {"unrecognized", target, false};
}

ComplexMatrix lax(const WeightFamily& wf, cplx x) {
  const int n = wf.n;
  ComplexMatrix Lm = ComplexMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) Lm(a * n + b, c * n + a) = wf.wh(b, a, x) * wf.wv(b, c, x);
  return Lm;
}

ComplexMatrix lax_derivative(const WeightFamily& wf, cplx x) {
  const int n = wf.n;
  ComplexMatrix D = ComplexMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        D(a * n + b, c * n + a) =
            wf.dwh(b, a, x) * wf.wv(b, c, x) + wf.wh(b, a, x) * wf.dwv(b, c, x);
  return D;
}

ComplexMatrix permutation_operator(int n) {
  ComplexMatrix P = ComplexMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) P(a * n + b, b * n + a) = 1.0;
  return P;
}

ComplexMatrix r_matrix(const WeightFamily& wf, cplx x, cplx y) {
  const int n = wf.n;
  ComplexMatrix R = ComplexMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const cplx den = wf.wh(c, a, y);
        if (std::abs(den) < 1e-14)
          throw DomainError("r_matrix: W_h(" + std::to_string(c) + "," + std::to_string(a) +
                            "|y) vanishes");
        R(a * n + b, c * n + a) = wf.wh(b, a, x) * wf.wv(b, c, x - y) / den;
      }
  return R;
}

double ybe_residual(const WeightFamily& wf, cplx x, cplx y) {
  const int n = wf.n;
  const ComplexMatrix I = ComplexMatrix::Identity(n, n);
  const ComplexMatrix R12 = kron(r_matrix(wf, x, y), I);
  const ComplexMatrix L13 = embed_two_site(lax(wf, x), 1, 3, 3, n);
  const ComplexMatrix L23 = kron(I, lax(wf, y));
  const ComplexMatrix lhs = R12 * L13 * L23;
  const ComplexMatrix rhs = L23 * L13 * R12;
  return ratio_or_zero(max_abs(lhs - rhs), std::max(max_abs(lhs), max_abs(rhs)));
}

double seam_residual(const WeightFamily& wf, const ComplexMatrix& G, cplx x, cplx y) {
  require_square(G, wf.n, "seam_residual");
  const ComplexMatrix R = r_matrix(wf, x, y);
  const ComplexMatrix GG = kron(G, G);
  const ComplexMatrix a = R * GG, b = GG * R;
  return ratio_or_zero(max_abs(a - b), std::max(max_abs(a), max_abs(b)));
}

double sample_spectral_parameter(CounterRng& rng) {
  return rng.uniform(0.02, kPi / 6.0 - 0.02);
}

namespace {

struct Pair {
  double x, y;
};

std::vector<Pair> sample_pairs(CounterRng& rng, int count) {
  std::vector<Pair> out;
  for (int i = 0; i < count; ++i) {
    const double x = sample_spectral_parameter(rng);
    const double y = sample_spectral_parameter(rng);
    out.push_back({x, y});
  }
  return out;
}

int commutant_dimension(const std::vector<ComplexMatrix>& Rs) {
  const int d = static_cast<int>(Rs.front().rows());
  const ComplexMatrix I = ComplexMatrix::Identity(d, d);
  ComplexMatrix A(static_cast<Eigen::Index>(Rs.size()) * d * d, d * d);
  for (std::size_t t = 0; t < Rs.size(); ++t)
    A.middleRows(static_cast<Eigen::Index>(t) * d * d, d * d) =
        kron(I, Rs[t]) - kron(Rs[t].transpose(), I);
  Eigen::BDCSVD<ComplexMatrix> svd(A);
  const auto& s = svd.singularValues();
  const double tol = 1e-9 * (s.size() ? s(0) : 0.0);
  int dim = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) <= tol) ++dim;
  return dim + static_cast<int>(A.cols() - s.size());
}

// Does the monomial G (G(i, perm[i]) = phase[i]) satisfy [R, G (x) G] = 0?
// With M = G (x) G mapping e_c to m_c e_{s(c)}, the condition reads
// R[s(r), s(c)] m_c = m_r R[r, c] for all r, c.
bool monomial_commutes(const std::vector<std::vector<Triplet>>& Rs,
                       const std::vector<ComplexMatrix>& dense, const std::vector<double>& scales,
                       int n, const std::vector<int>& perm, const std::vector<cplx>& phase) {
  // G e_j = phase[i] e_i where perm[i] = j.
  std::vector<int> image(n);
  std::vector<cplx> weight(n);
  for (int i = 0; i < n; ++i) {
    image[perm[i]] = i;
    weight[perm[i]] = phase[i];
  }
  for (std::size_t t = 0; t < Rs.size(); ++t) {
    const double scale = scales[t];
    for (const auto& tr : Rs[t]) {
      const int r1 = tr.r / n, r2 = tr.r % n, c1 = tr.c / n, c2 = tr.c % n;
      const int sr = image[r1] * n + image[r2], sc = image[c1] * n + image[c2];
      const cplx mr = weight[r1] * weight[r2], mc = weight[c1] * weight[c2];
      if (std::abs(dense[t](sr, sc) * mc - mr * tr.v) > 1e-9 * scale) return false;
    }
    // The index map is a bijection, so sending the support of R into itself
    // already forces equality on the zero entries too.
  }
  return true;
}

// Necessary condition independent of the phases: |R| is invariant under the
// index permutation induced by perm (x) perm.
bool permutation_admissible(const std::vector<std::vector<Triplet>>& Rs,
                            const std::vector<ComplexMatrix>& dense,
                            const std::vector<double>& scales, int n, const std::vector<int>& perm) {
  std::vector<int> image(n);
  for (int i = 0; i < n; ++i) image[perm[i]] = i;
  for (std::size_t t = 0; t < Rs.size(); ++t)
    for (const auto& tr : Rs[t]) {
      const int sr = image[tr.r / n] * n + image[tr.r % n];
      const int sc = image[tr.c / n] * n + image[tr.c % n];
      if (std::abs(std::abs(dense[t](sr, sc)) - std::abs(tr.v)) > 1e-9 * scales[t]) return false;
    }
  return true;
}

struct GaussNewtonResult {
  bool converged = false;
  ComplexMatrix G;
};

GaussNewtonResult gauss_newton_seam(const std::vector<std::vector<Triplet>>& Rs, int n,
                                    ComplexMatrix G, const ComplexMatrix& gauge) {
  const int d = n * n;
  const int m = static_cast<int>(Rs.size()) * d * d + 1;
  auto residual = [&](const ComplexMatrix& g) {
    ComplexVector r(m);
    const ComplexMatrix K = kron(g, g);
    int off = 0;
    for (const auto& R : Rs) {
      const ComplexMatrix c = sparse_commutator(R, K);
      r.segment(off, d * d) = Eigen::Map<const ComplexVector>(c.data(), d * d);
      off += d * d;
    }
    r(off) = (gauge.array() * g.array()).sum() - 1.0;
    return r;
  };
  double lambda = 1e-3;
  ComplexVector r = residual(G);
  double cost = r.squaredNorm();
  for (int it = 0; it < 80 && cost > 1e-26; ++it) {
    ComplexMatrix J(m, d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ComplexMatrix E = ComplexMatrix::Zero(n, n);
        E(i, j) = 1.0;
        const ComplexMatrix dK = kron(E, G) + kron(G, E);
        int off = 0;
        for (const auto& R : Rs) {
          const ComplexMatrix c = sparse_commutator(R, dK);
          J.col(j * n + i).segment(off, d * d) = Eigen::Map<const ComplexVector>(c.data(), d * d);
          off += d * d;
        }
        J(off, j * n + i) = gauge(i, j);
      }
    const ComplexMatrix JhJ = J.adjoint() * J;
    const ComplexVector g = J.adjoint() * r;
    bool improved = false;
    for (int tries = 0; tries < 12; ++tries) {
      ComplexMatrix A = JhJ;
      A.diagonal().array() += lambda * (1.0 + JhJ.diagonal().real().array());
      const ComplexVector step = A.ldlt().solve(-g);
      ComplexMatrix trial = G + Eigen::Map<const ComplexMatrix>(step.data(), n, n);
      const ComplexVector rt = residual(trial);
      if (rt.squaredNorm() < cost) {
        G = trial;
        r = rt;
        cost = rt.squaredNorm();
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  return {cost < 1e-20, G};
}

bool certify(const WeightFamily& wf, const ComplexMatrix& G, const std::vector<Pair>& checks,
             double& worst) {
  for (const auto& p : checks) {
    const double r = seam_residual(wf, G, p.x, p.y);
    worst = std::max(worst, r);
    if (!(r < 1e-10)) return false;
  }
  return true;
}

bool contains(const std::vector<ComplexMatrix>& set, const ComplexMatrix& G) {
  return std::any_of(set.begin(), set.end(),
                     [&](const ComplexMatrix& H) { return max_abs(H - G) < 1e-9; });
}

bool invertible(const ComplexMatrix& G) {
  Eigen::JacobiSVD<ComplexMatrix> svd(G);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > 1e-8 * s(0);
}

// Key for deterministic ordering: entries row-major, real then imaginary,
// rounded to a 1e-9 grid so round-off cannot reorder equal matrices.
std::vector<long long> sort_key(const ComplexMatrix& G) {
  std::vector<long long> key;
  for (int r = 0; r < G.rows(); ++r)
    for (int c = 0; c < G.cols(); ++c) {
      key.push_back(std::llround(G(r, c).real() * 1e9));
      key.push_back(std::llround(G(r, c).imag() * 1e9));
    }
  return key;
}

} // namespace

SeamDiscovery discover_seams(const WeightFamily& wf, int trials, std::uint64_t seed) {
  if (trials < 2) throw ArgumentError("discover_seams: trials must be >= 2");
  const int n = wf.n;
  CounterRng rng(seed);
  const std::vector<Pair> fit_pairs = sample_pairs(rng, trials);
  const std::vector<Pair> check_pairs = sample_pairs(rng, 5);

  std::vector<ComplexMatrix> dense;
  std::vector<std::vector<Triplet>> sparse;
  for (const auto& p : fit_pairs) {
    dense.push_back(r_matrix(wf, p.x, p.y));
    sparse.push_back(sparse_of(dense.back()));
  }

  SeamDiscovery out;
  out.commutant_dimension = commutant_dimension(dense);
  if (out.commutant_dimension < 1)
    throw NumericalError("discover_seams: empty commutant; the identity must always solve");

  std::vector<ComplexMatrix> found;
  auto consider = [&](const ComplexMatrix& raw) {
    if (!invertible(raw)) return;
    const ComplexMatrix G = normalize_gauge(raw);
    if (contains(found, G)) return;
    if (certify(wf, G, check_pairs, out.max_certification_residual)) found.push_back(G);
  };

  if (n <= 5) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    const cplx omega = std::polar(1.0, 2.0 * kPi / n);
    int total_phase = 1;
    for (int i = 1; i < n; ++i) total_phase *= n;
    std::vector<double> scales;
    for (const auto& R : dense) scales.push_back(max_abs(R));
    do {
      if (!permutation_admissible(sparse, dense, scales, n, perm)) {
        out.monomial_candidates += total_phase;
        continue;
      }
      for (int code = 0; code < total_phase; ++code) {
        std::vector<cplx> phase(n, 1.0);
        int rest = code;
        for (int i = 1; i < n; ++i) {
          phase[i] = std::pow(omega, rest % n);
          rest /= n;
        }
        ++out.monomial_candidates;
        if (!monomial_commutes(sparse, dense, scales, n, perm, phase)) continue;
        ComplexMatrix G = ComplexMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i) G(i, perm[i]) = phase[i];
        consider(G);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  out.continuous_starts = 6 * n;
  for (int s = 0; s < out.continuous_starts; ++s) {
    ComplexMatrix G0(n, n), gauge(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        G0(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        gauge(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      }
    const GaussNewtonResult gn = gauss_newton_seam(sparse, n, G0, gauge);
    if (!gn.converged) continue;
    ++out.continuous_solutions;
    consider(gn.G);
  }

  // Close under multiplication.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (const ComplexMatrix& P : {ComplexMatrix(found[i] * found[j]),
                                     ComplexMatrix(found[j] * found[i])}) {
        const ComplexMatrix G = normalize_gauge(P);
        if (contains(found, G)) continue;
        if (!certify(wf, G, check_pairs, out.max_certification_residual))
          throw NumericalError("discover_seams: product of certified seams failed certification");
        found.push_back(G);
        if (found.size() > 4096)
          throw NumericalError("discover_seams: solution set does not close into a finite group");
      }
    }
  }

  std::sort(found.begin(), found.end(), [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return sort_key(a) < sort_key(b);
  });
  for (const ComplexMatrix& G : found) {
    Seam s = label_seam(G);
    if (!s.recognized) out.flagged.push_back("seam outside the group generated by X and C");
    out.seams.push_back(std::move(s));
  }
  return out;
}

} // namespace potts
