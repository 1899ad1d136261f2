#include "potts/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "potts/errors.hpp"

namespace potts {

namespace {

const cplx kI12 = kI * (kPi / 12.0);
const cplx kI3 = kI * (kPi / 3.0);
constexpr double kPoleGuard = 1e-10;

int sign_power(int L) { return L % 2 == 0 ? 1 : -1; }

cplx coth(cplx z) { return std::cosh(z) / std::sinh(z); }

cplx phi(cplx u) { return coth(u + kI3) - coth(u - kI3); }

void check_roots(const BetheSystem& sys, const std::vector<cplx>& roots) {
  if (static_cast<int>(roots.size()) != sys.root_count)
    throw ArgumentError("bethe: expected " + std::to_string(sys.root_count) + " roots, got " +
                        std::to_string(roots.size()));
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (!std::isfinite(roots[j].real()) || !std::isfinite(roots[j].imag()))
      throw DomainError("bethe: non-finite root " + std::to_string(j));
    if (root_distance(roots[j], kI12) < kPoleGuard || root_distance(roots[j], -kI12) < kPoleGuard)
      throw DomainError("bethe: root " + std::to_string(j) + " sits on +-i pi/12");
    for (std::size_t k = 0; k < j; ++k) {
      const cplx d = roots[j] - roots[k];
      if (root_distance(d, kI3) < kPoleGuard || root_distance(d, -kI3) < kPoleGuard)
        throw DomainError("bethe: roots " + std::to_string(k) + " and " + std::to_string(j) +
                          " differ by +-i pi/3");
    }
  }
}

struct Sides {
  std::vector<cplx> lhs, rhs; // rhs includes the phase
};

Sides sides(const BetheSystem& sys, const std::vector<cplx>& roots) {
  Sides s;
  const int N = static_cast<int>(roots.size());
  for (int j = 0; j < N; ++j) {
    const cplx base = std::sinh(roots[j] + kI12) / std::sinh(roots[j] - kI12);
    s.lhs.push_back(std::pow(base, 2 * sys.L));
    cplx prod = sys.phase;
    for (int k = 0; k < N; ++k)
      if (k != j) {
        const cplx d = roots[j] - roots[k];
        prod *= std::sinh(d + kI3) / std::sinh(d - kI3);
      }
    s.rhs.push_back(prod);
  }
  return s;
}

double normalized_residual(const Sides& s) {
  double worst = 0.0;
  for (std::size_t j = 0; j < s.lhs.size(); ++j) {
    const double den = std::abs(s.lhs[j]) + std::abs(s.rhs[j]);
    worst = std::max(worst, std::abs(s.lhs[j] - s.rhs[j]) / den);
  }
  return worst;
}

} // namespace

BetheVariant bethe_variant_of(Variant v) {
  switch (v) {
  case Variant::periodic: return BetheVariant::periodic;
  case Variant::z3_plus: return BetheVariant::z3_plus;
  case Variant::z3_minus: return BetheVariant::z3_minus;
  case Variant::conj: return BetheVariant::conj;
  default: throw ArgumentError("no Bethe equations for variant " + to_string(v));
  }
}

int expected_root_count(BetheVariant variant, int L, int sector) {
  switch (variant) {
  case BetheVariant::periodic: return sector == 0 ? 2 * L : 2 * L - 2;
  case BetheVariant::z3_plus:
  case BetheVariant::z3_minus: return sector == 0 ? 2 * L - 2 : 2 * L - 1;
  case BetheVariant::conj: return 2 * L;
  }
  throw ArgumentError("unknown Bethe variant");
}

BetheSystem make_bethe_system(BetheVariant variant, int L, int sector) {
  if (L < 1) throw ArgumentError("bethe: L must be >= 1");
  const bool z2 = variant == BetheVariant::conj;
  if (z2 && sector != 1 && sector != -1) throw ArgumentError("bethe: nu must be +1 or -1");
  if (!z2 && (sector < 0 || sector > 2)) throw ArgumentError("bethe: Q must be 0, 1 or 2");
  BetheSystem sys;
  sys.variant = variant;
  sys.L = L;
  sys.sector = sector;
  sys.root_count = expected_root_count(variant, L, sector);
  const double s = sign_power(L);
  switch (variant) {
  case BetheVariant::periodic: sys.phase = s; break;
  case BetheVariant::z3_plus:
    sys.phase = s * std::polar(1.0, 2.0 * kPi * sector / 3.0);
    sys.mu = sector == 0 ? 0 : (sector == 1 ? -1 : 1);
    break;
  case BetheVariant::z3_minus:
    sys.phase = s * std::polar(1.0, -2.0 * kPi * sector / 3.0);
    sys.mu = sector == 0 ? 0 : (sector == 1 ? 1 : -1);
    break;
  case BetheVariant::conj: sys.phase = -s; break;
  }
  return sys;
}

double bethe_residual(const BetheSystem& sys, const std::vector<cplx>& roots) {
  check_roots(sys, roots);
  return normalized_residual(sides(sys, roots));
}

RootSet newton_refine(const BetheSystem& sys, const std::vector<cplx>& seeds) {
  check_roots(sys, seeds);
  const int N = sys.root_count;
  std::vector<cplx> lam = seeds;
  std::vector<double> trace;
  Sides s = sides(sys, lam);
  double res = normalized_residual(s);
  trace.push_back(res);
  int it = 0;
  for (; res >= 1e-12; ++it) {
    if (it >= 100)
      throw SolverError("newton_refine: no convergence in 100 iterations", lam, trace);
    ComplexMatrix J = ComplexMatrix::Zero(N, N);
    ComplexVector F(N);
    for (int j = 0; j < N; ++j) {
      const double scale = std::abs(s.lhs[j]) + std::abs(s.rhs[j]);
      F(j) = (s.lhs[j] - s.rhs[j]) / scale;
      cplx diag = s.lhs[j] * (2.0 * sys.L) * (coth(lam[j] + kI12) - coth(lam[j] - kI12));
      for (int k = 0; k < N; ++k) {
        if (k == j) continue;
        const cplx p = phi(lam[j] - lam[k]);
        diag -= s.rhs[j] * p;
        J(j, k) = s.rhs[j] * p / scale;
      }
      J(j, j) = diag / scale;
    }
    Eigen::FullPivLU<ComplexMatrix> lu(J);
    lu.setThreshold(1e-13);
    if (!lu.isInvertible()) throw SolverError("newton_refine: singular Jacobian", lam, trace);
    const ComplexVector step = lu.solve(-F);

    bool accepted = false;
    double t = 1.0;
    for (int halving = 0; halving <= 20; ++halving, t *= 0.5) {
      std::vector<cplx> trial(N);
      for (int j = 0; j < N; ++j) trial[j] = lam[j] + t * step(j);
      try {
        check_roots(sys, trial);
      } catch (const DomainError&) {
        continue;
      }
      const Sides st = sides(sys, trial);
      const double rt = normalized_residual(st);
      if (rt < res) {
        lam = std::move(trial);
        s = st;
        res = rt;
        accepted = true;
        break;
      }
    }
    trace.push_back(res);
    if (!accepted)
      throw SolverError("newton_refine: residual did not decrease after 20 halvings", lam, trace);
  }

  RootSet out;
  out.lambdas = canonicalize_roots(lam);
  out.residual = bethe_residual(sys, out.lambdas);
  out.iterations = it;
  out.residual_trace = std::move(trace);
  out.energy = energy_from_roots(sys, out.lambdas);
  out.spin = spin_from_roots(sys, out.lambdas).value;
  return out;
}

double energy_from_roots(const BetheSystem& sys, const std::vector<cplx>& roots,
                         double imag_tolerance) {
  cplx e = kI * static_cast<double>(sys.mu) - 2.0 * sys.L / std::sqrt(3.0);
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const cplx arg = kPi / 12.0 - kI * roots[j];
    const cplx sn = std::sin(arg);
    if (std::abs(sn) < kPoleGuard)
      throw DomainError("energy_from_roots: root " + std::to_string(j) + " at a cot pole");
    e += std::cos(arg) / sn;
  }
  if (std::abs(e.imag()) > imag_tolerance)
    throw NumericalError("energy_from_roots: imaginary part " + std::to_string(e.imag()));
  return e.real();
}

SpinResult spin_from_roots(const BetheSystem& sys, const std::vector<cplx>& roots,
                           double imag_tolerance) {
  SpinResult out;
  cplx total = 0.0;
  for (const cplx& l : roots) {
    const cplx den = std::sinh(l - kI12);
    if (std::abs(den) < kPoleGuard || std::abs(std::sinh(l + kI12)) < kPoleGuard)
      throw DomainError("spin_from_roots: root at +-i pi/12");
    const cplx r = std::sinh(l + kI12) / den;
    if (r.real() < 0.0 && std::abs(r.imag()) <= 1e-12 * std::abs(r)) {
      total += cplx(std::log(std::abs(r)), kPi);
      ++out.branch_cut_hits;
    } else {
      total += std::log(r);
    }
  }
  const cplx s = kI * static_cast<double>(sys.L) / (2.0 * kPi) * total -
                 static_cast<double>(sys.L * sys.mu) / 12.0;
  if (std::abs(s.imag()) > imag_tolerance)
    throw NumericalError("spin_from_roots: imaginary part " + std::to_string(s.imag()));
  out.raw = s.real();
  const double L = sys.L;
  out.value = out.raw - L * std::ceil((out.raw - L / 2.0 - 1e-9) / L);
  return out;
}

std::vector<cplx> canonicalize_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> out;
  out.reserve(roots.size());
  for (const cplx& l : roots) {
    const double k = std::ceil((l.imag() - kPi / 2.0 - 1e-10) / kPi);
    out.emplace_back(l.real(), l.imag() - k * kPi);
  }
  std::sort(out.begin(), out.end(), [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

double root_distance(cplx a, cplx b) {
  const double dre = a.real() - b.real();
  const double dim = std::remainder(a.imag() - b.imag(), kPi);
  return std::hypot(dre, dim);
}

double multiset_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  std::vector<double> values;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d[i][j] = root_distance(a[i], b[j]);
      values.push_back(d[i][j]);
    }
  std::sort(values.begin(), values.end());

  // Bottleneck assignment: smallest threshold admitting a perfect matching.
  auto perfect = [&](double t) {
    std::vector<int> match(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<char> seen(n, 0);
      std::function<bool(std::size_t)> augment = [&](std::size_t u) {
        for (std::size_t v = 0; v < n; ++v) {
          if (d[u][v] > t || seen[v]) continue;
          seen[v] = 1;
          if (match[v] < 0 || augment(static_cast<std::size_t>(match[v]))) {
            match[v] = static_cast<int>(u);
            return true;
          }
        }
        return false;
      };
      if (!augment(i)) return false;
    }
    return true;
  };
  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect(values[mid])) hi = mid;
    else lo = mid + 1;
  }
  return values[lo];
}

} // namespace potts
