#include "potts/weights.hpp"

#include <cmath>
#include <limits>

#include "potts/errors.hpp"

namespace potts {

namespace {

void check_states(const WeightFamily& wf, int a, int b) {
  if (a < 0 || b < 0 || a >= wf.n || b >= wf.n)
    throw ArgumentError("weight: state index out of range for " + wf.label);
}

// Representative of (a - b) mod n in {0, ..., n-1}.
int separation(int a, int b, int n) { return ((a - b) % n + n) % n; }

cplx central_difference(const WeightFamily::Fn& f, int a, int b, cplx x) {
  constexpr double h = 1e-6;
  return (f(a, b, x + h) - f(a, b, x - h)) / (2.0 * h);
}

} // namespace

cplx WeightFamily::wh(int a, int b, cplx x) const {
  check_states(*this, a, b);
  check_domain(x);
  return horizontal(a, b, x);
}

cplx WeightFamily::wv(int a, int b, cplx x) const {
  check_states(*this, a, b);
  check_domain(x);
  return vertical(a, b, x);
}

cplx WeightFamily::dwh(int a, int b, cplx x) const {
  check_states(*this, a, b);
  check_domain(x);
  return horizontal_derivative ? horizontal_derivative(a, b, x)
                               : central_difference(horizontal, a, b, x);
}

cplx WeightFamily::dwv(int a, int b, cplx x) const {
  check_states(*this, a, b);
  check_domain(x);
  return vertical_derivative ? vertical_derivative(a, b, x)
                             : central_difference(vertical, a, b, x);
}

double WeightFamily::distance_to_singularity(cplx x) const {
  double best = std::numeric_limits<double>::infinity();
  for (double z : denominator_zeros) {
    double re = std::remainder(x.real() - z, kPi);
    best = std::min(best, std::hypot(re, x.imag()));
  }
  return best;
}

void WeightFamily::check_domain(cplx x) const {
  if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
    throw DomainError("weight: non-finite spectral parameter");
  if (distance_to_singularity(x) < kSingularityGuard)
    throw DomainError("weight: spectral parameter (" + std::to_string(x.real()) +
                      ", " + std::to_string(x.imag()) +
                      ") is within the singularity guard of " + label);
}

cplx potts3_a(cplx x) { return std::sin(kPi / 6.0 - x) / std::sin(kPi / 6.0 + x); }
cplx potts3_b(cplx x) { return std::sin(x) / std::sin(kPi / 3.0 - x); }
cplx potts3_g(cplx x) { return std::sin(kPi / 6.0 + x); }
cplx potts3_g1(cplx x) { return std::sin(kPi / 3.0 - x); }

WeightFamily potts3_weights() {
  WeightFamily wf;
  wf.n = 3;
  wf.label = "potts3";
  wf.horizontal = [](int a, int b, cplx x) { return a == b ? cplx(1.0) : potts3_a(x); };
  wf.vertical = [](int a, int b, cplx x) { return a == b ? cplx(1.0) : potts3_b(x); };
  // a'(x) = -sin(pi/3) / sin^2(pi/6 + x),  b'(x) = sin(pi/3) / sin^2(pi/3 - x)
  wf.horizontal_derivative = [](int a, int b, cplx x) {
    if (a == b) return cplx(0.0);
    const cplx s = std::sin(kPi / 6.0 + x);
    return -std::sin(kPi / 3.0) / (s * s);
  };
  wf.vertical_derivative = [](int a, int b, cplx x) {
    if (a == b) return cplx(0.0);
    const cplx s = std::sin(kPi / 3.0 - x);
    return std::sin(kPi / 3.0) / (s * s);
  };
  wf.denominator_zeros = {-kPi / 6.0, kPi / 3.0};
  return wf;
}

WeightFamily fz_weights(int n) {
  if (n < 2) throw ArgumentError("fz_weights: n must be >= 2");
  WeightFamily wf;
  wf.n = n;
  wf.label = "fz" + std::to_string(n);

  // Horizontal factor j: sin(alpha_j - x) / sin(alpha_j + x), alpha_j = (2j-1) pi / 2n.
  // Vertical factor j:   sin(beta_j + x) / sin(gamma_j - x),  beta_j = (j-1) pi / n,
  //                                                           gamma_j = j pi / n.
  auto h_factor = [n](int j, cplx x) {
    const double al = (2 * j - 1) * kPi / (2.0 * n);
    return std::sin(al - x) / std::sin(al + x);
  };
  auto h_factor_d = [n](int j, cplx x) {
    const double al = (2 * j - 1) * kPi / (2.0 * n);
    const cplx s = std::sin(al + x);
    return -std::sin(2.0 * al) / (s * s);
  };
  auto v_factor = [n](int j, cplx x) {
    const double be = (j - 1) * kPi / n, ga = j * kPi / n;
    return std::sin(be + x) / std::sin(ga - x);
  };
  auto v_factor_d = [n](int j, cplx x) {
    const double be = (j - 1) * kPi / n, ga = j * kPi / n;
    const cplx s = std::sin(ga - x);
    return std::sin(be + ga) / (s * s);
  };

  auto product = [n](auto factor) {
    return [n, factor](int a, int b, cplx x) {
      cplx p = 1.0;
      for (int j = 1; j <= separation(a, b, n); ++j) p *= factor(j, x);
      return p;
    };
  };
  auto product_derivative = [n](auto factor, auto factor_d) {
    return [n, factor, factor_d](int a, int b, cplx x) {
      const int m = separation(a, b, n);
      cplx total = 0.0;
      for (int j = 1; j <= m; ++j) {
        cplx term = factor_d(j, x);
        for (int i = 1; i <= m; ++i)
          if (i != j) term *= factor(i, x);
        total += term;
      }
      return total;
    };
  };

  wf.horizontal = product(h_factor);
  wf.vertical = product(v_factor);
  wf.horizontal_derivative = product_derivative(h_factor, h_factor_d);
  wf.vertical_derivative = product_derivative(v_factor, v_factor_d);
  for (int j = 1; j <= n - 1; ++j) {
    wf.denominator_zeros.push_back(-(2 * j - 1) * kPi / (2.0 * n));
    wf.denominator_zeros.push_back(j * kPi / n);
  }
  return wf;
}

WeightFamily perturb_horizontal(const WeightFamily& wf, int a, int b, double eps) {
  WeightFamily out = wf;
  out.label = wf.label + "+perturbed";
  auto base = wf.horizontal;
  out.horizontal = [base, a, b, eps](int p, int q, cplx x) {
    return base(p, q, x) + ((p == a && q == b) ? cplx(eps) : cplx(0.0));
  };
  return out;
}

InitialConditionReport check_initial_conditions(const WeightFamily& wf,
                                                double tolerance) {
  InitialConditionReport rep;
  rep.tolerance = tolerance;
  for (int a = 0; a < wf.n; ++a)
    for (int b = 0; b < wf.n; ++b) {
      rep.max_deviation = std::max(rep.max_deviation, std::abs(wf.wh(a, b, 0.0) - 1.0));
      const double want = a == b ? 1.0 : 0.0;
      rep.max_deviation = std::max(rep.max_deviation, std::abs(wf.wv(a, b, 0.0) - want));
    }
  rep.passed = rep.max_deviation < tolerance;
  return rep;
}

} // namespace potts
