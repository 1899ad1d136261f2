#pragma once

#include <functional>
#include <string>
#include <vector>

#include "potts/algebra.hpp"

namespace potts {

/// Evaluations closer than this to a weight denominator zero (mod pi) throw.
inline constexpr double kSingularityGuard = 1e-6;

/// Edge weights W_h(a,b|x), W_v(a,b|x) of an n-state spin model on its
/// integrable manifold. States are 0-based, 0 <= a,b < n.
///
/// The raw callables are never invoked directly by library code; `wh`/`wv`
/// apply the singularity guard first. Derivative callables are optional: when
/// absent, `dwh`/`dwv` fall back to a central difference with step 1e-6.
struct WeightFamily {
  using Fn = std::function<cplx(int, int, cplx)>;

  int n = 0;
  std::string label;
  Fn horizontal;
  Fn vertical;
  Fn horizontal_derivative;
  Fn vertical_derivative;
  /// Real x values where some denominator vanishes; meaningful modulo pi.
  std::vector<double> denominator_zeros;

  cplx wh(int a, int b, cplx x) const;
  cplx wv(int a, int b, cplx x) const;
  cplx dwh(int a, int b, cplx x) const;
  cplx dwv(int a, int b, cplx x) const;

  /// Distance from x to the nearest denominator zero, measured modulo pi.
  double distance_to_singularity(cplx x) const;
  /// Throws DomainError within kSingularityGuard of a denominator zero.
  void check_domain(cplx x) const;
};

/// Self-dual three-state Potts weights: a(x) off the diagonal of W_h, b(x)
/// off the diagonal of W_v, ones on both diagonals.
WeightFamily potts3_weights();

cplx potts3_a(cplx x); ///< sin(pi/6 - x) / sin(pi/6 + x)
cplx potts3_b(cplx x); ///< sin(x) / sin(pi/3 - x)
cplx potts3_g(cplx x); ///< sin(pi/6 + x)
cplx potts3_g1(cplx x); ///< sin(pi/3 - x)

/// Fateev-Zamolodchikov Z(n) weights. The product runs over j = 1..m with
/// m = (a - b) mod n taken literally in {0, ..., n-1}.
WeightFamily fz_weights(int n);

/// Copy of `wf` with eps added to W_h(a,b|x) for the single ordered pair
/// (a, b). Breaks integrability; used as a control.
WeightFamily perturb_horizontal(const WeightFamily& wf, int a, int b, double eps);

struct InitialConditionReport {
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// W_h(a,b|0) = 1 and W_v(a,b|0) = delta_ab over all state pairs.
InitialConditionReport check_initial_conditions(const WeightFamily& wf,
                                                double tolerance = 1e-14);

} // namespace potts
