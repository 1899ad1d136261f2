#include <doctest.h>

#include "oracles.hpp"
#include "potts/errors.hpp"
#include "potts/lattice.hpp"

using namespace potts;

namespace {

bool has_seam(const std::vector<Seam>& seams, const ComplexMatrix& G) {
  for (const Seam& s : seams)
    if (max_abs(s.matrix - normalize_gauge(G)) < 1e-9) return true;
  return false;
}

} // namespace

TEST_CASE("lax operator is the permutation at x = 0") {
  for (const WeightFamily& w : {potts3_weights(), fz_weights(4)}) {
    const ComplexMatrix L0 = lax(w, 0.0);
    CHECK(max_abs(L0 - permutation_operator(w.n)) == 0.0);
    for (int i = 0; i < L0.rows(); ++i)
      for (int j = 0; j < L0.cols(); ++j) CHECK((L0(i, j) == cplx(0.0) || L0(i, j) == cplx(1.0)));
  }
}

TEST_CASE("lax operator entries") {
  const WeightFamily w = potts3_weights();
  const double x = 0.1;
  const ComplexMatrix L = lax(w, x);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          const cplx expected = a == d ? oracle::potts_wh()(b, a, x) * oracle::potts_wv()(b, c, x) : cplx(0.0);
          CHECK(std::abs(L(a * 3 + b, c * 3 + d) - expected) < 1e-15);
        }
  const ComplexMatrix L6 = lax(w, kPi / 6);
  CHECK(std::abs(L6(0, 0) - 1.0) < 1e-15);
  CHECK(max_abs(L) == doctest::Approx(1.0));
}

TEST_CASE("lax derivative") {
  const WeightFamily w = potts3_weights();
  const auto f = [&](double x) { return oracle::Mat(lax(w, x)); };
  CHECK(max_abs(lax_derivative(w, 0.0) - oracle::derivative(f, 0.0)) < 1e-9);
  CHECK(max_abs(lax_derivative(w, 0.17) - oracle::derivative(f, 0.17)) < 1e-9);
}

TEST_CASE("R-matrix special values") {
  const WeightFamily w = potts3_weights();
  CHECK(max_abs(r_matrix(w, 0.07, 0.0) - lax(w, 0.07)) < 1e-15);
  const ComplexMatrix Rxx = r_matrix(w, 0.13, 0.13);
  CHECK(max_abs(Rxx - permutation_operator(3)) < 1e-14);
  CHECK(seam_residual(w, ComplexMatrix::Identity(3, 3), 0.2, 0.1) == 0.0);
  CHECK_THROWS_AS(r_matrix(w, 0.1, kPi / 6), DomainError);
}

TEST_CASE("Yang-Baxter relation") {
  CHECK(ybe_residual(potts3_weights(), 0.13, 0.07) < 1e-12);
  CHECK(ybe_residual(fz_weights(4), 0.11, 0.05) < 1e-12);
  CHECK(ybe_residual(fz_weights(5), 0.03, 0.19) < 1e-12);
  CHECK(ybe_residual(perturb_horizontal(potts3_weights(), 0, 1, 1e-3), 0.13, 0.07) > 1e-5);
}

TEST_CASE("seam condition for the named seams") {
  const WeightFamily w = potts3_weights();
  CounterRng rng(3);
  for (int k = 0; k < 5; ++k) {
    const double x = sample_spectral_parameter(rng), y = sample_spectral_parameter(rng);
    CHECK(x > 0.02);
    CHECK(x < kPi / 6 - 0.02);
    CHECK(seam_residual(w, g_plus_seam(3).matrix, x, y) < 1e-12);
    CHECK(seam_residual(w, g_minus_seam(3).matrix, x, y) < 1e-12);
    CHECK(seam_residual(w, g_conj_seam(3).matrix, x, y) < 1e-12);
    CHECK(seam_residual(w, site_algebra(3).Z, x, y) > 1e-3);
  }
}

TEST_CASE("seam matrices and labels") {
  const SiteAlgebra s = site_algebra(3);
  CHECK(max_abs(g_plus_seam(3).matrix - s.X.adjoint()) == 0.0);
  CHECK(max_abs(g_minus_seam(3).matrix - s.X) == 0.0);
  CHECK(max_abs(g_conj_seam(3).matrix - s.C) == 0.0);
  CHECK(max_abs(zn_twist_seam(4, 1).matrix - site_algebra(4).X * site_algebra(4).X * site_algebra(4).X) == 0.0);
  CHECK(label_seam(s.X * s.X).label == "g_plus");
  CHECK(label_seam(s.X).label == "g_minus");
  CHECK(label_seam(s.C).label == "g_conj");
  CHECK(label_seam(ComplexMatrix::Identity(3, 3)).label == "identity");
  CHECK(label_seam(s.X * s.C).label == "X*C");
  CHECK_FALSE(label_seam(s.Z).recognized);
  const ComplexMatrix scaled = cplx(0.0, 2.0) * s.X;
  CHECK(max_abs(normalize_gauge(scaled) - s.X) < 1e-15);
}

TEST_CASE("seam discovery recovers S3 for three states") {
  const SeamDiscovery d = discover_seams(potts3_weights(), 2, 7);
  const SiteAlgebra s = site_algebra(3);
  CHECK(d.seams.size() == 6);
  CHECK(d.flagged.empty());
  CHECK(d.max_certification_residual < 1e-10);
  const ComplexMatrix I = ComplexMatrix::Identity(3, 3);
  for (const ComplexMatrix& G : {I, s.X, ComplexMatrix(s.X * s.X), s.C, ComplexMatrix(s.X * s.C),
                                 ComplexMatrix(s.X * s.X * s.C)})
    CHECK(has_seam(d.seams, G));
  for (const Seam& a : d.seams)
    for (const Seam& b : d.seams) CHECK(has_seam(d.seams, a.matrix * b.matrix));
  CHECK(d.commutant_dimension >= 6);
  CHECK_THROWS_AS(discover_seams(potts3_weights(), 1, 7), ArgumentError);
}

TEST_CASE("seam discovery for two and four states") {
  const SeamDiscovery d2 = discover_seams(fz_weights(2), 2, 7);
  CHECK(has_seam(d2.seams, site_algebra(2).X));
  const SeamDiscovery d4 = discover_seams(fz_weights(4), 2, 7);
  for (int l = 1; l <= 3; ++l) CHECK(has_seam(d4.seams, zn_twist_seam(4, l).matrix));
  CHECK(has_seam(d4.seams, g_conj_seam(4).matrix));
  CHECK(d4.max_certification_residual < 1e-10);
  CHECK(d4.flagged.empty());
}

TEST_CASE("seam discovery is deterministic in the seed") {
  const SeamDiscovery a = discover_seams(fz_weights(3), 2, 42);
  const SeamDiscovery b = discover_seams(fz_weights(3), 2, 42);
  REQUIRE(a.seams.size() == b.seams.size());
  for (std::size_t i = 0; i < a.seams.size(); ++i) {
    CHECK(a.seams[i].label == b.seams[i].label);
    CHECK(max_abs(a.seams[i].matrix - b.seams[i].matrix) == 0.0);
  }
}
