// Prints one PASS/FAIL line per acceptance criterion and exits nonzero when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "potts/bethe.hpp"
#include "potts/harness.hpp"
#include "potts/lattice.hpp"
#include "potts/rng.hpp"
#include "potts/transfer.hpp"

using namespace potts;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

struct Verdict {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

bool table_spins_in(const TableReport& rep, const std::vector<Rational>& allowed) {
  for (const RowCheck& rc : rep.rows)
    if (!rc.matched || !member_modulo(rc.computed_spin, allowed, rep.L)) return false;
  return true;
}

void table_criterion(Verdict& v, const std::string& id, std::size_t rows, double ground) {
  const TableReport rep = reproduce_table(id);
  v.detail << id << " " << rep.passed_rows << "/" << rep.rows.size() << " rows";
  double e_worst = 0.0, r_worst = 0.0;
  for (const RowCheck& rc : rep.rows) {
    e_worst = std::max(e_worst, rc.energy_deviation);
    r_worst = std::max(r_worst, rc.root_deviation);
    if (!rc.passed)
      v.detail << "; row " << rc.reference.index + 1 << (rc.reference.mirrored ? " (mirrored)" : "")
               << " E=" << rc.reference.energy << " root deviation " << sci(rc.root_deviation);
  }
  v.detail << "; max energy deviation " << sci(e_worst) << ", ground " << rep.ground_energy;
  v.require(rep.rows.size() == rows, "row count");
  v.require(rep.all_passed(), "rows");
  v.require(std::abs(rep.ground_energy - ground) < 1e-7, "ground state");
}

Verdict criterion_table1() {
  Verdict v;
  const auto t0 = Clock::now();
  table_criterion(v, "t1", 9, -4.93624921);
  const TableReport rep = reproduce_table("t1");
  const std::vector<Rational> allowed{Rational(0), Rational(1, 3), Rational(-1, 3), Rational(2, 3),
                                      Rational(-2, 3), Rational(1)};
  v.require(table_spins_in(rep, allowed), "spins");
  const double t = seconds_since(t0);
  v.detail << "; " << t << " s";
  v.require(t < 10.0, "runtime");
  return v;
}

Verdict criterion_table2() {
  Verdict v;
  table_criterion(v, "t2", 9, -5.77350269);
  const TableReport rep = reproduce_table("t2");
  int doublet = 0;
  for (const RowCheck& rc : rep.rows)
    if (rc.reference.sector == -1 && std::abs(rc.computed_energy + 1.67372658) < 1e-7) {
      ++doublet;
      v.require(std::abs(std::abs(rc.computed_spin) - 0.5) < 1e-6, "doublet spin");
    }
  v.detail << "; nu=-1 doublet states " << doublet;
  v.require(doublet == 2, "doublet");
  return v;
}

Verdict criterion_large_table(const std::string& id, double ground) {
  Verdict v;
  table_criterion(v, id, 27, ground);
  return v;
}

Verdict criterion_completeness() {
  Verdict v;
  for (Variant var : {Variant::z3_plus, Variant::conj, Variant::periodic})
    for (int L = 2; L <= 3; ++L) {
      const CompletenessReport r = completeness_report(var, L);
      v.detail << to_string(var) << " L=" << L << " " << r.accepted << "/" << r.total << "; ";
      v.require(r.complete(), to_string(var) + " L=" + std::to_string(L));
      v.require(r.max_bethe_residual < 1e-9, "residual");
      const BetheVariant bv = bethe_variant_of(var);
      for (const auto& [sector, counts] : r.root_counts)
        v.require(counts.size() == 1 && counts.begin()->first == expected_root_count(bv, L, sector),
                  "census");
    }
  return v;
}

Verdict criterion_ybe() {
  Verdict v;
  for (int n = 3; n <= 5; ++n) {
    const WeightFamily w = fz_weights(n);
    CounterRng rng(1);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double x = sample_spectral_parameter(rng), y = sample_spectral_parameter(rng);
      worst = std::max(worst, ybe_residual(w, x, y));
    }
    v.detail << "n=" << n << " " << sci(worst) << "; ";
    v.require(worst < 1e-12, "ybe n=" + std::to_string(n));
  }
  const WeightFamily fz = fz_weights(3), p = potts3_weights();
  CounterRng rng(2);
  double pointwise = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double x = sample_spectral_parameter(rng);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        pointwise = std::max({pointwise, std::abs(fz.wh(a, b, x) - p.wh(a, b, x)),
                              std::abs(fz.wv(a, b, x) - p.wv(a, b, x))});
  }
  v.detail << "fz(3) vs potts3 " << sci(pointwise);
  v.require(pointwise < 1e-12, "fz(3) = potts3");
  return v;
}

Verdict criterion_seams() {
  Verdict v;
  const SeamDiscovery d3 = discover_seams(fz_weights(3), 2, 1);
  const SiteAlgebra a = site_algebra(3);
  const std::vector<ComplexMatrix> s3{ComplexMatrix::Identity(3, 3), a.X, a.X.adjoint(), a.C,
                                      a.C * a.X, a.C * a.X.adjoint()};
  int found = 0;
  for (const ComplexMatrix& g : s3)
    for (const Seam& s : d3.seams)
      if (max_abs(s.matrix - normalize_gauge(g)) < 1e-9) ++found;
  v.detail << "n=3: " << d3.seams.size() << " seams, " << found << " of S3, residual "
           << sci(d3.max_certification_residual);
  v.require(d3.seams.size() == 6 && found == 6, "S3 group");
  v.require(d3.max_certification_residual < 1e-10, "n=3 certification");

  const SeamDiscovery d4 = discover_seams(fz_weights(4), 2, 1);
  std::vector<ComplexMatrix> want;
  for (int l = 1; l <= 3; ++l) want.push_back(zn_twist_seam(4, l).matrix);
  want.push_back(g_conj_seam(4).matrix);
  int found4 = 0;
  for (const ComplexMatrix& g : want)
    for (const Seam& s : d4.seams)
      if (max_abs(s.matrix - normalize_gauge(g)) < 1e-9) ++found4;
  v.detail << "; n=4: " << d4.seams.size() << " seams, " << found4 << "/4 expected, residual "
           << sci(d4.max_certification_residual);
  v.require(found4 == 4, "n=4 seams");
  v.require(d4.max_certification_residual < 1e-10, "n=4 certification");
  return v;
}

Verdict criterion_functional() {
  Verdict v;
  for (Variant var : {Variant::z3_plus, Variant::conj})
    for (int L = 2; L <= 3; ++L) {
      CounterRng rng(1);
      double worst = 0.0, wrong = 0.0;
      const int sign = functional_identity_sign(var);
      for (int k = 0; k < 20; ++k) {
        const double x = rng.uniform(0.35, 0.5);
        worst = std::max(worst, functional_identity_residual(var, L, x));
        wrong = std::max(wrong, functional_identity_residual(var, L, x, -sign));
      }
      v.detail << to_string(var) << " L=" << L << " " << sci(worst) << " (wrong sign " << sci(wrong) << "); ";
      v.require(worst < 1e-9, "identity");
      v.require(wrong > 1e-3, "control");
    }
  return v;
}

Verdict criterion_hamiltonian_limit() {
  Verdict v;
  double fit_worst = 0.0, shift_worst = 0.0;
  for (Variant var : {Variant::periodic, Variant::z3_plus, Variant::z3_minus, Variant::conj})
    for (int L = 2; L <= 4; ++L) {
      ChainSpec s;
      s.variant = var;
      s.L = L;
      const TransferWithDerivative tw = transfer_with_derivative(s.weights(), s.seam().matrix, L, 0.0,
                                                                 s.placement());
      const AffineFit fit = affine_fit(-tw.dT * tw.T.inverse(), named_hamiltonian(s).matrix);
      fit_worst = std::max(fit_worst, fit.residual);
      v.require(std::abs(fit.scale - 1.0) < 1e-8, "scale");
      shift_worst = std::max(shift_worst, shift_relations_check(s.weights(), s.seam(), L).max_residual);
    }
  v.detail << "affine residual " << sci(fit_worst) << ", shift relations " << sci(shift_worst);
  v.require(fit_worst < 1e-8, "limit");
  v.require(shift_worst < 1e-10, "shift");
  return v;
}

Verdict criterion_equivalences() {
  Verdict v;
  const auto t0 = Clock::now();
  const std::vector<std::pair<EquivalencePair, int>> cases{
      {EquivalencePair::h1_vs_twisted, 3}, {EquivalencePair::h1_vs_twisted, 6},
      {EquivalencePair::h1_vs_twisted, 4}, {EquivalencePair::h1_vs_twisted, 5},
      {EquivalencePair::h2_vs_parity, 2},  {EquivalencePair::h2_vs_parity, 4},
      {EquivalencePair::h2_vs_parity, 3},  {EquivalencePair::h2_vs_parity, 5}};
  const std::map<int, Variant> h1_ref{{3, Variant::periodic}, {6, Variant::periodic},
                                      {4, Variant::z3_plus}, {5, Variant::z3_minus}};
  const std::map<int, Variant> h2_ref{{2, Variant::periodic}, {4, Variant::periodic},
                                      {3, Variant::conj}, {5, Variant::conj}};
  double worst = 0.0;
  for (const auto& [pair, L] : cases) {
    const SimilarityReport r = similarity_spectral_check(pair, L);
    const Variant want = pair == EquivalencePair::h1_vs_twisted ? h1_ref.at(L) : h2_ref.at(L);
    v.require(r.reference == want, "reference chain");
    worst = std::max(worst, r.spectral_deviation);
  }
  const double t = seconds_since(t0);
  v.detail << "max spectral deviation " << sci(worst) << "; " << t << " s";
  v.require(worst < 1e-10, "spectra");
  v.require(t < 300.0, "runtime");
  return v;
}

std::vector<cplx> sector_spectrum(const ComplexMatrix& T, const ComplexMatrix& O, cplx eigenvalue) {
  const Eigen::Index D = T.rows();
  ComplexMatrix P = ComplexMatrix::Zero(D, D), Ok = ComplexMatrix::Identity(D, D);
  for (int k = 0; k < 3; ++k) {
    P += std::pow(std::conj(eigenvalue), k) * Ok;
    Ok = Ok * O;
  }
  P /= 3.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(P);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < D; ++i)
    if (es.eigenvalues()(i) > 0.5) cols.push_back(i);
  ComplexMatrix B(D, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) B.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]);
  const ComplexMatrix R = B.adjoint() * T * B;
  Eigen::ComplexEigenSolver<ComplexMatrix> ce(R, false);
  std::vector<cplx> out(ce.eigenvalues().data(), ce.eigenvalues().data() + ce.eigenvalues().size());
  return out;
}

double spectrum_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return INFINITY;
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (cplx z : a) {
    double best = INFINITY;
    std::size_t at = 0;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used[j] && std::abs(z - b[j]) < best) {
        best = std::abs(z - b[j]);
        at = j;
      }
    used[at] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

Verdict criterion_sectors() {
  Verdict v;
  const cplx w = std::polar(1.0, 2.0 * kPi / 3.0);
  for (int L = 2; L <= 3; ++L) {
    ChainSpec z;
    z.variant = Variant::z3_plus;
    z.L = L;
    std::map<int, int> zs;
    for (const EigenState& s : resolve_sectors(named_hamiltonian(z).matrix, z)) ++zs[s.sector];
    ChainSpec c;
    c.variant = Variant::conj;
    c.L = L;
    std::map<int, int> cs;
    for (const EigenState& s : resolve_sectors(named_hamiltonian(c).matrix, c)) ++cs[s.sector];
    const int D = ipow(3, L);
    v.detail << "L=" << L << " Z(3) " << zs[0] << "," << zs[1] << "," << zs[2] << " Z(2) " << cs[1]
             << "," << cs[-1] << "; ";
    if (L == 2) v.require(zs[0] == 3 && zs[1] == 3 && zs[2] == 3, "Z(3) dimensions");
    v.require(cs[1] == (D + 1) / 2 && cs[-1] == (D - 1) / 2, "Z(2) dimensions");
  }
  double worst = 0.0;
  CounterRng rng(4);
  for (int L = 2; L <= 3; ++L) {
    ChainSpec plus, minus;
    plus.variant = Variant::z3_plus;
    minus.variant = Variant::z3_minus;
    plus.L = minus.L = L;
    const ComplexMatrix O = global_charge(ChargeKind::z3, L, 3);
    for (int k = 0; k < 3; ++k) {
      const double x = sample_spectral_parameter(rng);
      const ComplexMatrix Tp = transfer(plus, x), Tm = transfer(minus, x);
      for (int q = 0; q < 3; ++q) {
        const std::vector<cplx> sp = sector_spectrum(Tp, O, std::pow(w, -q));
        const std::vector<cplx> sm = sector_spectrum(Tm, O, std::pow(w, -((3 - q) % 3)));
        worst = std::max(worst, spectrum_distance(sp, sm));
      }
    }
  }
  v.detail << "sector-wise T(+)/T(-) spectra " << sci(worst);
  v.require(worst < 1e-10, "spectral equalities");
  return v;
}

Verdict criterion_oracles() {
  Verdict v;
  double spin_worst = 0.0, energy_worst = 0.0;
  int states = 0;
  for (Variant var : {Variant::z3_plus, Variant::conj, Variant::periodic})
    for (int L = 2; L <= 3; ++L) {
      ChainSpec s;
      s.variant = var;
      s.L = L;
      for (const PipelineState& st : run_pipeline(s).states) {
        ++states;
        v.require(st.accepted(), "state accepted");
        spin_worst = std::max(spin_worst, st.spin_oracle_deviation);
        energy_worst = std::max(energy_worst, st.energy_oracle_deviation);
      }
    }
  v.detail << states << " states; momentum " << sci(spin_worst) << ", energy " << sci(energy_worst);
  v.require(spin_worst < 1e-7, "momentum oracle");
  v.require(energy_worst < 1e-7, "energy oracle");
  return v;
}

Verdict criterion_properties() {
  Verdict v;
  int pairs = 0;
  for (int L = 2; L <= 3; ++L) {
    ChainSpec s;
    s.variant = Variant::z3_plus;
    s.L = L;
    const PipelineResult res = run_pipeline(s);
    for (const PipelineState& a : res.states) {
      if (a.state.sector != 1 || !a.roots) continue;
      std::vector<cplx> reflected;
      for (cplx l : a.roots->lambdas) reflected.push_back(-std::conj(l));
      bool matched = false;
      for (const PipelineState& b : res.states)
        if (b.state.sector == 2 && b.roots && std::abs(b.state.energy - a.state.energy) < 1e-8 &&
            multiset_distance(b.roots->lambdas, reflected) < 1e-6)
          matched = true;
      v.require(matched, "reflection partner");
      ++pairs;
    }
  }
  CounterRng rng(13);
  int idempotent = 0;
  for (int k = 0; k < 500; ++k) {
    std::vector<cplx> roots;
    for (int j = 0; j < 4; ++j) roots.emplace_back(rng.uniform(-2, 2), rng.uniform(-8, 8));
    const std::vector<cplx> c = canonicalize_roots(roots);
    if (canonicalize_roots(c) == c) ++idempotent;
  }
  const KacPartitionReport kac = h2_weight_partition_check();
  v.detail << pairs << " sector-1 root sets reflected; canonicalization idempotent " << idempotent
           << "/500; Kac partition " << (kac.passed ? "exact" : "broken");
  v.require(pairs > 0, "pairs");
  v.require(idempotent == 500, "canonicalization");
  v.require(kac.passed, "Kac partition");
  return v;
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"table 1 reproduction (L=2, H+)", criterion_table1},
      {"table 2 reproduction (L=2, Hc)", criterion_table2},
      {"table A (L=3, H+)", [] { return criterion_large_table("ta", -7.99554373); }},
      {"table B (L=3, Hc)", [] { return criterion_large_table("tb", -8.53674848); }},
      {"completeness at L=2,3", criterion_completeness},
      {"Yang-Baxter relation n=3,4,5", criterion_ybe},
      {"seam discovery", criterion_seams},
      {"functional identities", criterion_functional},
      {"Hamiltonian limit and shift relations", criterion_hamiltonian_limit},
      {"bulk-seam spectral equivalences", criterion_equivalences},
      {"sector structure", criterion_sectors},
      {"momentum and energy oracles", criterion_oracles},
      {"property suite", criterion_properties}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.passed = false;
      v.detail << "exception: " << e.what();
    }
    if (!v.passed) ++failed;
    std::printf("%s criterion %zu: %s: %s\n", v.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
