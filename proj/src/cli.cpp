#include "potts/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "potts/errors.hpp"
#include "potts/harness.hpp"
#include "potts/records.hpp"

namespace potts::cli {

using nlohmann::json;

namespace {

struct Context {
  std::ostream& out;
  std::ostream& err;
};

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw ArgumentError("failed writing '" + path + "'");
}

void emit(const std::string& out_path, const json& report) {
  if (!out_path.empty()) write_text_file(out_path, report.dump(2) + "\n");
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

std::string fixed8(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(8) << v;
  return s.str();
}

int verdict(Context& ctx, bool pass, const std::string& summary) {
  ctx.out << (pass ? "PASS " : "FAIL ") << summary << "\n";
  return pass ? kPass : kCheckFailed;
}

Variant end_seam_variant(const std::string& name) {
  const Variant v = parse_variant(name);
  if (v != Variant::periodic && v != Variant::z3_plus && v != Variant::z3_minus && v != Variant::conj)
    throw ArgumentError("variant must be periodic, z3_plus, z3_minus or conj");
  return v;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

int verify_ybe(Context& ctx, int n, int samples, std::uint64_t seed, const std::string& out) {
  if (n < 2) throw ArgumentError("--n must be >= 2");
  if (samples < 1) throw ArgumentError("--samples must be >= 1");
  const WeightFamily wf = fz_weights(n);
  const WeightFamily control = perturb_horizontal(wf, 0, 1, 1e-3);
  CounterRng rng(seed);
  json pairs = json::array();
  double worst = 0.0, control_min = std::numeric_limits<double>::infinity(), pointwise = 0.0;
  const WeightFamily p3 = potts3_weights();
  for (int k = 0; k < samples; ++k) {
    const double x = sample_spectral_parameter(rng);
    const double y = sample_spectral_parameter(rng);
    const double r = ybe_residual(wf, x, y);
    const double c = ybe_residual(control, x, y);
    worst = std::max(worst, r);
    control_min = std::min(control_min, c);
    if (n == 3)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (double t : {x, y})
            pointwise = std::max({pointwise, std::abs(wf.wh(a, b, t) - p3.wh(a, b, t)),
                                  std::abs(wf.wv(a, b, t) - p3.wv(a, b, t))});
    pairs.push_back({{"x", x}, {"y", y}, {"residual", r}, {"control_residual", c}});
  }
  bool pass = worst < 1e-12 && control_min > 1e-5;
  json report = {{"command", "verify ybe"}, {"n", n},           {"samples", samples},
                 {"seed", seed},            {"pairs", pairs},   {"max_residual", worst},
                 {"min_control_residual", control_min}};
  if (n == 3) {
    report["fz3_vs_potts3_max_deviation"] = pointwise;
    pass = pass && pointwise < 1e-12;
  }
  report["passed"] = pass;
  emit(out, report);
  std::string summary = "yang-baxter n=" + std::to_string(n) + " max residual " + sci(worst) +
                        " over " + std::to_string(samples) + " pairs; perturbed control min " +
                        sci(control_min);
  if (n == 3) summary += "; fz(3) vs potts3 " + sci(pointwise);
  return verdict(ctx, pass, summary);
}

int verify_seams(Context& ctx, int n, int trials, std::uint64_t seed, const std::string& out) {
  if (n < 2) throw ArgumentError("--n must be >= 2");
  const SeamDiscovery d = discover_seams(fz_weights(n), trials, seed);
  auto contains = [&](const ComplexMatrix& G) {
    return std::any_of(d.seams.begin(), d.seams.end(),
                       [&](const Seam& s) { return max_abs(s.matrix - normalize_gauge(G)) < 1e-9; });
  };
  json expected = json::array();
  bool all_expected = true;
  for (int l = 1; l < n; ++l) {
    const bool has = contains(zn_twist_seam(n, l).matrix);
    all_expected = all_expected && has;
    expected.push_back({{"seam", "X^" + std::to_string(n - l)}, {"l", l}, {"found", has}});
  }
  const bool has_c = contains(g_conj_seam(n).matrix);
  all_expected = all_expected && has_c;
  expected.push_back({{"seam", "C"}, {"found", has_c}});

  bool pass = all_expected && d.flagged.empty() && d.max_certification_residual < 1e-10;
  if (n == 3) pass = pass && d.seams.size() == 6;

  json seams = json::array();
  for (const Seam& s : d.seams) {
    json m = json::array();
    for (int i = 0; i < s.matrix.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < s.matrix.cols(); ++j) row.push_back(complex_json(s.matrix(i, j)));
      m.push_back(row);
    }
    seams.push_back({{"label", s.label}, {"recognized", s.recognized}, {"matrix", m}});
  }
  json report = {{"command", "verify seams"},
                 {"n", n},
                 {"trials", trials},
                 {"seed", seed},
                 {"group_order", d.seams.size()},
                 {"commutant_dimension", d.commutant_dimension},
                 {"monomial_candidates", d.monomial_candidates},
                 {"continuous_starts", d.continuous_starts},
                 {"continuous_solutions", d.continuous_solutions},
                 {"max_certification_residual", d.max_certification_residual},
                 {"flagged", d.flagged},
                 {"expected", expected},
                 {"seams", seams},
                 {"passed", pass}};
  emit(out, report);
  std::string labels;
  for (const Seam& s : d.seams) labels += " " + s.label;
  return verdict(ctx, pass,
                 "seams n=" + std::to_string(n) + ": " + std::to_string(d.seams.size()) +
                     " certified (max residual " + sci(d.max_certification_residual) + "):" + labels);
}

int verify_functional(Context& ctx, const std::string& name, int L, int samples, std::uint64_t seed,
                      const std::string& out) {
  Variant v;
  if (name == "z3" || name == "z3_plus") v = Variant::z3_plus;
  else if (name == "conj") v = Variant::conj;
  else if (name == "periodic") v = Variant::periodic;
  else throw ArgumentError("--variant must be z3, conj or periodic");
  if (L < 2) throw ArgumentError("--L must be >= 2");
  if (samples < 1) throw ArgumentError("--samples must be >= 1");
  CounterRng rng(seed);
  const int sign = functional_identity_sign(v);
  double worst = 0.0, wrong = 0.0;
  json points = json::array();
  for (int k = 0; k < samples; ++k) {
    const double x = rng.uniform(0.35, 0.5);
    const double r = functional_identity_residual(v, L, x);
    const double w = functional_identity_residual(v, L, x, -sign);
    worst = std::max(worst, r);
    wrong = std::max(wrong, w);
    points.push_back({{"x", x}, {"residual", r}, {"wrong_sign_residual", w}});
  }
  const bool pass = worst < 1e-9 && wrong > 1e-3;
  emit(out, {{"command", "verify functional"},
             {"variant", to_string(v)},
             {"L", L},
             {"samples", samples},
             {"seed", seed},
             {"sign", sign},
             {"points", points},
             {"max_residual", worst},
             {"wrong_sign_max_residual", wrong},
             {"passed", pass}});
  return verdict(ctx, pass,
                 "functional identity " + to_string(v) + " L=" + std::to_string(L) +
                     ": max residual " + sci(worst) + ", wrong sign " + sci(wrong));
}

int verify_shift(Context& ctx, const std::string& name, int L, const std::string& out) {
  ChainSpec spec;
  spec.variant = end_seam_variant(name);
  spec.L = L;
  spec.validate();
  const ShiftReport r = shift_relations_check(spec.weights(), spec.seam(), L);
  const bool pass = r.max_residual < 1e-10;
  emit(out, {{"command", "verify shift"},
             {"variant", to_string(spec.variant)},
             {"L", L},
             {"residuals", r.residuals},
             {"max_residual", r.max_residual},
             {"passed", pass}});
  return verdict(ctx, pass,
                 "shift relations " + to_string(spec.variant) + " L=" + std::to_string(L) +
                     ": max residual " + sci(r.max_residual));
}

int verify_hamiltonian(Context& ctx, const std::string& name, int L, const std::string& out) {
  ChainSpec spec;
  spec.variant = parse_variant(name);
  spec.L = L;
  spec.validate();
  const TransferWithDerivative tw =
      transfer_with_derivative(spec.weights(), spec.seam().matrix, L, 0.0, spec.placement());
  const ComplexMatrix log_derivative = -tw.dT * tw.T.inverse();
  const HamiltonianBundle named = named_hamiltonian(spec);
  const AffineFit fit = affine_fit(log_derivative, named.matrix);
  const bool pass = fit.residual < 1e-8;
  emit(out, {{"command", "verify hamiltonian"},
             {"variant", to_string(spec.variant)},
             {"L", L},
             {"scale", fit.scale},
             {"shift", fit.shift},
             {"residual", fit.residual},
             {"passed", pass}});
  return verdict(ctx, pass,
                 "hamiltonian limit " + to_string(spec.variant) + " L=" + std::to_string(L) +
                     ": scale " + fixed8(fit.scale) + " shift " + fixed8(fit.shift) + " residual " +
                     sci(fit.residual));
}

int verify_equivalence(Context& ctx, const std::string& pair_name, int L, const std::string& out) {
  EquivalencePair pair;
  if (pair_name == "h1") pair = EquivalencePair::h1_vs_twisted;
  else if (pair_name == "h2") pair = EquivalencePair::h2_vs_parity;
  else throw ArgumentError("--pair must be h1 or h2");
  const SimilarityReport r = similarity_spectral_check(pair, L);
  const bool pass = r.spectral_deviation < 1e-10 && r.conjugation_residual < 1e-10;
  emit(out, {{"command", "verify equivalence"},
             {"pair", pair_name},
             {"L", L},
             {"reference", to_string(r.reference)},
             {"spectral_deviation", r.spectral_deviation},
             {"conjugation_residual", r.conjugation_residual},
             {"passed", pass}});
  return verdict(ctx, pass,
                 pair_name + " L=" + std::to_string(L) + " vs " + to_string(r.reference) +
                     ": spectra " + sci(r.spectral_deviation) + ", conjugation " +
                     sci(r.conjugation_residual));
}

int spectrum(Context& ctx, const std::string& name, int L, const std::string& out) {
  ChainSpec spec;
  spec.variant = end_seam_variant(name);
  spec.L = L;
  spec.validate();
  const HamiltonianBundle h = named_hamiltonian(spec);
  const std::vector<EigenState> states = resolve_sectors(h.matrix, spec);
  json levels = json::array();
  std::map<int, int> sizes;
  double worst = 0.0;
  for (const auto& s : states) {
    ++sizes[s.sector];
    worst = std::max(worst, s.eig_residual);
    levels.push_back({{"sector", s.sector},
                      {"energy", s.energy},
                      {"degeneracy_group", s.degeneracy_group},
                      {"eig_residual", s.eig_residual}});
  }
  json sector_sizes = json::object();
  for (const auto& [q, c] : sizes) sector_sizes[std::to_string(q)] = c;
  json doc = {{"schema_version", kRecordSchemaVersion},
              {"variant", to_string(spec.variant)},
              {"n", spec.n},
              {"L", L},
              {"sector_charge", sector_charge(spec.variant)},
              {"sector_sizes", sector_sizes},
              {"levels", levels}};
  write_text_file(out, doc.dump(2) + "\n");
  ctx.out << "spectrum " << to_string(spec.variant) << " L=" << L << ": " << states.size()
          << " states, sectors";
  for (const auto& [q, c] : sizes) ctx.out << " " << q << ":" << c;
  ctx.out << ", ground " << fixed8(states.empty() ? 0.0 : std::min_element(states.begin(), states.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; })->energy)
          << ", max eig residual " << sci(worst) << "\n";
  return kPass;
}

int bethe(Context& ctx, const std::string& name, int L, std::optional<int> sector,
          const std::string& out) {
  ChainSpec spec;
  spec.variant = end_seam_variant(name);
  spec.L = L;
  spec.validate();
  const PipelineResult result = run_pipeline(spec, sector);
  std::vector<SpectralRecord> records;
  int failed = 0;
  for (const auto& ps : result.states) {
    if (ps.accepted()) {
      records.push_back(ps.record);
    } else {
      ++failed;
      ctx.err << "state sector " << ps.state.sector << " E=" << fixed8(ps.state.energy) << ": "
              << ps.failure << "\n";
    }
  }
  write_text_file(out, records_to_json(records, spec.variant, spec.n, L));
  for (const auto& r : records) {
    ctx.out << "sector " << std::setw(2) << r.sector << "  E=" << std::setw(12) << fixed8(r.energy)
            << "  s=" << std::setw(11) << fixed8(r.spin) << "  N=" << r.roots.size()
            << "  residual " << sci(r.bethe_residual) << "\n";
  }
  return verdict(ctx, failed == 0,
                 "bethe " + to_string(spec.variant) + " L=" + std::to_string(L) + ": " +
                     std::to_string(records.size()) + "/" + std::to_string(result.states.size()) +
                     " states solved");
}

json roots_json(const std::vector<cplx>& roots) {
  json a = json::array();
  for (const cplx& z : roots) a.push_back(complex_json(z));
  return a;
}

int tables_check(Context& ctx, const std::string& id, const std::string& out) {
  const TableReport r = reproduce_table(id);
  json rows = json::array();
  int i = 0;
  for (const RowCheck& c : r.rows) {
    ++i;
    rows.push_back({{"row", c.reference.index + 1},
                    {"mirrored", c.reference.mirrored},
                    {"sector", c.reference.sector},
                    {"printed_energy", c.reference.energy},
                    {"printed_spin", c.reference.spin.str()},
                    {"printed_roots", roots_json(c.reference.roots)},
                    {"printed_bethe_residual", c.printed_residual},
                    {"matched", c.matched},
                    {"computed_energy", c.computed_energy},
                    {"computed_spin", c.computed_spin},
                    {"computed_roots", roots_json(c.computed_roots)},
                    {"energy_deviation", c.energy_deviation},
                    {"root_deviation", c.root_deviation},
                    {"spin_deviation", c.spin_deviation},
                    {"passed", c.passed},
                    {"note", c.note}});
    ctx.out << (c.passed ? "  pass" : "  FAIL") << " row " << std::setw(2) << c.reference.index + 1
            << (c.reference.mirrored ? "m" : " ") << " sector " << std::setw(2) << c.reference.sector
            << " E=" << std::setw(12) << fixed8(c.reference.energy) << " s=" << std::setw(5)
            << c.reference.spin.str() << "  dE " << sci(c.energy_deviation) << "  droots "
            << sci(c.root_deviation) << "  ds " << sci(c.spin_deviation);
    if (!c.note.empty()) ctx.out << "  (" << c.note << ")";
    ctx.out << "\n";
  }
  emit(out, {{"command", "tables check"},
             {"id", r.id},
             {"variant", to_string(r.variant)},
             {"L", r.L},
             {"ground_energy", r.ground_energy},
             {"rows", rows},
             {"passed_rows", r.passed_rows},
             {"total_rows", r.rows.size()},
             {"passed", r.all_passed()}});
  return verdict(ctx, r.all_passed(),
                 "table " + r.id + ": " + std::to_string(r.passed_rows) + "/" +
                     std::to_string(r.rows.size()) + " rows pass, ground state " +
                     fixed8(r.ground_energy));
}

int completeness(Context& ctx, const std::string& name, int L, const std::string& out) {
  const Variant v = end_seam_variant(name);
  if (L < 2 || L > 7) throw ArgumentError("--L must be in 2..7");
  const CompletenessReport r = completeness_report(v, L);
  json sectors = json::object();
  for (const auto& [q, c] : r.sector_sizes) {
    json counts = json::object();
    for (const auto& [nroots, k] : r.root_counts.at(q)) counts[std::to_string(nroots)] = k;
    sectors[std::to_string(q)] = {{"states", c}, {"root_counts", counts}};
  }
  emit(out, {{"command", "completeness"},
             {"variant", to_string(v)},
             {"L", L},
             {"total", r.total},
             {"accepted", r.accepted},
             {"census_mismatches", r.census_mismatches},
             {"max_bethe_residual", r.max_bethe_residual},
             {"max_energy_deviation", r.max_energy_deviation},
             {"sectors", sectors},
             {"flagged", r.flagged},
             {"passed", r.complete()}});
  for (const auto& [q, c] : r.sector_sizes) {
    ctx.out << "  sector " << std::setw(2) << q << ": " << c << " states, root counts";
    for (const auto& [nroots, k] : r.root_counts.at(q)) ctx.out << " N=" << nroots << "x" << k;
    ctx.out << "\n";
  }
  for (const auto& f : r.flagged) ctx.out << "  flagged: " << f << "\n";
  return verdict(ctx, r.complete(),
                 "completeness " + to_string(v) + " L=" + std::to_string(L) + ": " +
                     std::to_string(r.accepted) + "/" + std::to_string(r.total) +
                     " states with accepted roots, max residual " + sci(r.max_bethe_residual));
}

int zn_build(Context& ctx, int n, const std::string& twist, int L, bool verify, std::uint64_t seed,
             const std::string& out) {
  ChainSpec spec;
  spec.n = n;
  spec.L = L;
  if (twist == "conj") {
    spec.variant = Variant::zn_conj;
  } else {
    spec.variant = Variant::zn_twist;
    try {
      std::size_t used = 0;
      spec.twist = std::stoi(twist, &used);
      if (used != twist.size()) throw std::invalid_argument(twist);
    } catch (const std::logic_error&) {
      throw ArgumentError("--twist must be an integer l in [0, n) or 'conj'");
    }
  }
  spec.validate();
  if (std::pow(static_cast<double>(n), L) > 4096.0)
    throw ArgumentError("n^L above 4096 is not supported");

  const HamiltonianBundle h = named_hamiltonian(spec);
  const EigenSystem es = eigensolve_hermitian(h.matrix);
  json report = {{"command", "zn build"},
                 {"n", n},
                 {"L", L},
                 {"twist", twist},
                 {"seam", spec.seam().label},
                 {"dimension", h.matrix.rows()},
                 {"ground_energy", es.values(0)}};
  ctx.out << "Z(" << n << ") chain L=" << L << " seam " << spec.seam().label << ": dimension "
          << h.matrix.rows() << ", ground " << fixed8(es.values(0)) << "\n";
  if (!verify) {
    emit(out, report);
    return kPass;
  }

  const WeightFamily wf = spec.weights();
  const InitialConditionReport ic = check_initial_conditions(wf);
  double seam_worst = 0.0;
  CounterRng rng(seed);
  for (int k = 0; k < 5; ++k) {
    const double x = sample_spectral_parameter(rng), y = sample_spectral_parameter(rng);
    seam_worst = std::max(seam_worst, seam_residual(wf, spec.seam().matrix, x, y));
  }
  const TransferWithDerivative tw =
      transfer_with_derivative(wf, spec.seam().matrix, L, 0.0, spec.placement());
  const AffineFit fit = affine_fit(-tw.dT * tw.T.inverse(), h.matrix);
  const double herm = hermiticity_defect(h.matrix);
  json charges = json::array();
  double charge_worst = 0.0;
  for (const auto& [label, O] : h.conserved_charges) {
    const double c = commutant_residual(h.matrix, O);
    charge_worst = std::max(charge_worst, c);
    charges.push_back({{"charge", label}, {"commutator", c}});
  }
  const bool pass = ic.passed && seam_worst < 1e-10 && fit.residual < 1e-8 &&
                    std::abs(fit.scale - 1.0) < 1e-8 && herm < 1e-12 && charge_worst < 1e-12;
  report["initial_condition_deviation"] = ic.max_deviation;
  report["seam_residual"] = seam_worst;
  report["hamiltonian_limit"] = {{"scale", fit.scale}, {"shift", fit.shift}, {"residual", fit.residual}};
  report["hermiticity_defect"] = herm;
  report["charges"] = charges;
  report["passed"] = pass;
  emit(out, report);
  return verdict(ctx, pass,
                 "zn n=" + std::to_string(n) + " L=" + std::to_string(L) + ": seam " +
                     sci(seam_worst) + ", limit residual " + sci(fit.residual) + " scale " +
                     fixed8(fit.scale) + ", charges " + sci(charge_worst));
}

} // namespace

int exit_code_for(std::exception_ptr error, std::ostream& err) {
  try {
    std::rethrow_exception(error);
  } catch (const ArgumentError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Integrable Z(3) Potts chain: operator identities, spectra and Bethe roots"};
  app.require_subcommand(1);

  int n = 3, L = 2, samples = 20, trials = 2, sector_value = 0;
  std::uint64_t seed = 1;
  std::string variant, pair, id, twist, out_path;
  bool verify = false;

  auto* verify_cmd = app.add_subcommand("verify", "operator identity checks");
  verify_cmd->require_subcommand(1);
  auto* ybe = verify_cmd->add_subcommand("ybe", "Yang-Baxter relation for Z(n) weights");
  ybe->add_option("--n", n)->required();
  ybe->add_option("--samples", samples);
  ybe->add_option("--seed", seed);
  auto* seams = verify_cmd->add_subcommand("seams", "discover and certify boundary seams");
  seams->add_option("--n", n)->required();
  seams->add_option("--trials", trials);
  seams->add_option("--seed", seed);
  auto* functional = verify_cmd->add_subcommand("functional", "cubic transfer-matrix identity");
  functional->add_option("--variant", variant)->required();
  functional->add_option("--L", L)->required();
  functional->add_option("--samples", samples);
  functional->add_option("--seed", seed);
  auto* shift = verify_cmd->add_subcommand("shift", "T(0) acts as a translation");
  shift->add_option("--variant", variant)->required();
  shift->add_option("--L", L)->required();
  auto* hamiltonian = verify_cmd->add_subcommand("hamiltonian", "logarithmic derivative vs chain");
  hamiltonian->add_option("--variant", variant)->required();
  hamiltonian->add_option("--L", L)->required();
  auto* equivalence = verify_cmd->add_subcommand("equivalence", "bulk-seam chains vs end-seam chains");
  equivalence->add_option("--pair", pair)->required();
  equivalence->add_option("--L", L)->required();
  for (auto* sub : {ybe, seams, functional, shift, hamiltonian, equivalence})
    sub->add_option("--out", out_path, "JSON report path");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "sector-resolved spectrum");
  spectrum_cmd->add_option("--variant", variant)->required();
  spectrum_cmd->add_option("--L", L)->required();
  spectrum_cmd->add_option("--out", out_path)->required();

  auto* bethe_cmd = app.add_subcommand("bethe", "Bethe roots for every state");
  bethe_cmd->add_option("--variant", variant)->required();
  bethe_cmd->add_option("--L", L)->required();
  auto* sector_opt = bethe_cmd->add_option("--sector", sector_value);
  bethe_cmd->add_option("--out", out_path)->required();

  auto* tables_cmd = app.add_subcommand("tables", "reference tables");
  tables_cmd->require_subcommand(1);
  auto* check = tables_cmd->add_subcommand("check", "reproduce a reference table");
  check->add_option("--id", id)->required()->check(
      CLI::IsMember({"t1", "t2", "ta", "tb", "t1_L2_plus", "t2_L2_conj", "tA_L3_plus", "tB_L3_conj"}));
  check->add_option("--out", out_path);

  auto* complete_cmd = app.add_subcommand("completeness", "Bethe-root census over the spectrum");
  complete_cmd->add_option("--variant", variant)->required();
  complete_cmd->add_option("--L", L)->required();
  complete_cmd->add_option("--out", out_path);

  auto* zn_cmd = app.add_subcommand("zn", "Z(n) Fateev-Zamolodchikov chains");
  zn_cmd->require_subcommand(1);
  auto* build = zn_cmd->add_subcommand("build", "build a twisted Z(n) chain");
  build->add_option("--n", n)->required();
  build->add_option("--twist", twist)->required();
  build->add_option("--L", L)->required();
  build->add_flag("--verify", verify);
  build->add_option("--seed", seed);
  build->add_option("--out", out_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*ybe) return verify_ybe(ctx, n, samples, seed, out_path);
    if (*seams) return verify_seams(ctx, n, trials, seed, out_path);
    if (*functional) return verify_functional(ctx, variant, L, samples, seed, out_path);
    if (*shift) return verify_shift(ctx, variant, L, out_path);
    if (*hamiltonian) return verify_hamiltonian(ctx, variant, L, out_path);
    if (*equivalence) return verify_equivalence(ctx, pair, L, out_path);
    if (*spectrum_cmd) return spectrum(ctx, variant, L, out_path);
    if (*bethe_cmd)
      return bethe(ctx, variant, L,
                   sector_opt->count() ? std::optional<int>(sector_value) : std::nullopt, out_path);
    if (*check) return tables_check(ctx, id, out_path);
    if (*complete_cmd) return completeness(ctx, variant, L, out_path);
    if (*build) return zn_build(ctx, n, twist, L, verify, seed, out_path);
  } catch (...) {
    return exit_code_for(std::current_exception(), err);
  }
  err << "usage error: no command\n";
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

} // namespace potts::cli
