#include "potts/records.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "potts/errors.hpp"

namespace potts {

using nlohmann::json;

namespace {

json record_to_json(const SpectralRecord& r) {
  json roots = json::array();
  for (const cplx& z : r.roots) roots.push_back({{"re", z.real()}, {"im", z.imag()}});
  return {{"sector", r.sector},
          {"energy", r.energy},
          {"spin", r.spin},
          {"mu", r.mu},
          {"roots", roots},
          {"bethe_residual", r.bethe_residual},
          {"eig_residual", r.eig_residual},
          {"source", r.source == RecordSource::computed ? "computed" : "reference"}};
}

double finite_or_throw(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ArgumentError(std::string("records_from_json: missing number '") + key + "'");
  return j.at(key).get<double>();
}

} // namespace

std::string records_to_json(const std::vector<SpectralRecord>& records, Variant variant, int n,
                            int L) {
  json doc;
  doc["schema_version"] = kRecordSchemaVersion;
  doc["variant"] = to_string(variant);
  doc["n"] = n;
  doc["L"] = L;
  doc["records"] = json::array();
  for (const auto& r : records) {
    if (r.variant != variant || r.L != L)
      throw ArgumentError("records_to_json: record variant or L differs from the document");
    doc["records"].push_back(record_to_json(r));
  }
  return doc.dump(2) + "\n";
}

std::vector<SpectralRecord> records_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ArgumentError(std::string("records_from_json: ") + e.what());
  }
  if (!doc.is_object() || doc.value("schema_version", 0) != kRecordSchemaVersion)
    throw ArgumentError("records_from_json: unsupported schema_version");
  if (!doc.contains("variant") || !doc.contains("L") || !doc.contains("records"))
    throw ArgumentError("records_from_json: missing variant, L or records");
  const Variant variant = parse_variant(doc.at("variant").get<std::string>());
  const int L = doc.at("L").get<int>();
  std::vector<SpectralRecord> out;
  for (const json& j : doc.at("records")) {
    SpectralRecord r;
    r.variant = variant;
    r.L = L;
    r.sector = j.at("sector").get<int>();
    r.energy = finite_or_throw(j, "energy");
    r.spin = finite_or_throw(j, "spin");
    r.mu = j.at("mu").get<int>();
    r.bethe_residual = finite_or_throw(j, "bethe_residual");
    r.eig_residual = finite_or_throw(j, "eig_residual");
    for (const json& z : j.at("roots")) r.roots.emplace_back(finite_or_throw(z, "re"), finite_or_throw(z, "im"));
    const std::string source = j.value("source", "computed");
    if (source == "computed") r.source = RecordSource::computed;
    else if (source == "reference") r.source = RecordSource::reference;
    else throw ArgumentError("records_from_json: unknown source '" + source + "'");
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

void process_state(PipelineState& ps, const ChainSpec& spec, const BetheSystem& sys,
                   const cplx lambda0, double additive_constant) {
  const LambdaForm& form = ps.form;
  SpectralRecord& rec = ps.record;
  rec.variant = spec.variant;
  rec.L = spec.L;
  rec.sector = ps.state.sector;
  rec.energy = ps.state.energy;
  rec.eig_residual = ps.state.eig_residual;
  rec.mu = sys.mu;

  const cplx l0 = form.evaluate(0.0, spec.L);
  ps.energy_oracle_deviation =
      std::abs(-form.derivative(0.0, spec.L) / l0 + additive_constant - ps.state.energy);

  if (form.root_count != sys.root_count || form.mu != sys.mu) {
    ps.failure = "census: fitted N=" + std::to_string(form.root_count) +
                 " mu=" + std::to_string(form.mu) + ", expected N=" +
                 std::to_string(sys.root_count) + " mu=" + std::to_string(sys.mu);
    return;
  }
  try {
    RootSet rs = newton_refine(sys, seeds_from_lambda(form));
    const SpinResult spin = spin_from_roots(sys, rs.lambdas);
    rs.energy = energy_from_roots(sys, rs.lambdas);
    rs.spin = spin.value;
    ps.branch_cut_hits = spin.branch_cut_hits;
    ps.energy_deviation = std::abs(rs.energy - ps.state.energy);
    ps.spin_oracle_deviation =
        std::abs(std::exp(cplx(0.0, -2.0 * kPi * spin.value / spec.L)) - lambda0);
    rec.spin = spin.value;
    rec.roots = rs.lambdas;
    rec.bethe_residual = rs.residual;
    ps.roots = std::move(rs);
    if (ps.roots->residual >= 1e-9) ps.failure = "residual above 1e-9";
    else if (ps.energy_deviation >= 1e-7) ps.failure = "root energy disagrees with H";
  } catch (const SolverError& e) {
    ps.failure = std::string("solver: ") + e.what();
  } catch (const DomainError& e) {
    ps.failure = std::string("domain: ") + e.what();
  } catch (const NumericalError& e) {
    ps.failure = std::string("numerical: ") + e.what();
  }
}

void order_degenerate_levels(std::vector<PipelineState>& states) {
  std::size_t begin = 0;
  while (begin < states.size()) {
    std::size_t end = begin + 1;
    while (end < states.size() && states[end].state.sector == states[begin].state.sector &&
           std::abs(states[end].state.energy - states[begin].state.energy) < 1e-9)
      ++end;
    std::stable_sort(states.begin() + begin, states.begin() + end,
                     [](const PipelineState& a, const PipelineState& b) {
                       return a.record.spin < b.record.spin - 1e-9;
                     });
    begin = end;
  }
}

} // namespace

PipelineResult run_pipeline(const ChainSpec& spec, std::optional<int> sector) {
  spec.validate();
  const BetheVariant bv = bethe_variant_of(spec.variant);
  const HamiltonianBundle bundle = named_hamiltonian(spec);
  const HamiltonianBundle limit =
      hamiltonian_limit(spec.weights(), spec.seam(), spec.L, spec.placement());

  std::vector<EigenState> states = resolve_sectors(bundle.matrix, spec);
  if (sector) {
    std::erase_if(states, [&](const EigenState& s) { return s.sector != *sector; });
    if (states.empty()) throw ArgumentError("run_pipeline: no states in sector " + std::to_string(*sector));
  }
  const std::vector<LambdaForm> forms = interpolate_lambda_forms(states, spec);
  const std::vector<cplx> lambda0 = lambda_batch(transfer(spec, 0.0), states);

  PipelineResult out;
  out.spec = spec;
  out.states.resize(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    PipelineState& ps = out.states[i];
    ps.state = states[i];
    ps.form = forms[i];
    const BetheSystem sys = make_bethe_system(bv, spec.L, ps.state.sector);
    process_state(ps, spec, sys, lambda0[i], limit.additive_constant);
  }
  order_degenerate_levels(out.states);
  return out;
}

} // namespace potts
