#include "potts/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <json.hpp>

#include "potts/errors.hpp"

namespace potts {

using nlohmann::json;

namespace {

const json& reference_document() {
  static const json doc = json::parse(detail::reference_tables_json());
  return doc;
}

double parse_coordinate(const json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    if (s == "pi/2") return kPi / 2.0;
    if (s == "-pi/2") return -kPi / 2.0;
  }
  throw ArgumentError("reference data: bad root coordinate " + value.dump());
}

std::string short_id(const std::string& id) {
  if (id == "t1" || id == "t1_L2_plus") return "t1";
  if (id == "t2" || id == "t2_L2_conj") return "t2";
  if (id == "ta" || id == "tA" || id == "tA_L3_plus") return "ta";
  if (id == "tb" || id == "tB" || id == "tB_L3_conj") return "tb";
  throw ArgumentError("unknown table id '" + id + "' (expected t1, t2, ta or tb)");
}

double distance_modulo(double a, double b, double period) {
  const double d = std::fmod(std::abs(a - b), period);
  return std::min(d, period - d);
}

} // namespace

std::vector<std::string> reference_table_ids() { return {"t1", "t2", "ta", "tb"}; }

ReferenceTable reference_table(const std::string& id) {
  const std::string key = short_id(id);
  for (const json& t : reference_document().at("tables")) {
    if (t.at("id").get<std::string>() != key) continue;
    ReferenceTable table;
    table.id = key;
    table.variant = parse_variant(t.at("variant").get<std::string>());
    table.L = t.at("L").get<int>();
    int index = 0;
    for (const json& r : t.at("rows")) {
      ReferenceRow row;
      row.index = index++;
      row.sector = r.at("sector").get<int>();
      row.energy = r.at("energy").get<double>();
      row.spin = Rational::parse(r.at("spin").get<std::string>());
      for (const json& z : r.at("roots"))
        row.roots.emplace_back(parse_coordinate(z.at(0)), parse_coordinate(z.at(1)));
      table.rows.push_back(std::move(row));
    }
    table.printed_rows = static_cast<int>(table.rows.size());
    if (t.contains("mirror_sector")) {
      const int from = t.at("mirror_sector").at("from").get<int>();
      const int to = t.at("mirror_sector").at("to").get<int>();
      for (int i = 0; i < table.printed_rows; ++i) {
        if (table.rows[i].sector != from) continue;
        ReferenceRow m = table.rows[i];
        m.sector = to;
        m.spin = -m.spin;
        for (cplx& z : m.roots) z = -z;
        m.mirrored = true;
        table.rows.push_back(std::move(m));
      }
    }
    return table;
  }
  throw ArgumentError("reference data has no table '" + key + "'");
}

std::vector<SpectralRecord> reference_records(const ReferenceTable& table) {
  std::vector<SpectralRecord> out;
  for (const auto& row : table.rows) {
    SpectralRecord r;
    r.variant = table.variant;
    r.L = table.L;
    r.sector = row.sector;
    r.energy = row.energy;
    r.spin = row.spin.to_double();
    r.roots = canonicalize_roots(row.roots);
    const BetheSystem sys = make_bethe_system(bethe_variant_of(table.variant), table.L, row.sector);
    r.mu = sys.mu;
    try {
      r.bethe_residual = bethe_residual(sys, row.roots);
    } catch (const DomainError&) {
      r.bethe_residual = std::numeric_limits<double>::infinity();
    }
    r.eig_residual = 0.0;
    r.source = RecordSource::reference;
    out.push_back(std::move(r));
  }
  return out;
}

TableReport reproduce_table(const std::string& id) {
  const ReferenceTable table = reference_table(id);
  ChainSpec spec;
  spec.L = table.L;
  spec.variant = table.variant;
  const PipelineResult result = run_pipeline(spec);

  TableReport report;
  report.id = table.id;
  report.variant = table.variant;
  report.L = table.L;
  report.ground_energy = std::numeric_limits<double>::infinity();
  for (const auto& ps : result.states)
    report.ground_energy = std::min(report.ground_energy, ps.state.energy);

  std::vector<bool> taken(result.states.size(), false);
  const double L = table.L;
  for (const auto& row : table.rows) {
    RowCheck check;
    check.reference = row;
    const BetheSystem sys = make_bethe_system(bethe_variant_of(table.variant), table.L, row.sector);
    try {
      check.printed_residual = bethe_residual(sys, row.roots);
    } catch (const DomainError&) {
      check.printed_residual = std::numeric_limits<double>::infinity();
    }

    int best = -1;
    std::pair<int, double> best_key{2, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < result.states.size(); ++i) {
      const PipelineState& ps = result.states[i];
      if (taken[i] || ps.state.sector != row.sector) continue;
      if (std::abs(ps.state.energy - row.energy) >= 1e-6) continue;
      const int spin_miss = distance_modulo(ps.record.spin, row.spin.to_double(), L) < 1e-6 ? 0 : 1;
      const double roots = ps.roots ? multiset_distance(row.roots, ps.roots->lambdas)
                                    : std::numeric_limits<double>::infinity();
      const std::pair<int, double> key{spin_miss, roots};
      if (best < 0 || key < best_key) {
        best = static_cast<int>(i);
        best_key = key;
      }
    }
    if (best < 0) {
      check.note = "no computed state in this sector within 1e-6 of the energy";
      report.rows.push_back(std::move(check));
      continue;
    }
    taken[best] = true;
    const PipelineState& ps = result.states[best];
    check.matched = true;
    check.computed_energy = ps.state.energy;
    check.computed_spin = ps.record.spin;
    check.computed_roots = ps.record.roots;
    check.energy_deviation = std::abs(ps.state.energy - row.energy);
    check.spin_deviation = distance_modulo(ps.record.spin, row.spin.to_double(), L);
    check.root_deviation = ps.roots ? multiset_distance(row.roots, ps.roots->lambdas)
                                    : std::numeric_limits<double>::infinity();
    check.passed = ps.accepted() && check.energy_deviation < 1e-6 && check.root_deviation < 1e-5 &&
                   check.spin_deviation < 1e-6;
    if (!ps.accepted()) check.note = "pipeline: " + ps.failure;
    else if (check.root_deviation >= 1e-5) check.note = "roots differ from the printed set";
    else if (check.spin_deviation >= 1e-6) check.note = "spin differs modulo L";
    if (check.passed) ++report.passed_rows;
    report.rows.push_back(std::move(check));
  }
  return report;
}

CompletenessReport completeness_report(const PipelineResult& result) {
  CompletenessReport report;
  report.variant = result.spec.variant;
  report.L = result.spec.L;
  report.total = static_cast<int>(result.states.size());
  for (const auto& ps : result.states) {
    ++report.sector_sizes[ps.state.sector];
    ++report.root_counts[ps.state.sector][ps.form.root_count];
    if (ps.failure.rfind("census", 0) == 0) ++report.census_mismatches;
    if (ps.accepted()) {
      ++report.accepted;
      report.max_bethe_residual = std::max(report.max_bethe_residual, ps.roots->residual);
      report.max_energy_deviation = std::max(report.max_energy_deviation, ps.energy_deviation);
    } else {
      report.flagged.push_back("sector " + std::to_string(ps.state.sector) + " E=" +
                               std::to_string(ps.state.energy) + ": " + ps.failure);
    }
    if (ps.form.flagged)
      report.flagged.push_back("sector " + std::to_string(ps.state.sector) + " E=" +
                               std::to_string(ps.state.energy) +
                               ": Lambda-form coefficient near the trim threshold");
  }
  return report;
}

CompletenessReport completeness_report(Variant variant, int L) {
  ChainSpec spec;
  spec.L = L;
  spec.variant = variant;
  return completeness_report(run_pipeline(spec));
}

std::vector<Rational> expected_spins(Variant variant, int sector) {
  const json& lists = reference_document().at("expected_spins");
  std::string family;
  int key = sector;
  switch (variant) {
  case Variant::z3_plus:
    family = "z3";
    break;
  case Variant::z3_minus:
    family = "z3";
    key = (3 - sector) % 3;
    break;
  case Variant::conj:
    family = "conj";
    break;
  default:
    throw ArgumentError("expected_spins: only z3_plus, z3_minus and conj carry spin lists");
  }
  const std::string k = std::to_string(key);
  if (!lists.at(family).contains(k))
    throw ArgumentError("expected_spins: no sector " + std::to_string(sector) + " for " +
                        to_string(variant));
  std::vector<Rational> out;
  for (const json& s : lists.at(family).at(k)) out.push_back(Rational::parse(s.get<std::string>()));
  return out;
}

bool member_modulo(double x, const std::vector<Rational>& values, int L, double tol) {
  return std::any_of(values.begin(), values.end(), [&](const Rational& v) {
    return distance_modulo(x, v.to_double(), L) < tol;
  });
}

KacPartitionReport h2_weight_partition_check() {
  KacPartitionReport report;
  const json& lists = reference_document().at("kac_parity_lists");
  for (const json& s : lists.at("even")) report.even_listed.push_back(Rational::parse(s.get<std::string>()));
  for (const json& s : lists.at("odd")) report.odd_listed.push_back(Rational::parse(s.get<std::string>()));

  std::set<Rational> even_table, odd_table;
  for (int r = 1; r <= 2; ++r)
    for (int s = 1; s <= 5; ++s) (s % 2 == 1 ? even_table : odd_table).insert(kac_weight(r, s));
  report.even_table.assign(even_table.begin(), even_table.end());
  report.odd_table.assign(odd_table.begin(), odd_table.end());

  const std::set<Rational> even_listed(report.even_listed.begin(), report.even_listed.end());
  const std::set<Rational> odd_listed(report.odd_listed.begin(), report.odd_listed.end());
  std::set<Rational> listed = even_listed;
  listed.insert(odd_listed.begin(), odd_listed.end());
  report.distinct_listed = static_cast<int>(listed.size());

  std::set<Rational> all = even_table;
  all.insert(odd_table.begin(), odd_table.end());
  for (const Rational& w : all)
    if (!listed.count(w)) report.unlisted.push_back(w);

  const bool even_inside = std::includes(even_table.begin(), even_table.end(), even_listed.begin(),
                                         even_listed.end());
  const bool no_duplicates = even_listed.size() == report.even_listed.size() &&
                             odd_listed.size() == report.odd_listed.size();
  report.passed = no_duplicates && even_inside && odd_listed == odd_table &&
                  report.unlisted == std::vector<Rational>{Rational(0)} &&
                  listed.size() == even_listed.size() + odd_listed.size();
  return report;
}

} // namespace potts
