#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "potts/rational.hpp"
#include "potts/records.hpp"

namespace potts {

namespace detail {
std::string_view reference_tables_json();
}

struct ReferenceRow {
  /// Position in the printed table; mirrored rows reuse the index of their source.
  int index = 0;
  int sector = 0;
  double energy = 0.0;
  Rational spin;
  std::vector<cplx> roots;
  /// Generated from a printed row by lambda -> -lambda, sector 1 -> 2.
  bool mirrored = false;
};

struct ReferenceTable {
  std::string id; ///< t1, t2, ta or tb
  Variant variant = Variant::z3_plus;
  int L = 2;
  int printed_rows = 0;
  std::vector<ReferenceRow> rows;
};

/// t1, t2, ta, tb.
std::vector<std::string> reference_table_ids();
/// Accepts the short id or the long form (t1_L2_plus, t2_L2_conj, tA_L3_plus,
/// tB_L3_conj); throws ArgumentError for anything else.
ReferenceTable reference_table(const std::string& id);
std::vector<SpectralRecord> reference_records(const ReferenceTable& table);

struct RowCheck {
  ReferenceRow reference;
  bool matched = false;
  double computed_energy = 0.0;
  double computed_spin = 0.0;
  std::vector<cplx> computed_roots;
  double energy_deviation = 0.0;
  double root_deviation = 0.0;
  /// Distance of the computed spin from the printed one, modulo L.
  double spin_deviation = 0.0;
  /// Bethe residual of the printed roots.
  double printed_residual = 0.0;
  bool passed = false;
  std::string note;
};

struct TableReport {
  std::string id;
  Variant variant = Variant::z3_plus;
  int L = 2;
  std::vector<RowCheck> rows;
  int passed_rows = 0;
  double ground_energy = 0.0;
  bool all_passed() const { return passed_rows == static_cast<int>(rows.size()); }
};

/// Runs the full pipeline for the table's chain and compares every reference
/// row: energy within 1e-6 selects candidates, then roots must agree as
/// multisets (mod i pi) within 1e-5 and spins modulo L within 1e-6.
TableReport reproduce_table(const std::string& id);

struct CompletenessReport {
  Variant variant = Variant::z3_plus;
  int L = 2;
  int total = 0;
  int accepted = 0;
  std::map<int, int> sector_sizes;
  /// sector -> root count -> number of states.
  std::map<int, std::map<int, int>> root_counts;
  int census_mismatches = 0;
  double max_bethe_residual = 0.0;
  double max_energy_deviation = 0.0;
  std::vector<std::string> flagged;
  bool complete() const { return total > 0 && accepted == total && census_mismatches == 0; }
};

CompletenessReport completeness_report(Variant variant, int L);
CompletenessReport completeness_report(const PipelineResult& result);

/// Spins Delta - Delta-bar of the conformal towers expected in a sector:
/// Q in {0,1,2} for periodic and Z(3) chains, nu in {+1,-1} for conj.
std::vector<Rational> expected_spins(Variant variant, int sector);

/// Whether x equals some element of `values` modulo L, within tol.
bool member_modulo(double x, const std::vector<Rational>& values, int L, double tol = 1e-6);

struct KacPartitionReport {
  std::vector<Rational> even_listed;
  std::vector<Rational> odd_listed;
  /// Distinct Kac weights with s odd (even parity) and s even (odd parity).
  std::vector<Rational> even_table;
  std::vector<Rational> odd_table;
  /// Kac weights absent from both lists.
  std::vector<Rational> unlisted;
  int distinct_listed = 0;
  bool passed = false;
};

/// The listed parity classes must equal the s-odd / s-even Kac weights, the
/// identity weight Delta_{1,1} = 0 being the only value left unlisted.
KacPartitionReport h2_weight_partition_check();

} // namespace potts
