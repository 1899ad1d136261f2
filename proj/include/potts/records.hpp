#pragma once

#include <optional>
#include <string>
#include <vector>

#include "potts/bethe.hpp"
#include "potts/spectra.hpp"

namespace potts {

enum class RecordSource { computed, reference };

struct SpectralRecord {
  Variant variant = Variant::z3_plus;
  int L = 2;
  int sector = 0;
  double energy = 0.0;
  double spin = 0.0;
  std::vector<cplx> roots;
  double bethe_residual = 0.0;
  double eig_residual = 0.0;
  int mu = 0;
  RecordSource source = RecordSource::computed;
};

inline constexpr int kRecordSchemaVersion = 1;

/// {schema_version, variant, n, L, records: [...]}, floats as shortest
/// round-trip decimals. All records must share variant and L.
std::string records_to_json(const std::vector<SpectralRecord>& records, Variant variant, int n,
                            int L);
/// Inverse of records_to_json; throws ArgumentError on malformed input.
std::vector<SpectralRecord> records_from_json(const std::string& text);

/// Outcome of the eigenstate -> Lambda form -> Bethe roots chain for one state.
struct PipelineState {
  EigenState state;
  LambdaForm form;
  std::optional<RootSet> roots;
  SpectralRecord record;
  /// Empty when the state was accepted.
  std::string failure;
  int branch_cut_hits = 0;
  /// |(-Lambda'(0)/Lambda(0) + additive constant) - E| from the interpolated form.
  double energy_oracle_deviation = 0.0;
  /// |exp(-2 pi i s_p / L) - Lambda(0)| with Lambda(0) taken from T(0) directly.
  double spin_oracle_deviation = 0.0;
  /// |E(roots) - E|.
  double energy_deviation = 0.0;

  bool accepted() const { return failure.empty(); }
};

struct PipelineResult {
  ChainSpec spec;
  std::vector<PipelineState> states;
};

/// Diagonalizes the named chain, resolves sectors, fits Lambda forms, seeds
/// and refines the Bethe roots for every state (or one sector). States are
/// ordered by sector, then energy, then spin inside degenerate levels.
/// Supports periodic, z3_plus, z3_minus and conj.
PipelineResult run_pipeline(const ChainSpec& spec, std::optional<int> sector = std::nullopt);

} // namespace potts
