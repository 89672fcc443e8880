#pragma once

// Plain-text output: snapshot and diagnostics CSV files, the plotting script,
// and the number formatting they share.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nsac/core.hpp"
#include "nsac/diagnostics.hpp"

namespace nsac {

/// Shortest decimal that parses back to the same double; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_double(double value);

/// Parses the whole of `text` as a double (accepting the spellings above).
/// Throws Error on trailing characters or an empty field.
double parse_double(std::string_view text);

struct SnapshotColumns {
  std::vector<double> x;
  std::vector<double> v;
  std::vector<double> u;
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<double> mu;
  std::vector<double> G;
};

/// CSV with header `x,v,u,theta,phi,mu,G`, one interior cell per row in
/// ascending x. Ghosts of `state` must be populated (mu is recomputed).
void write_snapshot(const FlowState& state, const SimParams& params, const std::filesystem::path& path);

SnapshotColumns read_snapshot_columns(const std::filesystem::path& path);

/// Rebuilds a state on `grid` from a snapshot file, ghosts from `bc`.
/// Throws if the row count or x column does not match the grid.
FlowState read_snapshot(const std::filesystem::path& path, const MassGrid& grid, const BoundaryConfig& bc, double t);

/// Column names in file order for records carrying `weighted` pairs.
std::vector<std::string> diagnostics_columns(std::span<const WeightedPair> weighted);

/// Schema comment line, header, then one row per record.
void write_diagnostics(std::span<const DiagnosticsRecord> records, const std::filesystem::path& path);
std::string diagnostics_csv(std::span<const DiagnosticsRecord> records);

std::vector<DiagnosticsRecord> read_diagnostics(const std::filesystem::path& path);
std::vector<DiagnosticsRecord> parse_diagnostics(std::string_view text);

/// A matplotlib script that plots the diagnostics time series and the final
/// snapshot found next to it.
std::string plot_script();

void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace nsac
