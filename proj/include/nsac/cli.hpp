#pragma once

// Run orchestration and the command-line front end.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nsac/audit.hpp"
#include "nsac/config.hpp"
#include "nsac/diagnostics.hpp"
#include "nsac/integrator.hpp"

namespace nsac {

struct RunResult {
  FlowState final_state;  // last good state when the run aborted
  std::vector<DiagnosticsRecord> records;
  StepControl control;
  std::size_t snapshots_written = 0;
  std::optional<std::string> abort_message;
  std::optional<int> abort_cell;
  std::string abort_field;
  AuditReport audit;
};

/// Simulates `config` and writes into config.output_dir:
///   config.used, diagnostics.csv, final_state.csv, plot_diagnostics.py,
///   snapshots/snapshot_<k>.csv with snapshots/index.csv,
///   and abort.txt when the run stops early.
/// The directory must not exist yet unless `force` is set. Diagnostics and
/// snapshots are produced on a worker thread behind a bounded queue.
RunResult run_to_directory(const RunConfig& config, bool force = false);

/// Same trajectory and records without touching the file system.
RunResult simulate(const RunConfig& config);

/// Exit codes: 0 success, 1 assertion failure or aborted run, 2 usage or
/// configuration error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nsac
