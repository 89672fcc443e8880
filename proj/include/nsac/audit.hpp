#pragma once

// Offline re-checking of a diagnostics time series.

#include <span>
#include <string>
#include <vector>

#include "nsac/diagnostics.hpp"

namespace nsac {

struct AuditTolerances {
  double mass_relative = 1e-12;
  double lyapunov_relative = 1e-3;
  double phi_excess = 1e-8;
  double residual_at_start = 1e-14;
  double energy_drift_relative = 1e-3;
  double absolute_slack = 1e-14;
};

struct AuditCheck {
  std::string name;
  bool passed = true;
  /// Monitored checks are reported but never fail the audit.
  bool monitored = false;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditCheck> checks;

  bool passed() const;
  /// Names of the failing asserted checks.
  std::vector<std::string> failures() const;
  /// One line per check: PASS/FAIL/INFO, name, detail.
  std::string table() const;
};

/// Re-asserts the invariants of a trajectory from its records alone. The first
/// record is taken as the initial state.
AuditReport audit_records(std::span<const DiagnosticsRecord> records, const AuditTolerances& tol = {});

}  // namespace nsac
