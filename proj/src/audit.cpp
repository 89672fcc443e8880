#include "nsac/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsac/csv.hpp"
#include "nsac/error.hpp"

namespace nsac {

bool AuditReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.monitored || c.passed; });
}

std::vector<std::string> AuditReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.monitored && !c.passed) out.push_back(c.name);
  return out;
}

std::string AuditReport::table() const {
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.monitored ? "INFO" : (c.passed ? "PASS" : "FAIL")) << "  " << c.name
       << std::string(width - c.name.size() + 2, ' ') << c.detail << "\n";
  }
  return os.str();
}

namespace {

std::string at_row(std::size_t k, const DiagnosticsRecord& r) {
  return "row " + std::to_string(k + 1) + " (t = " + format_double(r.t) + ")";
}

}  // namespace

AuditReport audit_records(std::span<const DiagnosticsRecord> records, const AuditTolerances& tol) {
  if (records.empty()) throw Error("audit: no diagnostics records");
  const DiagnosticsRecord& first = records.front();
  AuditReport report;

  {
    AuditCheck c{"mass_conservation", true, false, {}};
    const double m0 = first.mass_excess;
    const double bound = tol.mass_relative * std::abs(m0) + tol.absolute_slack;
    double worst = 0.0;
    std::size_t where = 0;
    for (std::size_t k = 0; k < records.size(); ++k) {
      const double d = std::abs(records[k].mass_excess - m0);
      if (!(d <= worst)) {
        worst = d;
        where = k;
      }
    }
    c.passed = worst <= bound;
    c.detail = "max |M - M0| = " + format_double(worst) + " (bound " + format_double(bound) + ")";
    if (!c.passed) c.detail += " at " + at_row(where, records[where]);
    report.checks.push_back(c);
  }

  const double e0 = first.e_lyap;
  {
    AuditCheck c{"lyapunov_inequality", true, false, {}};
    const double bound = e0 * (1.0 + tol.lyapunov_relative) + tol.absolute_slack;
    double worst = -1e300;
    std::size_t where = 0;
    for (std::size_t k = 0; k < records.size(); ++k) {
      const double s = records[k].e_lyap + records[k].cumulative_diss;
      if (!(s <= worst)) {
        worst = s;
        where = k;
      }
    }
    c.passed = worst <= bound;
    c.detail = "max e_lyap + cumulative_diss = " + format_double(worst) + " (bound " + format_double(bound) + ")";
    if (!c.passed) c.detail += " at " + at_row(where, records[where]);
    report.checks.push_back(c);
  }

  {
    AuditCheck c{"lyapunov_step", true, false, {}};
    const double bound = tol.lyapunov_relative * e0 + tol.absolute_slack;
    double worst = 0.0;
    std::size_t where = 0;
    for (std::size_t k = 1; k < records.size(); ++k) {
      const double inc = (records[k].e_lyap + records[k].cumulative_diss) -
                         (records[k - 1].e_lyap + records[k - 1].cumulative_diss);
      if (!(inc <= worst)) {
        worst = inc;
        where = k;
      }
    }
    c.passed = worst <= bound;
    c.detail = "max row-to-row increase = " + format_double(worst) + " (bound " + format_double(bound) + ")";
    if (!c.passed) c.detail += " at " + at_row(where, records[where]);
    report.checks.push_back(c);
  }

  {
    AuditCheck c{"phase_range", true, false, {}};
    double lo = 1e300, hi = -1e300;
    std::size_t where = 0;
    for (std::size_t k = 0; k < records.size(); ++k) {
      const auto& r = records[k];
      if (!(r.phi_min >= -1.0 - tol.phi_excess && r.phi_max <= 1.0 + tol.phi_excess) && c.passed) {
        c.passed = false;
        where = k;
      }
      lo = std::min(lo, r.phi_min);
      hi = std::max(hi, r.phi_max);
    }
    c.detail = "phi in [" + format_double(lo) + ", " + format_double(hi) + "]";
    if (!c.passed) c.detail += ", first breach at " + at_row(where, records[where]);
    report.checks.push_back(c);
  }

  {
    AuditCheck c{"cell_average_brackets", true, false, {}};
    long total = 0;
    std::size_t where = 0;
    for (std::size_t k = 0; k < records.size(); ++k) {
      if (records[k].bracket_violations != 0 && total == 0) where = k;
      total += records[k].bracket_violations;
    }
    c.passed = total == 0;
    c.detail = std::to_string(total) + " violations";
    if (!c.passed) c.detail += ", first at " + at_row(where, records[where]);
    report.checks.push_back(c);
  }

  {
    AuditCheck c{"positivity", true, false, {}};
    double vmin = 1e300, tmin = 1e300;
    std::size_t where = 0;
    for (std::size_t k = 0; k < records.size(); ++k) {
      const auto& r = records[k];
      if (!(r.v_min > 0.0 && r.theta_min > 0.0) && c.passed) {
        c.passed = false;
        where = k;
      }
      vmin = std::min(vmin, r.v_min);
      tmin = std::min(tmin, r.theta_min);
    }
    c.detail = "min v = " + format_double(vmin) + ", min theta = " + format_double(tmin);
    if (!c.passed) c.detail += ", first breach at " + at_row(where, records[where]);
    report.checks.push_back(c);
  }

  {
    AuditCheck c{"dissipation_nonnegative", true, false, {}};
    std::size_t where = 0;
    for (std::size_t k = 0; k < records.size() && c.passed; ++k) {
      const auto& r = records[k];
      bool ok = r.v_diss >= 0.0 && r.cumulative_diss >= 0.0;
      if (k > 0) ok = ok && r.cumulative_diss >= records[k - 1].cumulative_diss;
      for (double w : r.weighted_diss) ok = ok && w >= 0.0;
      if (!ok) {
        c.passed = false;
        where = k;
      }
    }
    c.detail = c.passed ? "V, cumulative and weighted dissipation >= 0, cumulative non-decreasing"
                        : "negative or decreasing dissipation at " + at_row(where, records[where]);
    report.checks.push_back(c);
  }

  {
    AuditCheck c{"momentum_residual_at_start", true, false, {}};
    c.passed = std::abs(first.momentum_residual) <= tol.residual_at_start;
    c.detail = "residual at first row = " + format_double(first.momentum_residual);
    report.checks.push_back(c);
  }

  {
    AuditCheck c{"energy_drift", true, true, {}};
    const double scale = std::max(std::abs(first.energy_total), tol.absolute_slack);
    const double drift = std::abs(records.back().energy_total - first.energy_total);
    c.detail = "final |E - E0| = " + format_double(drift);
    if (std::abs(first.energy_total) > 0.0) c.detail += " (relative " + format_double(drift / scale) + ")";
    report.checks.push_back(c);
  }

  return report;
}

}  // namespace nsac
