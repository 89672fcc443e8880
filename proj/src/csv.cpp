#include "nsac/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "nsac/operators.hpp"

namespace nsac {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error("cannot parse '" + std::string(text) + "' as a number");
  return value;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

constexpr std::string_view kSnapshotHeader = "x,v,u,theta,phi,mu,G";

}  // namespace

void write_snapshot(const FlowState& s, const SimParams& params, const std::filesystem::path& path) {
  const Field mu = chemical_potential(s, params);
  std::string text;
  text.reserve(static_cast<std::size_t>(s.grid.n_cells) * 160);
  text += kSnapshotHeader;
  text += '\n';
  for (int i = 0; i < s.grid.n_cells; ++i) {
    for (double value : {s.grid.x(i), s.v[i], s.u[i], s.theta[i], s.phi[i], mu[i]}) {
      text += format_double(value);
      text += ',';
    }
    text += format_double(s.G[i]);
    text += '\n';
  }
  write_text_file(path, text);
}

SnapshotColumns read_snapshot_columns(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != kSnapshotHeader)
    throw Error("'" + path.string() + "' is not a snapshot file (expected header " + std::string(kSnapshotHeader) +
                ")");
  SnapshotColumns c;
  std::vector<double>* cols[7] = {&c.x, &c.v, &c.u, &c.theta, &c.phi, &c.mu, &c.G};
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto fields = split(lines[k], ',');
    if (fields.size() != 7)
      throw Error("'" + path.string() + "' line " + std::to_string(k + 1) + ": expected 7 columns");
    for (std::size_t f = 0; f < 7; ++f) cols[f]->push_back(parse_double(fields[f]));
  }
  return c;
}

FlowState read_snapshot(const std::filesystem::path& path, const MassGrid& grid, const BoundaryConfig& bc, double t) {
  const SnapshotColumns c = read_snapshot_columns(path);
  if (c.x.size() != static_cast<std::size_t>(grid.n_cells))
    throw Error("'" + path.string() + "' has " + std::to_string(c.x.size()) + " rows, grid has " +
                std::to_string(grid.n_cells) + " cells");
  FlowState s(grid);
  s.t = t;
  for (int i = 0; i < grid.n_cells; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (std::abs(c.x[k] - grid.x(i)) > 1e-12 * std::max(1.0, grid.half_width))
      throw Error("'" + path.string() + "': x column does not match the grid at row " + std::to_string(i + 1));
    s.v[i] = c.v[k];
    s.u[i] = c.u[k];
    s.theta[i] = c.theta[k];
    s.phi[i] = c.phi[k];
    s.G[i] = c.G[k];
  }
  apply_far_field(s, bc);
  return s;
}

namespace {

constexpr const char* kFixedColumns[] = {"t",          "step",      "dt",        "mass_excess",     "energy_total",
                                         "e_lyap",     "v_diss",    "cumulative_diss", "phi_min", "phi_max",
                                         "v_min",      "v_max",     "theta_min", "theta_max",       "bracket_violations",
                                         "momentum_residual"};
constexpr std::size_t kFixedCount = sizeof kFixedColumns / sizeof kFixedColumns[0];

std::string weighted_column(const WeightedPair& w) {
  return "weighted_diss_a" + format_double(w.alpha) + "_n" + std::to_string(w.n);
}

WeightedPair parse_weighted_column(std::string_view name) {
  constexpr std::string_view prefix = "weighted_diss_a";
  const auto sep = name.rfind("_n");
  if (name.substr(0, prefix.size()) != prefix || sep == std::string_view::npos || sep < prefix.size())
    throw Error("unknown diagnostics column '" + std::string(name) + "'");
  WeightedPair w{};
  w.alpha = parse_double(name.substr(prefix.size(), sep - prefix.size()));
  const auto digits = name.substr(sep + 2);
  const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), w.n);
  if (res.ec != std::errc() || res.ptr != digits.data() + digits.size())
    throw Error("unknown diagnostics column '" + std::string(name) + "'");
  return w;
}

}  // namespace

std::vector<std::string> diagnostics_columns(std::span<const WeightedPair> weighted) {
  std::vector<std::string> cols(std::begin(kFixedColumns), std::end(kFixedColumns));
  for (const auto& w : weighted) cols.push_back(weighted_column(w));
  return cols;
}

std::string diagnostics_csv(std::span<const DiagnosticsRecord> records) {
  const std::vector<WeightedPair> weighted = records.empty() ? std::vector<WeightedPair>{} : records.front().weighted_pairs;
  const auto cols = diagnostics_columns(weighted);
  std::string header;
  for (std::size_t k = 0; k < cols.size(); ++k) header += (k ? "," : "") + cols[k];

  std::string text = "# nsac diagnostics v1: one row per recorded state; columns: " + header + "\n";
  text += header + "\n";
  for (const auto& r : records) {
    if (r.weighted_pairs != weighted) throw Error("write_diagnostics: records disagree on weighted-dissipation pairs");
    text += format_double(r.t) + ',' + std::to_string(r.step);
    for (double value : {r.dt, r.mass_excess, r.energy_total, r.e_lyap, r.v_diss, r.cumulative_diss, r.phi_min,
                         r.phi_max, r.v_min, r.v_max, r.theta_min, r.theta_max}) {
      text += ',' + format_double(value);
    }
    text += ',' + std::to_string(r.bracket_violations);
    text += ',' + format_double(r.momentum_residual);
    for (double value : r.weighted_diss) text += ',' + format_double(value);
    text += '\n';
  }
  return text;
}

void write_diagnostics(std::span<const DiagnosticsRecord> records, const std::filesystem::path& path) {
  write_text_file(path, diagnostics_csv(records));
}

std::vector<DiagnosticsRecord> parse_diagnostics(std::string_view text) {
  std::vector<std::string_view> lines;
  for (auto line : lines_of(text)) {
    if (line.front() != '#') lines.push_back(line);
  }
  if (lines.empty()) throw Error("diagnostics file has no header row");

  const auto header = split(lines.front(), ',');
  if (header.size() < kFixedCount) throw Error("diagnostics header has too few columns");
  for (std::size_t k = 0; k < kFixedCount; ++k) {
    if (header[k] != kFixedColumns[k])
      throw Error("diagnostics column " + std::to_string(k + 1) + " is '" + std::string(header[k]) + "', expected '" +
                  kFixedColumns[k] + "'");
  }
  std::vector<WeightedPair> weighted;
  for (std::size_t k = kFixedCount; k < header.size(); ++k) weighted.push_back(parse_weighted_column(header[k]));

  std::vector<DiagnosticsRecord> records;
  for (std::size_t row = 1; row < lines.size(); ++row) {
    const auto f = split(lines[row], ',');
    if (f.size() != header.size())
      throw Error("diagnostics row " + std::to_string(row) + " has " + std::to_string(f.size()) + " fields, expected " +
                  std::to_string(header.size()));
    DiagnosticsRecord r;
    std::size_t k = 0;
    r.t = parse_double(f[k++]);
    r.step = static_cast<std::size_t>(parse_double(f[k++]));
    for (double* dst : {&r.dt, &r.mass_excess, &r.energy_total, &r.e_lyap, &r.v_diss, &r.cumulative_diss, &r.phi_min,
                        &r.phi_max, &r.v_min, &r.v_max, &r.theta_min, &r.theta_max}) {
      *dst = parse_double(f[k++]);
    }
    r.bracket_violations = static_cast<int>(parse_double(f[k++]));
    r.momentum_residual = parse_double(f[k++]);
    r.weighted_pairs = weighted;
    for (; k < f.size(); ++k) r.weighted_diss.push_back(parse_double(f[k]));
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<DiagnosticsRecord> read_diagnostics(const std::filesystem::path& path) {
  try {
    return parse_diagnostics(read_text_file(path));
  } catch (const Error& e) {
    throw Error("'" + path.string() + "': " + e.what());
  }
}

std::string plot_script() {
  return R"PY(#!/usr/bin/env python3
"""Plot the diagnostics time series and the final snapshot of a run.

Usage: python3 plot_run.py [run_directory]
"""
import pathlib
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

run = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).parent)
diag = np.genfromtxt(run / "diagnostics.csv", delimiter=",", names=True, comments="#")

fig, ax = plt.subplots(2, 2, figsize=(11, 7), constrained_layout=True)
ax[0, 0].plot(diag["t"], diag["e_lyap"], label="e_lyap")
ax[0, 0].plot(diag["t"], diag["e_lyap"] + diag["cumulative_diss"], "--", label="e_lyap + int V dt")
ax[0, 0].set_xlabel("t")
ax[0, 0].legend()
ax[0, 1].plot(diag["t"], diag["mass_excess"] - diag["mass_excess"][0], label="mass drift")
ax[0, 1].plot(diag["t"], diag["energy_total"] - diag["energy_total"][0], label="energy drift")
ax[0, 1].set_xlabel("t")
ax[0, 1].legend()
ax[1, 0].plot(diag["t"], diag["phi_min"], label="phi min")
ax[1, 0].plot(diag["t"], diag["phi_max"], label="phi max")
ax[1, 0].plot(diag["t"], diag["theta_min"], label="theta min")
ax[1, 0].plot(diag["t"], diag["v_min"], label="v min")
ax[1, 0].set_xlabel("t")
ax[1, 0].legend()

final = run / "final_state.csv"
if final.exists():
    snap = np.genfromtxt(final, delimiter=",", names=True)
    for name in ("v", "u", "theta", "phi"):
        ax[1, 1].plot(snap["x"], snap[name], label=name)
    ax[1, 1].set_xlabel("x (mass coordinate)")
    ax[1, 1].legend()
fig.savefig(run / "diagnostics.png", dpi=120)
print("wrote", run / "diagnostics.png")
)PY";
}

}  // namespace nsac
