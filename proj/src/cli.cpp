#include "nsac/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "nsac/csv.hpp"
#include "nsac/error.hpp"
#include "nsac/mms.hpp"

namespace nsac {

namespace fs = std::filesystem;

namespace {

struct Observed {
  FlowState state;
  StepControl control;
};

class Cadence {
 public:
  Cadence(std::size_t every_steps, double every_time) : steps_(every_steps), time_(every_time) {}

  bool due(const FlowState& s, std::size_t step) {
    bool hit = step == 0;
    if (steps_ > 0 && step % steps_ == 0) hit = true;
    if (time_ > 0.0) {
      if (!next_) next_ = s.t + time_;
      if (s.t >= *next_) {
        hit = true;
        while (*next_ <= s.t) *next_ += time_;
      }
    }
    return hit;
  }

 private:
  std::size_t steps_;
  double time_;
  std::optional<double> next_;
};

std::string snapshot_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%06zu.csv", k);
  return buf;
}

RunResult simulate_impl(const RunConfig& config, const fs::path* dir) {
  const FlowState initial = initial_state(config);
  RunResult result;
  TrajectoryMonitor monitor(initial, config.params, config.weighted);
  Cadence diag(config.diagnostics_every_steps, config.diagnostics_every_time);
  Cadence snap(config.snapshot_every_steps, config.snapshot_every_time);
  const bool snapshots_on = dir && (config.snapshot_every_steps > 0 || config.snapshot_every_time > 0.0);
  std::ostringstream index;
  index << "index,step,t,file\n";
  if (snapshots_on) fs::create_directory(*dir / "snapshots");

  AsyncSink<Observed> sink(
      [&](Observed&& o) {
        const std::size_t step = o.control.step_count;
        monitor.observe(o.state, step, o.control.dt_last);
        if (diag.due(o.state, step)) result.records.push_back(monitor.current_record());
        if (snapshots_on && snap.due(o.state, step)) {
          const std::string name = snapshot_name(result.snapshots_written);
          write_snapshot(o.state, config.params, *dir / "snapshots" / name);
          index << result.snapshots_written << ',' << step << ',' << format_double(o.state.t) << ",snapshots/"
                << name << '\n';
          ++result.snapshots_written;
        }
      },
      64);

  RunOptions opt;
  opt.t_final = config.params.t_final;
  opt.observe_every_steps = 1;
  try {
    result.final_state = run(initial, config.params, config.bc, opt,
                             [&](const FlowState& s, const StepControl& c) { sink.push({s, c}); }, nullptr,
                             &result.control);
  } catch (const RunAborted& e) {
    result.final_state = e.last_good();
    result.control = e.control();
    result.abort_message = e.what();
    result.abort_cell = e.cell();
    result.abort_field = e.field();
  }
  sink.close();

  // The last observed state always closes the series.
  const DiagnosticsRecord last = monitor.current_record();
  if (result.records.empty() || result.records.back().step != last.step || result.records.back().t != last.t)
    result.records.push_back(last);
  if (snapshots_on) write_text_file(*dir / "snapshots" / "index.csv", index.str());
  result.audit = audit_records(result.records);
  return result;
}

void prepare_directory(const fs::path& dir, bool force) {
  if (dir.has_parent_path()) fs::create_directories(dir.parent_path());
  std::error_code ec;
  const bool created = fs::create_directory(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  if (!created) {
    if (!fs::is_directory(dir)) throw Error("output path '" + dir.string() + "' exists and is not a directory");
    if (!force) throw ConfigError("output directory '" + dir.string() + "' already exists (use --force)", 0, "output_dir");
    for (const char* name : {"config.used", "diagnostics.csv", "final_state.csv", "plot_diagnostics.py", "abort.txt"})
      fs::remove(dir / name);
    fs::remove_all(dir / "snapshots");
  }
}

RunConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text);
}

int cmd_run(const std::string& path, bool force, std::ostream& out, std::ostream& err) {
  const RunConfig config = load_config(path);
  const RunResult r = run_to_directory(config, force);
  const fs::path dir = config.output_dir;
  out << "steps: " << r.control.step_count << "\n"
      << "t: " << format_double(r.final_state.t) << "\n"
      << "records: " << r.records.size() << ", snapshots: " << r.snapshots_written << "\n"
      << "output: " << dir.string() << "\n"
      << r.audit.table();
  if (r.abort_message) {
    err << "run aborted: " << *r.abort_message << "\n";
    return 1;
  }
  if (!r.audit.passed()) {
    for (const auto& name : r.audit.failures()) err << "invariant violated: " << name << "\n";
    return 1;
  }
  return 0;
}

int cmd_audit(const std::string& path, std::ostream& out, std::ostream& err) {
  std::vector<DiagnosticsRecord> records;
  try {
    records = read_diagnostics(path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (records.empty()) {
    err << "error: '" << path << "' has no diagnostics rows\n";
    return 2;
  }
  const AuditReport report = audit_records(records);
  out << report.table();
  if (!report.passed()) {
    for (const auto& name : report.failures()) err << "invariant violated: " << name << "\n";
    return 1;
  }
  return 0;
}

int cmd_mms(const std::string& path, std::ostream& out, std::ostream& err) {
  const RunConfig config = load_config(path);
  if (!config.bc.is_uniform()) throw ConfigError("mms needs phi_left = phi_right", 0, "phi_right");
  const ManufacturedCase mcase(config.params, config.half_width, config.bc.phi_left, config.mms_amplitude,
                               config.mms_t_final);
  const auto rows = convergence_study(mcase, config.mms_resolutions);
  const std::string csv = convergence_csv(rows);
  fs::create_directories(config.output_dir);
  write_text_file(fs::path(config.output_dir) / "mms_convergence.csv", csv);
  out << csv;

  const ConvergenceRow& last = rows.back();
  const char* names[4] = {"v", "u", "theta", "phi"};
  const double required[4] = {1.9, 1.9, 1.9, 1.5};
  int status = 0;
  for (int f = 0; f < 4; ++f) {
    const double order = last.order[static_cast<std::size_t>(f)];
    if (!(order >= required[f])) {
      err << "order for " << names[f] << " = " << format_double(order) << " below " << required[f] << "\n";
      status = 1;
    }
  }
  return status;
}

int cmd_brackets(const std::string& text, std::ostream& out, std::ostream& err) {
  double e0 = 0.0;
  try {
    e0 = parse_double(text);
  } catch (const Error&) {
    err << "error: '" << text << "' is not a number\n";
    return 2;
  }
  if (!(e0 >= 0.0) || !std::isfinite(e0)) {
    err << "error: e0 must be finite and >= 0\n";
    return 2;
  }
  const Brackets b = bracket_roots(e0);
  out << format_double(b.alpha1) << ' ' << format_double(b.alpha2) << "\n";
  return 0;
}

int cmd_defaults(std::ostream& out) {
  for (const auto& k : config_keys()) out << "# " << k.description << "\n" << k.name << " = " << k.default_value << "\n";
  return 0;
}

}  // namespace

RunResult simulate(const RunConfig& config) { return simulate_impl(config, nullptr); }

RunResult run_to_directory(const RunConfig& config, bool force) {
  const fs::path dir = config.output_dir;
  prepare_directory(dir, force);
  write_text_file(dir / "config.used", format_config(config));
  RunResult r = simulate_impl(config, &dir);
  write_diagnostics(r.records, dir / "diagnostics.csv");
  write_snapshot(r.final_state, config.params, dir / "final_state.csv");
  write_text_file(dir / "plot_diagnostics.py", plot_script());
  if (r.abort_message) {
    std::ostringstream os;
    os << "cause: " << *r.abort_message << "\n"
       << "last_good_t: " << format_double(r.final_state.t) << "\n"
       << "steps: " << r.control.step_count << "\n";
    if (r.abort_cell) os << "cell: " << *r.abort_cell << "\nfield: " << r.abort_field << "\n";
    write_text_file(dir / "abort.txt", os.str());
  }
  return r;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator and invariant auditor for the 1D Navier-Stokes/Allen-Cahn system"};
  app.require_subcommand(1);

  std::string run_config;
  bool force = false;
  auto* run_cmd = app.add_subcommand("run", "simulate a configuration and write CSV output");
  run_cmd->add_option("config", run_config, "config file")->required();
  run_cmd->add_flag("--force", force, "reuse an existing output directory");

  std::string audit_csv;
  auto* audit_cmd = app.add_subcommand("audit", "re-check the invariants of a diagnostics.csv");
  audit_cmd->add_option("diagnostics", audit_csv, "diagnostics CSV")->required();

  std::string mms_config;
  auto* mms_cmd = app.add_subcommand("mms", "manufactured-solution convergence study");
  mms_cmd->add_option("config", mms_config, "config file")->required();

  std::string e0_text;
  auto* brackets_cmd = app.add_subcommand("brackets", "print the roots alpha1 alpha2 of y - ln y - 1 = e0");
  brackets_cmd->add_option("e0", e0_text, "initial Lyapunov energy")->required();

  auto* defaults_cmd = app.add_subcommand("defaults", "print every config key with its default");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return cmd_run(run_config, force, out, err);
    if (*audit_cmd) return cmd_audit(audit_csv, out, err);
    if (*mms_cmd) return cmd_mms(mms_config, out, err);
    if (*brackets_cmd) return cmd_brackets(e0_text, out, err);
    if (*defaults_cmd) return cmd_defaults(out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace nsac
