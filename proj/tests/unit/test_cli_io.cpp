#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <sstream>
#include <algorithm>
#include <unistd.h>
#include <vector>

#include "helpers.hpp"
#include "nsac/audit.hpp"
#include "nsac/cli.hpp"
#include "nsac/config.hpp"
#include "nsac/csv.hpp"
#include "nsac/error.hpp"
#include "nsac/operators.hpp"

using namespace nsac;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  static std::atomic<int> counter{0};
  const fs::path p = fs::temp_directory_path() /
                     ("nsac_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" + name);
  fs::remove_all(p);
  return p;
}

struct Cli {
  int code;
  std::string out;
  std::string err;
};

Cli cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nsac");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("empty config gives the defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.half_width == 16.0);
  CHECK(c.n_cells == 512);
  CHECK(c.params.epsilon == 1.0);
  CHECK(c.params.beta == 1.0);
  CHECK(c.params.cfl == 0.4);
  CHECK(c.params.t_final == 1.0);
  CHECK(c.params.positivity_floor == 1e-10);
  CHECK(c.initial == InitialKind::equilibrium);
}

TEST_CASE("config values, comments and blank lines") {
  const RunConfig c = parse_config("# comment\n\nbeta = 2.5   # trailing\n  n_cells=64\nweighted = 0.5:0, 0.25:-3\n");
  CHECK(c.params.beta == 2.5);
  CHECK(c.n_cells == 64);
  REQUIRE(c.weighted.size() == 2u);
  CHECK(c.weighted[1] == WeightedPair{0.25, -3});
}

TEST_CASE("unknown keys are rejected with line and key") {
  try {
    parse_config("betta = 2.5");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()) == "unknown key 'betta' (line 1)");
    CHECK(e.line() == 1);
    CHECK(e.key() == "betta");
  }
}

TEST_CASE("bad values name line and key") {
  auto fails = [](const std::string& text, int line, const std::string& key) {
    try {
      parse_config(text);
      FAIL("expected a config error for: " << text);
    } catch (const ConfigError& e) {
      CHECK(e.line() == line);
      CHECK(e.key() == key);
      const std::string msg = e.what();
      CHECK(msg.find("'" + key + "'") != std::string::npos);
      CHECK(msg.find("line " + std::to_string(line)) != std::string::npos);
    }
  };
  fails("\n\nbeta = abc\n", 3, "beta");
  fails("beta = -1", 1, "beta");
  fails("cfl = 1.5", 1, "cfl");
  fails("n_cells = 7", 1, "n_cells");
  fails("phi_left = 0.5", 1, "phi_left");
  fails("weighted = 1.5:0", 1, "weighted");
  fails("mms_resolutions = 16,32,48", 1, "mms_resolutions");
  fails("beta = 1\nbeta = 2", 2, "beta");
  fails("initial = equilibrium\nphi_left = -1\nphi_right = 1", 3, "phi_right");
  CHECK_THROWS_AS(parse_config("just words"), ConfigError);
}

TEST_CASE("config round-trips losslessly") {
  RunConfig c;
  c.params.epsilon = 0.1 + 0.2;
  c.params.beta = 1.0 / 3.0;
  c.params.face_average = FaceAverage::harmonic;
  c.half_width = 12.0;
  c.n_cells = 96;
  c.bc = {-1.0, 1.0};
  c.initial = InitialKind::random;
  c.profile.theta = {-0.25, 1.5, 0.75};
  c.output_dir = "out dir/run 1";
  c.snapshot_every_time = 0.125;
  c.weighted = {{0.5, 0}, {0.3, 2}};
  c.seed = 18446744073709551615ull;
  c.mms_resolutions = {64, 128, 256, 512};
  const std::string text = format_config(c);
  const RunConfig back = parse_config(text);
  CHECK(format_config(back) == text);
  CHECK(back.params.epsilon == c.params.epsilon);
  CHECK(back.params.beta == c.params.beta);
  CHECK(back.seed == c.seed);
  CHECK(back.output_dir == c.output_dir);
  CHECK(back.weighted == c.weighted);
  CHECK(back.mms_resolutions == c.mms_resolutions);
  CHECK(back.profile.theta.center == 1.5);
  CHECK(config_keys().size() >= 30u);
  for (const auto& k : config_keys()) CHECK(!k.description.empty());
}

TEST_CASE("random initial data is reproducible from the seed") {
  RunConfig c = parse_config("initial = random\nseed = 42\nn_cells = 128\nphi_left = -1\n");
  const FlowState a = initial_state(c);
  const FlowState b = initial_state(c);
  CHECK(a.v == b.v);
  CHECK(a.theta == b.theta);
  c.seed = 43;
  CHECK(!(initial_state(c).v == a.v));
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.0, 1.0, -0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, 0.1 + 0.2}) CHECK(parse_double(format_double(x)) == x);
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(std::isnan(parse_double("nan")));
  CHECK_THROWS_AS(parse_double("1.0x"), Error);
  CHECK_THROWS_AS(parse_double(""), Error);
}

TEST_CASE("snapshot of an equilibrium state") {
  const fs::path dir = scratch("snap_eq");
  fs::create_directories(dir);
  const FlowState e = equilibrium_state(make_grid(1.0, 8), {1.0, 1.0});
  write_snapshot(e, SimParams{}, dir / "s.csv");
  const std::string text = read_text_file(dir / "s.csv");
  CHECK(text.rfind("x,v,u,theta,phi,mu,G\n", 0) == 0);
  const SnapshotColumns c = read_snapshot_columns(dir / "s.csv");
  REQUIRE(c.x.size() == 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(c.v[i] == 1.0);
    CHECK(c.u[i] == 0.0);
  }
  CHECK(text.find("\n-0.875,1,0,1,1,0,0\n") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("snapshot round trip is bit-identical") {
  const fs::path dir = scratch("snap_rt");
  fs::create_directories(dir);
  const MassGrid g = make_grid(8.0, 64);
  const SimParams p;
  FlowState s = testing::smooth_state(g);
  s.t = 0.25;
  for (int i = 0; i < g.n_cells; ++i) s.G[i] = 0.25 + 1e-3 * std::sin(i);
  apply_far_field(s, {-1.0, 1.0});
  write_snapshot(s, p, dir / "s.csv");
  const FlowState r = read_snapshot(dir / "s.csv", g, {-1.0, 1.0}, 0.25);
  CHECK(r.v == s.v);
  CHECK(r.u == s.u);
  CHECK(r.theta == s.theta);
  CHECK(r.phi == s.phi);
  CHECK(r.G == s.G);
  const SnapshotColumns c = read_snapshot_columns(dir / "s.csv");
  const Field mu = chemical_potential(r, p);
  for (int i = 0; i < g.n_cells; ++i) CHECK(std::abs(c.mu[static_cast<std::size_t>(i)] - mu[i]) <= 1e-15);
  CHECK_THROWS_AS(read_snapshot(dir / "s.csv", make_grid(8.0, 32), {-1.0, 1.0}, 0.0), Error);
  fs::remove_all(dir);
}

TEST_CASE("I/O failures name the path") {
  const FlowState e = equilibrium_state(make_grid(1.0, 8), {1.0, 1.0});
  try {
    write_snapshot(e, SimParams{}, "/nonexistent_dir_nsac/s.csv");
    FAIL("expected an I/O error");
  } catch (const Error& ex) {
    CHECK(std::string(ex.what()).find("/nonexistent_dir_nsac/s.csv") != std::string::npos);
  }
  CHECK_THROWS_AS(read_diagnostics("/nonexistent_dir_nsac/d.csv"), Error);
}

TEST_CASE("diagnostics CSV") {
  const FlowState e = equilibrium_state(make_grid(4.0, 32), {1.0, 1.0});
  RecordContext ctx;
  ctx.initial = &e;
  ctx.weighted = {{0.5, 0}};
  const DiagnosticsRecord r = record(e, SimParams{}, ctx);
  const std::vector<DiagnosticsRecord> one{r};
  const std::string text = diagnostics_csv(one);
  CHECK(text.rfind("# ", 0) == 0);
  const auto nl = text.find('\n');
  const std::string header = text.substr(nl + 1, text.find('\n', nl + 1) - nl - 1);
  CHECK(header ==
        "t,step,dt,mass_excess,energy_total,e_lyap,v_diss,cumulative_diss,phi_min,phi_max,v_min,v_max,theta_min,"
        "theta_max,bracket_violations,momentum_residual,weighted_diss_a0.5_n0");
  CHECK(text.find("\n0,0,0,0,0,0,0,0,1,1,1,1,1,1,0,0,0\n") != std::string::npos);
  const auto back = parse_diagnostics(text);
  REQUIRE(back.size() == 1u);
  CHECK(back[0] == r);
}

TEST_CASE("diagnostics round trip on a trajectory") {
  RunConfig c = parse_config("initial = interface\nphi_left = -1\nn_cells = 64\nt_final = 0.2\n"
                             "v_amplitude = 0.2\ntheta_amplitude = -0.3\nweighted = 0.5:0,0.75:-2\n");
  const RunResult r = simulate(c);
  CHECK(!r.abort_message);
  CHECK(r.records.size() == r.control.step_count + 1);
  CHECK(parse_diagnostics(diagnostics_csv(r.records)) == r.records);
  for (std::size_t k = 1; k < r.records.size(); ++k)
    CHECK(r.records[k].e_lyap <= r.records[k - 1].e_lyap + 1e-3 * r.records[0].e_lyap);
  CHECK(r.audit.passed());
}

TEST_CASE("audit flags a doctored Lyapunov column") {
  RunConfig c = parse_config("initial = interface\nphi_left = -1\nn_cells = 256\nt_final = 0.05\n");
  auto recs = simulate(c).records;
  CHECK(audit_records(recs).passed());
  for (std::size_t k = 0; k < recs.size(); ++k) recs[k].e_lyap += 0.01 * static_cast<double>(k);
  const AuditReport rep = audit_records(recs);
  CHECK(!rep.passed());
  const auto f = rep.failures();
  CHECK(std::find(f.begin(), f.end(), "lyapunov_inequality") != f.end());
  CHECK(rep.table().find("FAIL  lyapunov_inequality") != std::string::npos);
}

TEST_CASE("cli: brackets") {
  Cli r = cli({"brackets", "0"});
  CHECK(r.code == 0);
  CHECK(r.out == "1 1\n");
  r = cli({"brackets", "0.718281828459045"});
  CHECK(r.code == 0);
  CHECK(r.out.find("2.71828182845") != std::string::npos);
  CHECK(cli({"brackets", "-1"}).code == 2);
  CHECK(cli({"brackets", "x"}).code == 2);
}

TEST_CASE("cli: usage errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"run"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  const fs::path dir = scratch("cfg_err");
  fs::create_directories(dir);
  write_text_file(dir / "bad.cfg", "betta = 2.5\n");
  const Cli r = cli({"run", (dir / "bad.cfg").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown key 'betta' (line 1)") != std::string::npos);
  CHECK(cli({"run", (dir / "missing.cfg").string()}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("cli: run, audit and determinism") {
  const fs::path dir = scratch("run");
  fs::create_directories(dir);

  write_text_file(dir / "eq.cfg", "n_cells = 32\nhalf_width = 4\nt_final = 0.1\noutput_dir = " +
                                       (dir / "eq").string() + "\n");
  Cli r = cli({"run", (dir / "eq.cfg").string()});
  CHECK(r.code == 0);
  const auto recs = read_diagnostics(dir / "eq" / "diagnostics.csv");
  REQUIRE(!recs.empty());
  for (const auto& rec : recs) {
    CHECK(rec.mass_excess == 0.0);
    CHECK(rec.e_lyap == 0.0);
    CHECK(rec.energy_total == 0.0);
    CHECK(rec.v_diss == 0.0);
  }
  CHECK(cli({"run", (dir / "eq.cfg").string()}).code == 2);
  CHECK(cli({"run", (dir / "eq.cfg").string(), "--force"}).code == 0);

  const std::string iface = "initial = interface\nphi_left = -1\nn_cells = 256\nt_final = 0.1\nu_amplitude = 0.2\n"
                            "snapshot_every_steps = 40\n";
  write_text_file(dir / "a.cfg", iface + "output_dir = " + (dir / "a").string() + "\n");
  write_text_file(dir / "b.cfg", iface + "output_dir = " + (dir / "b").string() + "\n");
  CHECK(cli({"run", (dir / "a.cfg").string()}).code == 0);
  CHECK(cli({"run", (dir / "b.cfg").string()}).code == 0);
  for (const char* f : {"diagnostics.csv", "final_state.csv", "snapshots/index.csv", "snapshots/snapshot_000001.csv"})
    CHECK(read_text_file(dir / "a" / f) == read_text_file(dir / "b" / f));
  CHECK(fs::exists(dir / "a" / "plot_diagnostics.py"));
  CHECK(parse_config(read_text_file(dir / "a" / "config.used")).output_dir == (dir / "a").string());

  r = cli({"audit", (dir / "a" / "diagnostics.csv").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS  mass_conservation") != std::string::npos);

  auto doctored = read_diagnostics(dir / "a" / "diagnostics.csv");
  for (std::size_t k = 0; k < doctored.size(); ++k) doctored[k].e_lyap *= 1.0 + 0.01 * static_cast<double>(k);
  write_diagnostics(doctored, dir / "doctored.csv");
  r = cli({"audit", (dir / "doctored.csv").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("lyapunov") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli: aborted run dumps its state") {
  const fs::path dir = scratch("abort");
  fs::create_directories(dir);
  write_text_file(dir / "c.cfg", "initial = interface\nn_cells = 64\nu_amplitude = 0.5\npositivity_floor = 0.99\n"
                                 "output_dir = " + (dir / "out").string() + "\n");
  const Cli r = cli({"run", (dir / "c.cfg").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("run aborted") != std::string::npos);
  const std::string abort = read_text_file(dir / "out" / "abort.txt");
  CHECK(abort.find("field: v") != std::string::npos);
  CHECK(abort.find("cell: ") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "final_state.csv"));
  CHECK(fs::exists(dir / "out" / "diagnostics.csv"));
  fs::remove_all(dir);
}

TEST_CASE("cli: mms") {
  const fs::path dir = scratch("mms");
  fs::create_directories(dir);
  write_text_file(dir / "m.cfg", "half_width = 4\nmms_resolutions = 32,64,128\nmms_t_final = 0.2\noutput_dir = " +
                                     (dir / "out").string() + "\n");
  const Cli r = cli({"mms", (dir / "m.cfg").string()});
  CHECK(r.code == 0);
  CHECK(read_text_file(dir / "out" / "mms_convergence.csv").rfind("N,err_v", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("plot script reads the CSV outputs") {
  const std::string s = plot_script();
  CHECK(s.find("diagnostics.csv") != std::string::npos);
  CHECK(s.find("final_state.csv") != std::string::npos);
}
