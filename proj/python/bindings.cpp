#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "nsac/audit.hpp"
#include "nsac/cli.hpp"
#include "nsac/config.hpp"
#include "nsac/core.hpp"
#include "nsac/csv.hpp"
#include "nsac/diagnostics.hpp"
#include "nsac/error.hpp"
#include "nsac/mms.hpp"
#include "nsac/operators.hpp"

namespace py = pybind11;
using namespace nsac;

namespace {

py::array_t<double> to_array(std::span<const double> values) {
  py::array_t<double> out(static_cast<py::ssize_t>(values.size()));
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

void from_array(Field& f, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1 || a.shape(0) != f.n_cells())
    throw py::value_error("expected a 1-D array of length " + std::to_string(f.n_cells()));
  std::copy(a.data(), a.data() + a.shape(0), f.interior().begin());
}

py::dict record_dict(const DiagnosticsRecord& r) {
  py::dict d;
  d["t"] = r.t;
  d["step"] = r.step;
  d["dt"] = r.dt;
  d["mass_excess"] = r.mass_excess;
  d["energy_total"] = r.energy_total;
  d["e_lyap"] = r.e_lyap;
  d["v_diss"] = r.v_diss;
  d["cumulative_diss"] = r.cumulative_diss;
  d["phi_min"] = r.phi_min;
  d["phi_max"] = r.phi_max;
  d["v_min"] = r.v_min;
  d["v_max"] = r.v_max;
  d["theta_min"] = r.theta_min;
  d["theta_max"] = r.theta_max;
  d["bracket_violations"] = r.bracket_violations;
  d["momentum_residual"] = r.momentum_residual;
  py::list weighted;
  for (std::size_t k = 0; k < r.weighted_pairs.size(); ++k)
    weighted.append(py::make_tuple(r.weighted_pairs[k].alpha, r.weighted_pairs[k].n, r.weighted_diss[k]));
  d["weighted"] = weighted;
  return d;
}

#define FIELD_PROPERTY(name)                                                   \
  def_property(                                                                \
      #name, [](const FlowState& s) { return to_array(s.name.interior()); },   \
      [](FlowState& s, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) { from_array(s.name, a); })

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lagrangian 1-D Navier-Stokes/Allen-Cahn solver and diagnostics";

  static py::exception<Error> error(m, "Error");
  static py::exception<PositivityError> positivity_error(m, "PositivityError", error.ptr());
  static py::exception<ConfigError> config_error(m, "ConfigError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PositivityError& e) {
      py::set_error(positivity_error, e.what());
    } catch (const ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::enum_<FaceAverage>(m, "FaceAverage")
      .value("arithmetic", FaceAverage::arithmetic)
      .value("harmonic", FaceAverage::harmonic);

  py::class_<SimParams>(m, "SimParams")
      .def(py::init<>())
      .def_readwrite("epsilon", &SimParams::epsilon)
      .def_readwrite("beta", &SimParams::beta)
      .def_readwrite("nu", &SimParams::nu)
      .def_readwrite("gas_R", &SimParams::gas_R)
      .def_readwrite("c_v", &SimParams::c_v)
      .def_readwrite("kappa_tilde", &SimParams::kappa_tilde)
      .def_readwrite("cfl", &SimParams::cfl)
      .def_readwrite("t_final", &SimParams::t_final)
      .def_readwrite("positivity_floor", &SimParams::positivity_floor)
      .def_readwrite("face_average", &SimParams::face_average)
      .def("validate", &SimParams::validate);

  py::class_<MassGrid>(m, "MassGrid")
      .def_readonly("half_width", &MassGrid::half_width)
      .def_readonly("n_cells", &MassGrid::n_cells)
      .def_readonly("dx", &MassGrid::dx)
      .def("x", &MassGrid::x)
      .def("centers", [](const MassGrid& g) {
        std::vector<double> xs(static_cast<std::size_t>(g.n_cells));
        for (int i = 0; i < g.n_cells; ++i) xs[static_cast<std::size_t>(i)] = g.x(i);
        return to_array(xs);
      });
  m.def("make_grid", &make_grid, py::arg("half_width"), py::arg("n_cells"));

  py::class_<BoundaryConfig>(m, "BoundaryConfig")
      .def(py::init<double, double>(), py::arg("phi_left") = 1.0, py::arg("phi_right") = 1.0)
      .def_readwrite("phi_left", &BoundaryConfig::phi_left)
      .def_readwrite("phi_right", &BoundaryConfig::phi_right);

  py::class_<Bump>(m, "Bump")
      .def(py::init([](double a, double c, double w) { return Bump{a, c, w}; }), py::arg("amplitude") = 0.0,
           py::arg("center") = 0.0, py::arg("width") = 1.0)
      .def_readwrite("amplitude", &Bump::amplitude)
      .def_readwrite("center", &Bump::center)
      .def_readwrite("width", &Bump::width)
      .def("__call__", &Bump::operator());

  py::class_<InitialProfile>(m, "InitialProfile")
      .def(py::init<>())
      .def_readwrite("interface_center", &InitialProfile::interface_center)
      .def_readwrite("interface_width", &InitialProfile::interface_width)
      .def_readwrite("droplet_radius", &InitialProfile::droplet_radius)
      .def_readwrite("v", &InitialProfile::v)
      .def_readwrite("u", &InitialProfile::u)
      .def_readwrite("theta", &InitialProfile::theta);

  py::class_<FlowState>(m, "FlowState")
      .def(py::init<const MassGrid&>())
      .def_readonly("grid", &FlowState::grid)
      .def_readwrite("t", &FlowState::t)
      .FIELD_PROPERTY(v)
      .FIELD_PROPERTY(u)
      .FIELD_PROPERTY(theta)
      .FIELD_PROPERTY(phi)
      .FIELD_PROPERTY(G)
      .def("apply_far_field", [](FlowState& s, const BoundaryConfig& bc, double p) { apply_far_field(s, bc, p); },
           py::arg("bc"), py::arg("far_pressure") = 1.0);

  m.def("equilibrium_state", &equilibrium_state, py::arg("grid"), py::arg("bc"));
  m.def("interface_initial_state", &interface_initial_state, py::arg("grid"), py::arg("bc"), py::arg("params"),
        py::arg("profile"));

  m.def("chemical_potential", [](const FlowState& s, const SimParams& p) {
    return to_array(chemical_potential(s, p).interior());
  });
  m.def("mass_excess", &mass_excess);
  m.def("total_energy", &total_energy);
  m.def("lyapunov_energy", &lyapunov_energy);
  m.def("dissipation_rate", &dissipation_rate);
  m.def("weighted_dissipation", &weighted_dissipation, py::arg("state"), py::arg("params"), py::arg("alpha"),
        py::arg("n"));
  m.def("momentum_identity_residual", &momentum_identity_residual);
  m.def("cutoff_weight", &cutoff_weight);
  m.def(
      "bracket_roots",
      [](double e0) {
        const Brackets b = bracket_roots(e0);
        return py::make_tuple(b.alpha1, b.alpha2);
      },
      py::arg("e0"));
  m.def("cell_average_violations", [](const FlowState& s, double e0) { return cell_average_brackets(s, e0).violations; });

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("params", &RunConfig::params)
      .def_readwrite("half_width", &RunConfig::half_width)
      .def_readwrite("n_cells", &RunConfig::n_cells)
      .def_readwrite("bc", &RunConfig::bc)
      .def_readwrite("profile", &RunConfig::profile)
      .def_readwrite("output_dir", &RunConfig::output_dir)
      .def_readwrite("seed", &RunConfig::seed)
      .def("format", &format_config)
      .def("initial_state", &initial_state);
  m.def("parse_config", &parse_config, py::arg("text"));

  m.def(
      "simulate",
      [](const RunConfig& c) {
        RunResult r;
        {
          py::gil_scoped_release release;
          r = simulate(c);
        }
        py::dict out;
        py::list recs;
        for (const auto& rec : r.records) recs.append(record_dict(rec));
        out["records"] = recs;
        out["final_state"] = r.final_state;
        out["steps"] = r.control.step_count;
        out["aborted"] = r.abort_message ? py::cast(*r.abort_message) : py::none();
        out["audit_passed"] = r.audit.passed();
        out["audit"] = r.audit.table();
        return out;
      },
      py::arg("config"));

  m.def(
      "run_to_directory",
      [](const RunConfig& c, bool force) {
        py::gil_scoped_release release;
        const RunResult r = run_to_directory(c, force);
        return !r.abort_message && r.audit.passed();
      },
      py::arg("config"), py::arg("force") = false);

  m.def(
      "audit_file",
      [](const std::filesystem::path& path) {
        const AuditReport rep = audit_records(read_diagnostics(path));
        return py::make_tuple(rep.passed(), rep.table());
      },
      py::arg("path"));

  m.def(
      "convergence_study",
      [](const SimParams& p, double half_width, double phase, double amplitude, double t_end,
         const std::vector<int>& resolutions) {
        std::vector<ConvergenceRow> rows;
        {
          py::gil_scoped_release release;
          rows = convergence_study(ManufacturedCase(p, half_width, phase, amplitude, t_end), resolutions);
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["n_cells"] = r.n_cells;
          d["error"] = py::make_tuple(r.error[0], r.error[1], r.error[2], r.error[3]);
          d["order"] = py::make_tuple(r.order[0], r.order[1], r.order[2], r.order[3]);
          out.append(d);
        }
        return out;
      },
      py::arg("params"), py::arg("half_width"), py::arg("phase"), py::arg("amplitude"), py::arg("t_end"),
      py::arg("resolutions"));

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"nsac"};
        full.insert(full.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : full) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
