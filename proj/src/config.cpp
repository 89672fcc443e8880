#include "nsac/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "nsac/csv.hpp"

namespace nsac {

namespace {

struct ValueError {
  std::string message;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view s) {
  try {
    const double v = parse_double(s);
    if (!std::isfinite(v)) throw ValueError{"must be finite"};
    return v;
  } catch (const Error&) {
    throw ValueError{"not a number"};
  }
}

template <class Int>
Int to_int(std::string_view s) {
  s = trim(s);
  Int v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ValueError{"not an integer"};
  return v;
}

double positive(std::string_view s) {
  const double v = to_double(s);
  if (!(v > 0.0)) throw ValueError{"must be > 0"};
  return v;
}

double non_negative(std::string_view s) {
  const double v = to_double(s);
  if (!(v >= 0.0)) throw ValueError{"must be >= 0"};
  return v;
}

double unit_phase(std::string_view s) {
  const double v = to_double(s);
  if (v != 1.0 && v != -1.0) throw ValueError{"must be 1 or -1"};
  return v;
}

std::vector<std::string_view> list_items(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find_first_of(", ", start);
    if (end == std::string_view::npos) end = s.size();
    const auto item = trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(item);
    start = end + 1;
  }
  return out;
}

struct Entry {
  ConfigKey key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

std::string fmt(double v) { return format_double(v); }


const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    auto add = [&t](std::string name, std::string doc, std::function<void(RunConfig&, std::string_view)> set,
                    std::function<std::string(const RunConfig&)> get) {
      const RunConfig defaults;
      std::string def = get(defaults);
      t.push_back({{std::move(name), std::move(doc), std::move(def)}, std::move(set), std::move(get)});
    };
    auto param = [&add](std::string name, std::string doc, double SimParams::*field,
                        std::function<double(std::string_view)> conv) {
      add(std::move(name), std::move(doc), [field, conv](RunConfig& c, std::string_view s) { c.params.*field = conv(s); },
          [field](const RunConfig& c) { return fmt(c.params.*field); });
    };
    auto real = [&add](std::string name, std::string doc, double RunConfig::*field,
                       std::function<double(std::string_view)> conv) {
      add(std::move(name), std::move(doc), [field, conv](RunConfig& c, std::string_view s) { c.*field = conv(s); },
          [field](const RunConfig& c) { return fmt(c.*field); });
    };
    auto bump = [&add](const std::string& prefix, Bump InitialProfile::*which) {
      add(prefix + "_amplitude", "Gaussian bump amplitude in " + prefix,
          [which](RunConfig& c, std::string_view s) { (c.profile.*which).amplitude = to_double(s); },
          [which](const RunConfig& c) { return fmt((c.profile.*which).amplitude); });
      add(prefix + "_center", "Gaussian bump centre in " + prefix,
          [which](RunConfig& c, std::string_view s) { (c.profile.*which).center = to_double(s); },
          [which](const RunConfig& c) { return fmt((c.profile.*which).center); });
      add(prefix + "_width", "Gaussian bump width in " + prefix,
          [which](RunConfig& c, std::string_view s) { (c.profile.*which).width = positive(s); },
          [which](const RunConfig& c) { return fmt((c.profile.*which).width); });
    };

    param("epsilon", "interface thickness (> 0)", &SimParams::epsilon, positive);
    param("beta", "conductivity exponent (> 0)", &SimParams::beta, positive);
    param("nu", "viscosity coefficient", &SimParams::nu, positive);
    param("gas_R", "gas constant", &SimParams::gas_R, positive);
    param("c_v", "specific heat", &SimParams::c_v, positive);
    param("kappa_tilde", "conductivity prefactor", &SimParams::kappa_tilde, positive);
    param("cfl", "safety factor on the stable step, in (0,1)", &SimParams::cfl, [](std::string_view s) {
      const double v = to_double(s);
      if (!(v > 0.0 && v < 1.0)) throw ValueError{"must lie in (0,1)"};
      return v;
    });
    param("t_final", "end time", &SimParams::t_final, non_negative);
    param("positivity_floor", "abort threshold for v and theta", &SimParams::positivity_floor, positive);
    add("face_average", "face coefficient mean: arithmetic | harmonic",
        [](RunConfig& c, std::string_view s) {
          if (s == "arithmetic")
            c.params.face_average = FaceAverage::arithmetic;
          else if (s == "harmonic")
            c.params.face_average = FaceAverage::harmonic;
          else
            throw ValueError{"must be 'arithmetic' or 'harmonic'"};
        },
        [](const RunConfig& c) {
          return std::string(c.params.face_average == FaceAverage::arithmetic ? "arithmetic" : "harmonic");
        });

    real("half_width", "domain half width L in mass coordinate", &RunConfig::half_width, positive);
    add("n_cells", "cell count N (even, >= 8)",
        [](RunConfig& c, std::string_view s) {
          const int n = to_int<int>(s);
          if (n < 8 || n % 2 != 0) throw ValueError{"must be even and >= 8"};
          c.n_cells = n;
        },
        [](const RunConfig& c) { return std::to_string(c.n_cells); });
    add("phi_left", "far-field phase at -infinity (1 or -1)",
        [](RunConfig& c, std::string_view s) { c.bc.phi_left = unit_phase(s); },
        [](const RunConfig& c) { return fmt(c.bc.phi_left); });
    add("phi_right", "far-field phase at +infinity (1 or -1)",
        [](RunConfig& c, std::string_view s) { c.bc.phi_right = unit_phase(s); },
        [](const RunConfig& c) { return fmt(c.bc.phi_right); });

    add("initial", "initial data: equilibrium | interface | random",
        [](RunConfig& c, std::string_view s) {
          if (s == "equilibrium")
            c.initial = InitialKind::equilibrium;
          else if (s == "interface")
            c.initial = InitialKind::interface;
          else if (s == "random")
            c.initial = InitialKind::random;
          else
            throw ValueError{"must be 'equilibrium', 'interface' or 'random'"};
        },
        [](const RunConfig& c) {
          switch (c.initial) {
            case InitialKind::equilibrium:
              return std::string("equilibrium");
            case InitialKind::interface:
              return std::string("interface");
            case InitialKind::random:
              return std::string("random");
          }
          return std::string();
        });
    add("interface_center", "centre of the phase interface or droplet",
        [](RunConfig& c, std::string_view s) { c.profile.interface_center = to_double(s); },
        [](const RunConfig& c) { return fmt(c.profile.interface_center); });
    add("interface_width", "tanh width; 0 selects min(sqrt(2)*epsilon, distance to the domain edge / 15)",
        [](RunConfig& c, std::string_view s) { c.profile.interface_width = non_negative(s); },
        [](const RunConfig& c) { return fmt(c.profile.interface_width); });
    add("droplet_radius", "droplet of the opposite phase when phi_left = phi_right (0 = none)",
        [](RunConfig& c, std::string_view s) { c.profile.droplet_radius = non_negative(s); },
        [](const RunConfig& c) { return fmt(c.profile.droplet_radius); });
    bump("v", &InitialProfile::v);
    bump("u", &InitialProfile::u);
    bump("theta", &InitialProfile::theta);

    add("output_dir", "run output directory",
        [](RunConfig& c, std::string_view s) {
          if (s.empty()) throw ValueError{"must not be empty"};
          c.output_dir = std::string(s);
        },
        [](const RunConfig& c) { return c.output_dir; });
    add("snapshot_every_steps", "write a snapshot every k steps (0 = off)",
        [](RunConfig& c, std::string_view s) { c.snapshot_every_steps = to_int<std::size_t>(s); },
        [](const RunConfig& c) { return std::to_string(c.snapshot_every_steps); });
    real("snapshot_every_time", "write a snapshot every interval of time (0 = off)", &RunConfig::snapshot_every_time,
         non_negative);
    add("diagnostics_every_steps", "record diagnostics every k steps (0 = off)",
        [](RunConfig& c, std::string_view s) { c.diagnostics_every_steps = to_int<std::size_t>(s); },
        [](const RunConfig& c) { return std::to_string(c.diagnostics_every_steps); });
    real("diagnostics_every_time", "record diagnostics every interval of time (0 = off)",
         &RunConfig::diagnostics_every_time, non_negative);
    add("weighted", "weighted conduction dissipation pairs alpha:n, comma separated",
        [](RunConfig& c, std::string_view s) {
          c.weighted.clear();
          for (auto item : list_items(s)) {
            const auto colon = item.find(':');
            if (colon == std::string_view::npos) throw ValueError{"expected alpha:n pairs"};
            const double alpha = to_double(item.substr(0, colon));
            if (!(alpha > 0.0 && alpha < 1.0)) throw ValueError{"alpha must lie in (0,1)"};
            c.weighted.push_back({alpha, to_int<int>(item.substr(colon + 1))});
          }
        },
        [](const RunConfig& c) {
          std::string out;
          for (const auto& w : c.weighted) out += (out.empty() ? "" : ",") + fmt(w.alpha) + ":" + std::to_string(w.n);
          return out;
        });
    add("seed", "random seed for initial = random",
        [](RunConfig& c, std::string_view s) { c.seed = to_int<std::uint64_t>(s); },
        [](const RunConfig& c) { return std::to_string(c.seed); });
    add("mms_resolutions", "cell counts for the convergence study, each double the previous",
        [](RunConfig& c, std::string_view s) {
          c.mms_resolutions.clear();
          for (auto item : list_items(s)) {
            const int n = to_int<int>(item);
            if (n < 8 || n % 2 != 0) throw ValueError{"resolutions must be even and >= 8"};
            if (!c.mms_resolutions.empty() && n != 2 * c.mms_resolutions.back())
              throw ValueError{"each resolution must double the previous one"};
            c.mms_resolutions.push_back(n);
          }
          if (c.mms_resolutions.size() < 3) throw ValueError{"need at least three resolutions"};
        },
        [](const RunConfig& c) {
          std::string out;
          for (int n : c.mms_resolutions) out += (out.empty() ? "" : ",") + std::to_string(n);
          return out;
        });
    real("mms_amplitude", "manufactured-solution amplitude", &RunConfig::mms_amplitude, [](std::string_view s) {
      const double v = to_double(s);
      if (!(v >= 0.0 && v <= 0.5)) throw ValueError{"must lie in [0, 0.5]"};
      return v;
    });
    real("mms_t_final", "manufactured-solution end time", &RunConfig::mms_t_final, positive);
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> out;
    for (const auto& e : entries()) out.push_back(e.key);
    return out;
  }();
  return keys;
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected 'key = value' (line " + std::to_string(line_no) + ")", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    const auto& table = entries();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Entry& e) { return e.key.name == key; });
    if (it == table.end())
      throw ConfigError("unknown key '" + key + "' (line " + std::to_string(line_no) + ")", line_no, key);
    if (const auto prev = seen.find(key); prev != seen.end())
      throw ConfigError("duplicate key '" + key + "' (line " + std::to_string(line_no) + ", first set on line " +
                            std::to_string(prev->second) + ")",
                        line_no, key);
    seen.emplace(key, line_no);
    try {
      it->set(c, value);
    } catch (const ValueError& e) {
      throw ConfigError("invalid value '" + std::string(value) + "' for key '" + key + "' (line " +
                            std::to_string(line_no) + "): " + e.message,
                        line_no, key);
    }
  }

  // Cross-field checks.
  auto line_of = [&](const std::string& key) {
    const auto it = seen.find(key);
    return it == seen.end() ? 0 : it->second;
  };
  if (c.initial == InitialKind::equilibrium && !c.bc.is_uniform())
    throw ConfigError("invalid value for key 'phi_right' (line " + std::to_string(line_of("phi_right")) +
                          "): initial = equilibrium needs phi_left = phi_right",
                      line_of("phi_right"), "phi_right");
  return c;
}

std::string format_config(const RunConfig& c) {
  std::ostringstream os;
  for (const auto& e : entries()) os << e.key.name << " = " << e.get(c) << "\n";
  return os.str();
}

MassGrid config_grid(const RunConfig& c) { return make_grid(c.half_width, c.n_cells); }

FlowState initial_state(const RunConfig& c) {
  const MassGrid grid = config_grid(c);
  switch (c.initial) {
    case InitialKind::equilibrium:
      return equilibrium_state(grid, c.bc);
    case InitialKind::interface:
      return interface_initial_state(grid, c.bc, c.params, c.profile);
    case InitialKind::random: {
      std::mt19937_64 rng(c.seed);
      auto uniform = [&rng](double lo, double hi) {
        // Top 53 bits, so the draw does not depend on the library's distribution code.
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
      };
      const double span = 0.25 * c.half_width;
      InitialProfile p = c.profile;
      p.v = {uniform(-0.3, 0.5), uniform(-span, span), uniform(0.5, 2.0)};
      p.u = {uniform(-0.3, 0.3), uniform(-span, span), uniform(0.5, 2.0)};
      p.theta = {uniform(-0.5, 0.5), uniform(-span, span), uniform(0.5, 2.0)};
      return interface_initial_state(grid, c.bc, c.params, p);
    }
  }
  throw Error("initial_state: unknown initial kind");
}

}  // namespace nsac
