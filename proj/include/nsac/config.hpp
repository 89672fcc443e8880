#pragma once

// Line-based `key = value` run configuration with `#` comments.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nsac/core.hpp"
#include "nsac/diagnostics.hpp"

namespace nsac {

enum class InitialKind { equilibrium, interface, random };

struct RunConfig {
  SimParams params;
  double half_width = 16.0;
  int n_cells = 512;
  BoundaryConfig bc;
  InitialKind initial = InitialKind::equilibrium;
  InitialProfile profile;
  std::string output_dir = "nsac_run";
  std::size_t snapshot_every_steps = 0;
  double snapshot_every_time = 0.0;
  std::size_t diagnostics_every_steps = 1;
  double diagnostics_every_time = 0.0;
  std::vector<WeightedPair> weighted{{0.5, 0}};
  std::uint64_t seed = 0;
  std::vector<int> mms_resolutions{128, 256, 512};
  double mms_amplitude = 0.1;
  double mms_t_final = 0.5;
};

struct ConfigKey {
  std::string name;
  std::string description;
  std::string default_value;
};

/// Every accepted key with its description and default, in file order.
const std::vector<ConfigKey>& config_keys();

/// Throws ConfigError naming the line and key for unknown keys, duplicate
/// keys, unparsable values and out-of-range values.
RunConfig parse_config(std::string_view text);

/// Writes every key; parse_config(format_config(c)) reproduces c exactly.
std::string format_config(const RunConfig& config);

MassGrid config_grid(const RunConfig& config);

/// Initial state selected by `initial`; `random` draws bump parameters from
/// `seed` deterministically.
FlowState initial_state(const RunConfig& config);

}  // namespace nsac
