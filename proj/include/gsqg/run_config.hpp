#pragma once

#include <cstdint>
#include <string>

#include "gsqg/evolution.hpp"
#include "gsqg/spectral_field.hpp"

namespace gsqg {

enum class InitialKind { kGaussianBump, kMultiMode, kFromFile };

struct InitialData {
  InitialKind kind = InitialKind::kGaussianBump;
  double amplitude = 0.01;
  double width = 1.0;
  std::uint64_t seed = 0;
  std::string path;  // kFromFile only
};

struct GridConfig {
  double period_l = 0.0;
  std::size_t n_modes = 0;
};

/// Everything a simulate run needs. JSON layout:
///   {"alpha": 1.5,
///    "grid": {"period_l": 628.3185307179586, "n_modes": 4096},
///    "initial_data": {"kind": "gaussian_bump", "amplitude": 0.01, "width": 1.0, "seed": 0},
///    "stepper": {"dt_init": 0.05, "scheme": "if_rk4", "safety": 1.0, "max_t": 200.0,
///                "checkpoint_every": 1000},
///    "nl_mode": "series_n_max(2)",
///    "diagnostics_cadence": 20,
///    "output_dir": "out"}
/// initial_data.path is required for kind "from_file". Every key shown is
/// required except initial_data.seed, initial_data.path and the stepper keys,
/// which default to the StepperConfig defaults. Unknown keys are errors.
struct RunConfig {
  double alpha = 0.0;
  GridConfig grid;
  InitialData initial_data;
  StepperConfig stepper;
  NonlinearMode nl_mode;
  int diagnostics_cadence = 1;
  std::string output_dir;
};

/// Parses and validates. Throws ConfigError naming the offending field.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Checks every field against the parameter and grid invariants.
void validate(const RunConfig& cfg);

/// Canonical JSON text of a config (stable key order, shortest doubles).
std::string to_json(const RunConfig& cfg);

std::string initial_kind_name(InitialKind kind);

/// Samples the initial interface on the grid.
///   gaussian_bump: amplitude exp(-x^2 / width^2)
///   multi_mode:    amplitude exp(-x^2 / width^2) sum_{j<3} a_j cos(xi_j x + p_j),
///                  a_j in [0.5, 1), xi_j in [0.5, 2), p_j in [0, 2 pi) drawn from
///                  mt19937_64(seed), normalized so the largest sample is amplitude
///   from_file:     amplitude times the samples in path, one value per line at the
///                  grid nodes; lines starting with '#' are skipped
SpectralField make_initial_data(const InitialData& data, const GridPtr& grid);

}  // namespace gsqg
