#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gsqg/diagnostics.hpp"
#include "gsqg/run_config.hpp"
#include "gsqg/scattering.hpp"

namespace gsqg {

struct SimulateResult {
  double final_t = 0.0;
  long steps = 0;
  int energetic_band = 0;
  std::vector<DiagnosticsRecord> records;
  std::vector<PhaseTracker::Series> phase;
  std::string last_checkpoint;
};

/// Runs the configured simulation and writes into cfg.output_dir:
///   diagnostics.csv  one row per record (schema "diagnostics" v1)
///   phase.csv        plateau frequencies of the most energetic band (schema "phase" v1)
///   checkpoints/     checkpoint_<step>.bin when stepper.checkpoint_every > 0
///   manifest.json    resolved config, derived constants and run summary
/// With a non-empty resume path the run continues from that checkpoint,
/// whose alpha, grid and mode must match the config. A BlowupError,
/// RegimeError or LocalizationError is rethrown after the manifest records it.
SimulateResult simulate(const RunConfig& cfg, const std::string& resume = "");

struct SymbolsOptions {
  double alpha = 1.5;
  int triples = 20;
  std::uint64_t seed = 1;
  int xi_points = 41;
  double xi_min = 1e-2;
  double xi_max = 1e2;
  std::string output_dir;
};

/// Outcome of the check a command runs on its own output.
struct Verdict {
  bool passed = true;
  std::string message;
};

struct SymbolsResult {
  double max_rel_diff = 0.0;
  int rows = 0;
  Verdict verdict;  // fails when any rel_diff exceeds 1e-4
};

/// m1 by the cube and oscillatory integrals on random triples in [-4, 4]^3
/// (symbols.csv) and c_tilde on a log grid of xi (c_tilde.csv).
SymbolsResult run_symbols(const SymbolsOptions& opt);

struct DispersiveOptions {
  double alpha = 1.5;
  int band = 0;
  double t_min = 10.0;
  double t_max = 1000.0;
  int samples = 9;  // log-spaced in [t_min, t_max]
  std::string output_dir;
};

struct DispersiveRun {
  DispersiveResult result;
  Verdict verdict;  // fails when |slope + 1/2| > 0.05
};

/// decay.csv plus the fitted slope and prefactor in manifest.json.
DispersiveRun run_dispersive(const DispersiveOptions& opt);

struct ResonancesOptions {
  double alpha = 1.5;
  std::vector<double> xi;
  std::string output_dir;
};

struct ResonancesResult {
  int checked = 0;
  int unexpected = 0;  // clusters off the three expected points, or expected points missed
  Verdict verdict;     // fails when unexpected > 0
};

/// resonances.csv with every cluster found for each xi, compared against
/// (xi,xi), (xi,-xi), (-xi,xi).
ResonancesResult run_resonances(const ResonancesOptions& opt);

}  // namespace gsqg
