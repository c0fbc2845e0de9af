#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gsqg/alpha_params.hpp"
#include "gsqg/nonlinearity.hpp"
#include "gsqg/spectral_field.hpp"

namespace gsqg {

/// Which part of the nonlinearity drives the profile.
struct NonlinearMode {
  enum class Kind { kLinear, kFull, kCubicOnly, kSeries };
  Kind kind = Kind::kSeries;
  int n_max = 2;  // used by kSeries

  static NonlinearMode linear() { return {Kind::kLinear, 0}; }
  static NonlinearMode full() { return {Kind::kFull, 0}; }
  static NonlinearMode cubic_only() { return {Kind::kCubicOnly, 1}; }
  static NonlinearMode series(int n_max) { return {Kind::kSeries, n_max}; }

  /// "linear", "full", "cubic_only" or "series_n_max(k)".
  std::string name() const;
  /// Inverse of name(); throws ConfigError on anything else.
  static NonlinearMode parse(const std::string& text);
  bool operator==(const NonlinearMode&) const = default;
};

/// h -> N[h] for one NonlinearMode. cubic_only and series go through the
/// spectral-kernel route of eval_order_n, full through eval_full.
class NonlinearityEvaluator {
 public:
  NonlinearityEvaluator(const AlphaParams& params, const QuadratureSpec& quad, NonlinearMode mode);

  SpectralField operator()(const SpectralField& h) const;
  NonlinearMode mode() const noexcept { return mode_; }
  const QuadratureSpec& quadrature() const noexcept { return quad_; }
  long evaluations() const noexcept { return evaluations_; }

 private:
  AlphaParams params_;
  QuadratureSpec quad_;
  NonlinearMode mode_;
  mutable long evaluations_ = 0;
};

struct SimState {
  double t = 0.0;
  SpectralField v_hat;             // profile e^{-it Lambda} h
  std::vector<double> phase_l;     // L(xi, t), FFT order
  long step_count = 0;
  double dt = 0.0;                 // last step taken
  NonlinearMode nl_mode;
};

enum class Scheme { kIfRk4 };

struct StepperConfig {
  double dt_init = 0.05;
  Scheme scheme = Scheme::kIfRk4;
  double safety = 1.0;
  double max_t = 0.0;
  int checkpoint_every = 0;  // steps; 0 disables
};

/// Throws DomainError for dt_init <= 0, safety outside (0, 1] or max_t < 0.
void validate(const StepperConfig& cfg);

/// Step used by run: safety * min(dt_init, 0.5).
double scheduled_dt(const StepperConfig& cfg);

/// State at t = 0 with v = h0 and L = 0.
SimState initial_state(const SpectralField& h0, NonlinearMode mode);

/// h(t) = e^{it Lambda} v(t).
SpectralField physical_field(const AlphaParams& params, const SimState& state);

/// d/dt v^ = e^{-it Lambda} F[N(e^{it Lambda} v)].
SpectralField profile_rhs(const AlphaParams& params, const NonlinearityEvaluator& nl, double t,
                          const SpectralField& v_hat);

/// r(xi_k) on the grid (see resonant_coefficient).
std::vector<double> resonant_coefficients(const AlphaParams& params, const Grid& grid);

/// One integrating-factor RK4 step of size dt (negative dt integrates
/// backward). L advances by the trapezoid rule on r(xi) |v^|^2 / (s + 1).
/// Throws BlowupError on a non-finite coefficient and RegimeError when
/// ||h_x||_inf >= 1 at a stage.
SimState step(const AlphaParams& params, const SimState& state, double dt,
              const NonlinearityEvaluator& nl, const std::vector<double>& rates);
/// Same, with dt = scheduled_dt(cfg).
SimState step(const AlphaParams& params, const SimState& state, const StepperConfig& cfg,
              const NonlinearityEvaluator& nl);

struct RunHooks {
  int record_every = 1;  // steps between on_record calls; the first and last states are always recorded
  std::function<void(const SimState&)> on_record;
  std::string checkpoint_dir;  // checkpoints are written here when non-empty
  std::string checkpoint_prefix = "checkpoint";
};

/// Advances until t reaches cfg.max_t with the fixed step scheduled_dt(cfg);
/// the last step is shortened to land on max_t. Checkpoints are written at the
/// start, every cfg.checkpoint_every steps and at the end. A BlowupError carries the last
/// checkpoint written.
SimState run(const AlphaParams& params, SimState state, const StepperConfig& cfg,
             const NonlinearityEvaluator& nl, const RunHooks& hooks = {});

/// Binary checkpoint: magic "GSQGCKP\0", u32 version, then alpha, L, N, t,
/// dt, step count, mode, v^ and L.
void save_checkpoint(const std::string& path, const AlphaParams& params, const SimState& state);

struct Checkpoint {
  double alpha = 0.0;
  SimState state;
};

/// Throws IoError on a missing, truncated or foreign file.
Checkpoint load_checkpoint(const std::string& path);

/// Path of the checkpoint written at a given step.
std::string checkpoint_path(const RunHooks& hooks, long step_count);

}  // namespace gsqg
