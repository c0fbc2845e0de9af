#include "gsqg/evolution.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "gsqg/errors.hpp"
#include "gsqg/scattering.hpp"

namespace gsqg {

namespace {

constexpr char kMagic[8] = {'G', 'S', 'Q', 'G', 'C', 'K', 'P', '\0'};
constexpr std::uint32_t kVersion = 1;

void require_finite(const SpectralField& v, double t) {
  for (const Complex& c : v.coeffs()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      std::ostringstream msg;
      msg << "non-finite profile coefficient in the step from t = " << t;
      throw BlowupError(msg.str(), t, "");
    }
  }
}

void require_slope(const SpectralField& h) {
  const double slope = max_abs(h.derivative().samples());
  if (!(slope < 1.0)) {
    std::ostringstream msg;
    msg << "||h_x||_inf = " << slope << " left the graph regime";
    throw RegimeError(msg.str(), slope);
  }
}

// a + c * b, coefficientwise
SpectralField axpy(const SpectralField& a, double c, const SpectralField& b) {
  SpectralField out = a;
  auto& o = out.mutable_coeffs();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += c * b[i];
  return out;
}

template <typename T>
void put(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
T get(std::ifstream& in, const std::string& path) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof value);
  if (!in) throw IoError(path + ": truncated checkpoint");
  return value;
}

}  // namespace

std::string NonlinearMode::name() const {
  switch (kind) {
    case Kind::kLinear: return "linear";
    case Kind::kFull: return "full";
    case Kind::kCubicOnly: return "cubic_only";
    case Kind::kSeries: return "series_n_max(" + std::to_string(n_max) + ")";
  }
  return "";
}

NonlinearMode NonlinearMode::parse(const std::string& text) {
  if (text == "linear") return linear();
  if (text == "full") return full();
  if (text == "cubic_only") return cubic_only();
  const std::string head = "series_n_max(";
  if (text.rfind(head, 0) == 0 && text.size() == head.size() + 2 && text.back() == ')') {
    const char d = text[head.size()];
    if (d >= '1' && d <= '6') return series(d - '0');
  }
  throw ConfigError("nl_mode must be linear, full, cubic_only or series_n_max(1..6), got \"" +
                    text + "\"");
}

NonlinearityEvaluator::NonlinearityEvaluator(const AlphaParams& params, const QuadratureSpec& quad,
                                             NonlinearMode mode)
    : params_(params), quad_(quad), mode_(mode) {
  if (mode.kind == NonlinearMode::Kind::kSeries && (mode.n_max < 1 || mode.n_max > 6))
    throw DomainError("series n_max must lie in 1..6");
}

SpectralField NonlinearityEvaluator::operator()(const SpectralField& h) const {
  ++evaluations_;
  switch (mode_.kind) {
    case NonlinearMode::Kind::kLinear: return SpectralField(h.grid_ptr());
    case NonlinearMode::Kind::kFull: return eval_full(params_, quad_, h);
    case NonlinearMode::Kind::kCubicOnly: return eval_order_n(params_, quad_, h, 1);
    case NonlinearMode::Kind::kSeries: return eval_series(params_, quad_, h, mode_.n_max);
  }
  return SpectralField(h.grid_ptr());
}

void validate(const StepperConfig& cfg) {
  if (!(cfg.dt_init > 0.0) || !std::isfinite(cfg.dt_init))
    throw DomainError("stepper.dt_init must be positive");
  if (!(cfg.safety > 0.0 && cfg.safety <= 1.0))
    throw DomainError("stepper.safety must lie in (0, 1]");
  if (!(cfg.max_t >= 0.0) || !std::isfinite(cfg.max_t))
    throw DomainError("stepper.max_t must be finite and >= 0");
  if (cfg.checkpoint_every < 0) throw DomainError("stepper.checkpoint_every must be >= 0");
}

double scheduled_dt(const StepperConfig& cfg) { return cfg.safety * std::min(cfg.dt_init, 0.5); }

SimState initial_state(const SpectralField& h0, NonlinearMode mode) {
  SimState s;
  s.v_hat = h0;
  s.phase_l.assign(h0.size(), 0.0);
  s.nl_mode = mode;
  return s;
}

SpectralField physical_field(const AlphaParams& params, const SimState& state) {
  return propagate(params, state.v_hat, state.t);
}

SpectralField profile_rhs(const AlphaParams& params, const NonlinearityEvaluator& nl, double t,
                          const SpectralField& v_hat) {
  if (nl.mode().kind == NonlinearMode::Kind::kLinear) return SpectralField(v_hat.grid_ptr());
  return propagate(params, nl(propagate(params, v_hat, t)), -t);
}

std::vector<double> resonant_coefficients(const AlphaParams& params, const Grid& grid) {
  std::vector<double> r(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.nyquist_index(); ++i) {
    r[i] = resonant_coefficient(params, grid.freqs()[i]);
    r[grid.size() - i] = -r[i];
  }
  return r;
}

SimState step(const AlphaParams& params, const SimState& state, double dt,
              const NonlinearityEvaluator& nl, const std::vector<double>& rates) {
  if (!(dt != 0.0) || !std::isfinite(dt)) throw DomainError("step size must be finite and nonzero");
  if (rates.size() != state.v_hat.size()) throw DomainError("rate table does not match the grid");
  const double t = state.t;
  require_finite(state.v_hat, t);
  if (nl.mode().kind == NonlinearMode::Kind::kLinear) require_slope(physical_field(params, state));

  SimState next = state;
  if (nl.mode().kind != NonlinearMode::Kind::kLinear) {
    const SpectralField& v = state.v_hat;
    const SpectralField k1 = profile_rhs(params, nl, t, v);
    const SpectralField k2 = profile_rhs(params, nl, t + 0.5 * dt, axpy(v, 0.5 * dt, k1));
    const SpectralField k3 = profile_rhs(params, nl, t + 0.5 * dt, axpy(v, 0.5 * dt, k2));
    const SpectralField k4 = profile_rhs(params, nl, t + dt, axpy(v, dt, k3));
    auto& o = next.v_hat.mutable_coeffs();
    for (std::size_t i = 0; i < o.size(); ++i)
      o[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    require_finite(next.v_hat, t);
  }
  next.t = t + dt;
  next.dt = dt;
  next.step_count = state.step_count + 1;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const double a = std::norm(state.v_hat[i]) / (t + 1.0);
    const double b = std::norm(next.v_hat[i]) / (next.t + 1.0);
    next.phase_l[i] += 0.5 * dt * rates[i] * (a + b);
  }
  return next;
}

SimState step(const AlphaParams& params, const SimState& state, const StepperConfig& cfg,
              const NonlinearityEvaluator& nl) {
  validate(cfg);
  return step(params, state, scheduled_dt(cfg), nl,
              resonant_coefficients(params, state.v_hat.grid()));
}

std::string checkpoint_path(const RunHooks& hooks, long step_count) {
  std::ostringstream name;
  name << hooks.checkpoint_prefix << '_' << std::setw(8) << std::setfill('0') << step_count
       << ".bin";
  return (std::filesystem::path(hooks.checkpoint_dir) / name.str()).string();
}

SimState run(const AlphaParams& params, SimState state, const StepperConfig& cfg,
             const NonlinearityEvaluator& nl, const RunHooks& hooks) {
  validate(cfg);
  const double dt = scheduled_dt(cfg);
  const std::vector<double> rates = resonant_coefficients(params, state.v_hat.grid());
  const bool checkpoints = !hooks.checkpoint_dir.empty();
  if (checkpoints) std::filesystem::create_directories(hooks.checkpoint_dir);
  auto record = [&](const SimState& s) {
    if (hooks.on_record) hooks.on_record(s);
  };

  std::string last_checkpoint;
  if (checkpoints && cfg.checkpoint_every > 0) {
    last_checkpoint = checkpoint_path(hooks, state.step_count);
    save_checkpoint(last_checkpoint, params, state);
  }
  long last_recorded = state.step_count;
  record(state);
  while (cfg.max_t - state.t > 1e-9 * dt) {
    const double remaining = cfg.max_t - state.t;
    const double h = remaining < dt * (1.0 + 1e-9) ? remaining : dt;
    try {
      state = step(params, state, h, nl, rates);
    } catch (const BlowupError& e) {
      throw BlowupError(e.what(), e.last_good_t(), last_checkpoint);
    }
    if (checkpoints && cfg.checkpoint_every > 0 && state.step_count % cfg.checkpoint_every == 0) {
      last_checkpoint = checkpoint_path(hooks, state.step_count);
      save_checkpoint(last_checkpoint, params, state);
    }
    if (hooks.record_every > 0 && state.step_count % hooks.record_every == 0) {
      record(state);
      last_recorded = state.step_count;
    }
  }
  if (last_recorded != state.step_count) record(state);
  if (checkpoints && last_checkpoint != checkpoint_path(hooks, state.step_count))
    save_checkpoint(checkpoint_path(hooks, state.step_count), params, state);
  return state;
}

void save_checkpoint(const std::string& path, const AlphaParams& params, const SimState& state) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  const Grid& grid = state.v_hat.grid();
  out.write(kMagic, sizeof kMagic);
  put(out, kVersion);
  put(out, params.alpha);
  put(out, grid.period());
  put(out, static_cast<std::uint64_t>(grid.size()));
  put(out, state.t);
  put(out, state.dt);
  put(out, static_cast<std::int64_t>(state.step_count));
  put(out, static_cast<std::int32_t>(state.nl_mode.kind));
  put(out, static_cast<std::int32_t>(state.nl_mode.n_max));
  for (const Complex& c : state.v_hat.coeffs()) {
    put(out, c.real());
    put(out, c.imag());
  }
  for (double l : state.phase_l) put(out, l);
  if (!out) throw IoError("write to " + path + " failed");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw IoError(path + " is not a checkpoint file");
  if (get<std::uint32_t>(in, path) != kVersion) throw IoError(path + ": unsupported version");
  Checkpoint ck;
  ck.alpha = get<double>(in, path);
  const double period = get<double>(in, path);
  const auto n = get<std::uint64_t>(in, path);
  GridPtr grid;
  try {
    grid = make_grid(period, static_cast<std::size_t>(n));
  } catch (const DomainError& e) {
    throw IoError(path + ": bad grid header (" + e.what() + ")");
  }
  SimState& s = ck.state;
  s.t = get<double>(in, path);
  s.dt = get<double>(in, path);
  s.step_count = get<std::int64_t>(in, path);
  const auto kind = get<std::int32_t>(in, path);
  const auto n_max = get<std::int32_t>(in, path);
  if (kind < 0 || kind > 3) throw IoError(path + ": bad nonlinearity mode");
  s.nl_mode = {static_cast<NonlinearMode::Kind>(kind), n_max};
  std::vector<Complex> coeffs(n);
  for (auto& c : coeffs) {
    const double re = get<double>(in, path);
    const double im = get<double>(in, path);
    c = {re, im};
  }
  s.v_hat = SpectralField(grid, std::move(coeffs));
  s.phase_l.resize(n);
  for (auto& l : s.phase_l) l = get<double>(in, path);
  return ck;
}

}  // namespace gsqg
