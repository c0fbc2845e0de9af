#include "gsqg/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "gsqg/csv.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/nonlinearity.hpp"
#include "log.hpp"

namespace gsqg {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";
constexpr double kSymbolTolerance = 1e-4;
constexpr double kSlopeTolerance = 0.05;

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void make_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw IoError("cannot create directory " + p.string() + ": " + ec.message());
}

void write_json(const fs::path& p, const Json& j) {
  std::ofstream out(p, std::ios::binary);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("cannot write " + p.string());
}

Json constants(const AlphaParams& p) {
  const M1Evaluator cube = [&](double a, double b, double c) {
    return eval_symbol_m1(p, {{a, b, c}, SymbolMethod::kCubeIntegral});
  };
  const double ct = c_tilde(p, 1.0);
  const double ct_cube = c_tilde(p, cube, 1.0);
  return Json{{"alpha", p.alpha},
              {"gamma", p.gamma},
              {"gamma_quadrature", gamma_by_quadrature(p.alpha)},
              {"beta", p.beta},
              {"p0", p.p0},
              {"n0", p.n0},
              {"n1", p.n1},
              {"n2", p.n2},
              {"n0_alpha", p.n0 * p.alpha},
              {"n1_alpha", p.n1 * p.alpha},
              {"n2_alpha", p.n2 * p.alpha},
              {"d1", p.d1},
              {"k_alpha", p.k_alpha},
              {"c_tilde_at_1", ct},
              {"c_tilde_at_1_cube_integral", ct_cube},
              {"c_tilde_calibration_rel_diff", std::fabs(ct - ct_cube) / std::fabs(ct)},
              {"resonant_coefficient_at_1", resonant_coefficient(p, 1.0)}};
}

Json manifest_head(const std::string& command, const AlphaParams& p) {
  return Json{{"tool", "gsqg"}, {"version", kVersion}, {"command", command}, {"constants", constants(p)}};
}

std::string tail_rule_name(TailRule r) {
  return r == TailRule::kTruncateAtHalfPeriod ? "truncate_at_half_period" : "periodic_image_sum";
}

std::string dealias_name(DealiasMode d) { return d == DealiasMode::kTwoThirds ? "two_thirds" : "none"; }

void check_resume(const RunConfig& cfg, const Checkpoint& ck, const std::string& path) {
  const Grid& g = ck.state.v_hat.grid();
  if (ck.alpha != cfg.alpha) throw ConfigError("checkpoint " + path + " was written for another alpha");
  if (g.period() != cfg.grid.period_l || g.size() != cfg.grid.n_modes)
    throw ConfigError("checkpoint " + path + " was written on another grid");
  if (!(ck.state.nl_mode == cfg.nl_mode))
    throw ConfigError("checkpoint " + path + " was written with nl_mode " + ck.state.nl_mode.name());
}

AlphaParams params_for(double alpha) {
  try {
    return make_alpha_params(alpha);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("alpha: ") + e.what());
  }
}

}  // namespace

SimulateResult simulate(const RunConfig& cfg, const std::string& resume) {
  validate(cfg);
  const AlphaParams params = make_alpha_params(cfg.alpha);
  const GridPtr grid = make_grid(cfg.grid.period_l, cfg.grid.n_modes);
  const fs::path out_dir(cfg.output_dir);
  make_dir(out_dir);

  SimState state;
  if (resume.empty()) {
    state = initial_state(make_initial_data(cfg.initial_data, grid), cfg.nl_mode);
  } else {
    Checkpoint ck = load_checkpoint(resume);
    check_resume(cfg, ck, resume);
    state = std::move(ck.state);
    log().info("resuming from {} at t = {}", resume, state.t);
  }

  const QuadratureSpec quad = default_quadrature(*grid);
  const NonlinearityEvaluator nl(params, quad, cfg.nl_mode);
  const LPBandSet bands = LPBandSet::covering(*grid);

  SimulateResult result;
  result.energetic_band = energetic_band(bands, state.v_hat);
  const std::vector<std::size_t> probes = band_plateau_indices(bands, result.energetic_band, *grid);
  PhaseTracker tracker(*grid, probes);

  csv::Writer diag((out_dir / "diagnostics.csv").string(), "diagnostics", 1, record_columns(bands));
  RunHooks hooks;
  hooks.record_every = cfg.diagnostics_cadence;
  hooks.on_record = [&](const SimState& s) {
    DiagnosticsRecord r = compute_record(params, bands, s, nl);
    diag.row(record_row(r, bands));
    tracker.record(s);
    log().debug("t = {} bootstrap = {} linf_hx = {}", r.t, r.bootstrap, r.linf_hx);
    result.records.push_back(std::move(r));
  };
  if (cfg.stepper.checkpoint_every > 0) {
    hooks.checkpoint_dir = (out_dir / "checkpoints").string();
    make_dir(hooks.checkpoint_dir);
  }

  Json manifest = manifest_head("simulate", params);
  manifest["config"] = Json::parse(to_json(cfg));
  manifest["resume"] = resume.empty() ? Json(nullptr) : Json(resume);
  manifest["grid"] = {{"period_l", grid->period()},
                      {"n_modes", grid->size()},
                      {"dx", grid->dx()},
                      {"dxi", grid->dxi()},
                      {"dealias_max_wavenumber", (grid->size() - 1) / 3},
                      {"band_k_min", bands.k_min()},
                      {"band_k_max", bands.k_max()}};
  manifest["quadrature"] = {{"inner_cut", quad.inner_cut},
                            {"n_inner", quad.n_inner},
                            {"n_outer", quad.n_outer},
                            {"tail_rule", tail_rule_name(quad.tail_rule)},
                            {"dealias", dealias_name(quad.dealias)}};
  manifest["stepper"] = {{"scheme", "if_rk4"},
                         {"dt", scheduled_dt(cfg.stepper)},
                         {"resonant_phase_rule", "trapezoid"}};
  Json probe_xi = Json::array();
  for (std::size_t i : probes) probe_xi.push_back(grid->freqs()[i]);
  manifest["diagnostics"] = {{"cadence", cfg.diagnostics_cadence},
                             {"energetic_band", result.energetic_band},
                             {"phase_probes_xi", probe_xi},
                             {"window_inner", 0.25 * grid->period()},
                             {"window_outer", 15.0 / 32.0 * grid->period()},
                             {"window_max_discarded", kMaxWindowDiscard},
                             {"bootstrap_time_weight", "(1 + t)^(-p0)"}};
  manifest["outputs"] = {{"diagnostics.csv", "diagnostics v1"}, {"phase.csv", "phase v1"}};

  const auto finish = [&](const std::string& status, const SimState* final_state, const std::string& message) {
    diag.flush();
    tracker.write_csv((out_dir / "phase.csv").string());
    result.phase = tracker.series();
    Json r = {{"status", status}, {"records", result.records.size()}};
    if (final_state) {
      r["final_t"] = final_state->t;
      r["steps"] = final_state->step_count;
    } else {
      r["last_recorded_t"] = result.records.empty() ? 0.0 : result.records.back().t;
    }
    if (!message.empty()) r["message"] = message;
    if (!result.last_checkpoint.empty())
      r["last_checkpoint"] = fs::relative(result.last_checkpoint, out_dir).generic_string();
    manifest["result"] = r;
    write_json(out_dir / "manifest.json", manifest);
  };

  log().info("simulate: alpha = {} L = {} N = {} mode = {} max_t = {}", cfg.alpha, grid->period(),
             grid->size(), cfg.nl_mode.name(), cfg.stepper.max_t);
  SimState final_state;
  try {
    final_state = run(params, std::move(state), cfg.stepper, nl, hooks);
  } catch (const BlowupError& e) {
    result.last_checkpoint = e.last_checkpoint();
    finish("blowup", nullptr, e.what());
    throw;
  } catch (const RegimeError& e) {
    finish("regime_exit", nullptr, e.what());
    throw;
  } catch (const LocalizationError& e) {
    finish("localization", nullptr, e.what());
    throw;
  }
  result.final_t = final_state.t;
  result.steps = final_state.step_count;
  if (!hooks.checkpoint_dir.empty()) result.last_checkpoint = checkpoint_path(hooks, final_state.step_count);
  finish("ok", &final_state, "");
  log().info("simulate: reached t = {} after {} steps", final_state.t, final_state.step_count);
  return result;
}

SymbolsResult run_symbols(const SymbolsOptions& opt) {
  const AlphaParams params = params_for(opt.alpha);
  if (opt.triples < 0) throw ConfigError("triples must be >= 0");
  if (opt.xi_points < 2 || !(opt.xi_min > 0.0) || !(opt.xi_max > opt.xi_min))
    throw ConfigError("xi grid needs xi_points >= 2 and 0 < xi_min < xi_max");
  const fs::path out_dir(opt.output_dir);
  make_dir(out_dir);

  SymbolsResult res;
  std::mt19937_64 rng(opt.seed);
  {
    csv::Writer w((out_dir / "symbols.csv").string(), "symbols", 1,
                  {"alpha", "l1", "l2", "l3", "m1_cube", "m1_osc", "rel_diff"});
    for (int i = 0; i < opt.triples; ++i) {
      std::array<double, 3> l{};
      for (double& v : l) {
        do v = -4.0 + 8.0 * unit_draw(rng);
        while (std::fabs(v) < 1e-3);
      }
      const double cube = eval_symbol_m1(params, {l, SymbolMethod::kCubeIntegral});
      const double osc = eval_symbol_m1(params, {l, SymbolMethod::kOscillatoryIntegral});
      const double rel = std::fabs(cube - osc) / std::max(std::fabs(cube), 1e-12);
      res.max_rel_diff = std::max(res.max_rel_diff, rel);
      w.row({opt.alpha, l[0], l[1], l[2], cube, osc, rel});
      ++res.rows;
    }
    w.flush();
  }
  {
    const M1Evaluator cube = [&](double a, double b, double c) {
      return eval_symbol_m1(params, {{a, b, c}, SymbolMethod::kCubeIntegral});
    };
    csv::Writer w((out_dir / "c_tilde.csv").string(), "c_tilde", 1,
                  {"xi", "c_tilde", "c_tilde_cube", "rel_diff"});
    const double step = std::log(opt.xi_max / opt.xi_min) / (opt.xi_points - 1);
    for (int i = 0; i < opt.xi_points; ++i) {
      const double xi = opt.xi_min * std::exp(step * i);
      const double a = c_tilde(params, xi);
      const double b = c_tilde(params, cube, xi);
      w.row({xi, a, b, std::fabs(a - b) / std::fabs(a)});
    }
    w.flush();
  }
  Json m = manifest_head("symbols", params);
  m["options"] = {{"triples", opt.triples}, {"seed", opt.seed}, {"xi_points", opt.xi_points},
                  {"xi_min", opt.xi_min},   {"xi_max", opt.xi_max}};
  m["result"] = {{"max_rel_diff", res.max_rel_diff}, {"tolerance", kSymbolTolerance},
                 {"status", res.max_rel_diff <= kSymbolTolerance ? "ok" : "verification_failed"}};
  m["outputs"] = {{"symbols.csv", "symbols v1"}, {"c_tilde.csv", "c_tilde v1"}};
  write_json(out_dir / "manifest.json", m);
  if (res.max_rel_diff > kSymbolTolerance) {
    std::ostringstream msg;
    msg << "m1 oracles disagree: max rel_diff " << res.max_rel_diff << " > " << kSymbolTolerance;
    res.verdict = {false, msg.str()};
  }
  return res;
}

DispersiveRun run_dispersive(const DispersiveOptions& opt) {
  const AlphaParams params = params_for(opt.alpha);
  if (opt.samples < 2 || !(opt.t_min > 0.0) || !(opt.t_max > opt.t_min))
    throw ConfigError("t range needs samples >= 2 and 0 < t_min < t_max");
  const fs::path out_dir(opt.output_dir);
  make_dir(out_dir);
  std::vector<double> ts;
  const double step = std::log(opt.t_max / opt.t_min) / (opt.samples - 1);
  for (int i = 0; i < opt.samples; ++i) ts.push_back(opt.t_min * std::exp(step * i));
  log().info("dispersive: band {} on {} times", opt.band, ts.size());
  DispersiveResult r = dispersive_decay_experiment(params, opt.band, ts);
  write_decay_csv((out_dir / "decay.csv").string(), std::span(&r, 1));

  const bool ok = std::fabs(r.fit.slope + 0.5) <= kSlopeTolerance;
  Json m = manifest_head("dispersive", params);
  m["options"] = {{"band", opt.band}, {"t_min", opt.t_min}, {"t_max", opt.t_max}, {"samples", opt.samples}};
  m["grid"] = {{"period_l", r.period}, {"n_modes", r.n_modes}};
  m["result"] = {{"slope", r.fit.slope},
                 {"fit_prefactor", r.fit.prefactor()},
                 {"prefactor", r.prefactor},
                 {"l1_norm", r.l1_norm},
                 {"sup_at_zero", r.sup_at_zero},
                 {"slope_tolerance", kSlopeTolerance},
                 {"status", ok ? "ok" : "verification_failed"}};
  m["outputs"] = {{"decay.csv", "decay v1"}};
  write_json(out_dir / "manifest.json", m);
  DispersiveRun run{r, {}};
  if (!ok) {
    std::ostringstream msg;
    msg << "band " << opt.band << " decays with slope " << r.fit.slope << ", outside -0.5 +- "
        << kSlopeTolerance;
    run.verdict = {false, msg.str()};
  }
  return run;
}

ResonancesResult run_resonances(const ResonancesOptions& opt) {
  const AlphaParams params = params_for(opt.alpha);
  if (opt.xi.empty()) throw ConfigError("at least one xi is required");
  for (double xi : opt.xi)
    if (!std::isfinite(xi) || xi == 0.0) throw ConfigError("xi values must be finite and nonzero");
  const fs::path out_dir(opt.output_dir);
  make_dir(out_dir);
  constexpr double kTol = 1e-6;

  ResonancesResult res;
  Json per_xi = Json::array();
  csv::Writer w((out_dir / "resonances.csv").string(), "resonances", 1,
                {"xi", "eta1", "eta2", "phi", "grad_norm", "expected"});
  for (double xi : opt.xi) {
    SearchBox box;
    box.half_width = 3.0 * std::fabs(xi);
    const auto found = find_resonances(params, xi, box, kTol);
    const auto expect = expected_resonances(params, xi);
    const double scale = kTol * std::max(1.0, std::fabs(xi));
    const auto near = [&](const ResonancePoint& a, const ResonancePoint& b) {
      return std::hypot(a.eta1 - b.eta1, a.eta2 - b.eta2) <= scale;
    };
    int extra = 0;
    for (const auto& f : found) {
      bool hit = false;
      for (const auto& e : expect) hit = hit || near(f, e);
      if (!hit) ++extra;
      w.row({xi, f.eta1, f.eta2, f.phi_value, f.grad_norm, hit ? 1.0 : 0.0});
    }
    int missed = 0;
    for (const auto& e : expect) {
      bool hit = false;
      for (const auto& f : found) hit = hit || near(f, e);
      if (!hit) ++missed;
    }
    res.unexpected += extra + missed;
    ++res.checked;
    per_xi.push_back({{"xi", xi}, {"clusters", found.size()}, {"extra", extra}, {"missed", missed}});
  }
  w.flush();
  Json m = manifest_head("resonances", params);
  m["options"] = {{"tolerance", kTol}, {"box_half_width_over_xi", 3.0}, {"box_cells", SearchBox{}.cells}};
  m["result"] = {{"per_xi", per_xi}, {"unexpected", res.unexpected},
                 {"status", res.unexpected == 0 ? "ok" : "verification_failed"}};
  m["outputs"] = {{"resonances.csv", "resonances v1"}};
  write_json(out_dir / "manifest.json", m);
  if (res.unexpected > 0)
    res.verdict = {false, std::to_string(res.unexpected) + " resonance clusters off the expected set"};
  return res;
}

}  // namespace gsqg
