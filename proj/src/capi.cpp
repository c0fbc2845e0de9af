#include "gsqg/gsqg.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "gsqg/commands.hpp"
#include "gsqg/errors.hpp"

struct gsqg_params {
  gsqg::AlphaParams p;
};

struct gsqg_config {
  gsqg::RunConfig cfg;
};

namespace {

thread_local std::string last_error;

template <class F>
gsqg_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return GSQG_OK;
  } catch (const gsqg::Error& e) {
    last_error = e.what();
    return static_cast<gsqg_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GSQG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GSQG_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return GSQG_ERR_INTERNAL;
  }
}

void require(const gsqg::Verdict& v) {
  if (!v.passed) throw gsqg::VerificationError(v.message);
}

gsqg_status invalid(const char* what) {
  last_error = what;
  return GSQG_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* gsqg_version(void) { return "1.0.0"; }

const char* gsqg_status_name(gsqg_status s) {
  switch (s) {
    case GSQG_OK: return "ok";
    case GSQG_ERR_DOMAIN: return "domain";
    case GSQG_ERR_RANGE: return "range";
    case GSQG_ERR_QUADRATURE: return "quadrature_accuracy";
    case GSQG_ERR_CONSISTENCY: return "consistency";
    case GSQG_ERR_CONFIG: return "configuration";
    case GSQG_ERR_BLOWUP: return "blowup";
    case GSQG_ERR_REGIME_EXIT: return "regime_exit";
    case GSQG_ERR_LOCALIZATION: return "localization";
    case GSQG_ERR_RESOLUTION: return "resolution";
    case GSQG_ERR_IO: return "io";
    case GSQG_ERR_VERIFICATION: return "verification";
    case GSQG_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case GSQG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* gsqg_last_error(void) { return last_error.c_str(); }

gsqg_status gsqg_params_create(double alpha, gsqg_params** out) {
  if (!out) return invalid("out is NULL");
  *out = nullptr;
  return guarded([&] { *out = new gsqg_params{gsqg::make_alpha_params(alpha)}; });
}

void gsqg_params_destroy(gsqg_params* params) { delete params; }

gsqg_status gsqg_params_constants(const gsqg_params* params, gsqg_constants* out) {
  if (!params || !out) return invalid("NULL argument");
  const gsqg::AlphaParams& p = params->p;
  *out = {p.alpha, p.gamma, p.beta, p.p0, p.n0, p.n1, p.n2, p.d1, p.k_alpha};
  last_error.clear();
  return GSQG_OK;
}

gsqg_status gsqg_c_tilde(const gsqg_params* params, double xi, double* out) {
  if (!params || !out) return invalid("NULL argument");
  return guarded([&] { *out = gsqg::c_tilde(params->p, xi); });
}

gsqg_status gsqg_config_load(const char* path, gsqg_config** out) {
  if (!path || !out) return invalid("NULL argument");
  *out = nullptr;
  return guarded([&] { *out = new gsqg_config{gsqg::load_run_config(path)}; });
}

gsqg_status gsqg_config_parse(const char* json_text, gsqg_config** out) {
  if (!json_text || !out) return invalid("NULL argument");
  *out = nullptr;
  return guarded([&] { *out = new gsqg_config{gsqg::parse_run_config(json_text)}; });
}

void gsqg_config_destroy(gsqg_config* config) { delete config; }

gsqg_status gsqg_config_set_output_dir(gsqg_config* config, const char* dir) {
  if (!config || !dir) return invalid("NULL argument");
  return guarded([&] {
    gsqg::RunConfig c = config->cfg;
    c.output_dir = dir;
    gsqg::validate(c);
    config->cfg = std::move(c);
  });
}

gsqg_status gsqg_config_to_json(const gsqg_config* config, char* buf, size_t size, size_t* needed) {
  if (!config) return invalid("config is NULL");
  return guarded([&] {
    const std::string s = gsqg::to_json(config->cfg);
    if (needed) *needed = s.size() + 1;
    if (!buf) return;
    if (size < s.size() + 1) throw gsqg::RangeError("buffer too small for config JSON");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

gsqg_status gsqg_simulate(const gsqg_config* config, const char* resume, gsqg_simulate_summary* summary) {
  if (!config) return invalid("config is NULL");
  return guarded([&] {
    const gsqg::SimulateResult r = gsqg::simulate(config->cfg, resume ? resume : "");
    if (summary)
      *summary = {r.final_t, r.steps, static_cast<int64_t>(r.records.size()), r.energetic_band};
  });
}

void gsqg_symbols_defaults(gsqg_symbols_options* opt) {
  if (!opt) return;
  const gsqg::SymbolsOptions d;
  *opt = {d.alpha, d.triples, d.seed, d.xi_points, d.xi_min, d.xi_max, nullptr};
}

gsqg_status gsqg_symbols(const gsqg_symbols_options* opt, double* max_rel_diff) {
  if (!opt || !opt->output_dir) return invalid("options or output_dir is NULL");
  gsqg::SymbolsOptions o;
  o.alpha = opt->alpha;
  o.triples = opt->triples;
  o.seed = opt->seed;
  o.xi_points = opt->xi_points;
  o.xi_min = opt->xi_min;
  o.xi_max = opt->xi_max;
  o.output_dir = opt->output_dir;
  return guarded([&] {
    const gsqg::SymbolsResult r = gsqg::run_symbols(o);
    if (max_rel_diff) *max_rel_diff = r.max_rel_diff;
    require(r.verdict);
  });
}

void gsqg_dispersive_defaults(gsqg_dispersive_options* opt) {
  if (!opt) return;
  const gsqg::DispersiveOptions d;
  *opt = {d.alpha, d.band, d.t_min, d.t_max, d.samples, nullptr};
}

gsqg_status gsqg_dispersive(const gsqg_dispersive_options* opt, double* slope, double* prefactor) {
  if (!opt || !opt->output_dir) return invalid("options or output_dir is NULL");
  gsqg::DispersiveOptions o;
  o.alpha = opt->alpha;
  o.band = opt->band;
  o.t_min = opt->t_min;
  o.t_max = opt->t_max;
  o.samples = opt->samples;
  o.output_dir = opt->output_dir;
  return guarded([&] {
    const gsqg::DispersiveRun r = gsqg::run_dispersive(o);
    if (slope) *slope = r.result.fit.slope;
    if (prefactor) *prefactor = r.result.prefactor;
    require(r.verdict);
  });
}

gsqg_status gsqg_resonances(double alpha, const double* xi, size_t n_xi, const char* output_dir,
                            int* unexpected) {
  if ((!xi && n_xi > 0) || !output_dir) return invalid("NULL argument");
  gsqg::ResonancesOptions o;
  o.alpha = alpha;
  o.xi.assign(xi, xi + n_xi);
  o.output_dir = output_dir;
  if (unexpected) *unexpected = 0;
  return guarded([&] {
    const gsqg::ResonancesResult r = gsqg::run_resonances(o);
    if (unexpected) *unexpected = r.unexpected;
    require(r.verdict);
  });
}

}  // extern "C"
