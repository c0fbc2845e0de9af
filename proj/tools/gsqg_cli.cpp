#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsqg/gsqg.h"

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kRuntime = 3, kVerification = 4 };

int exit_code(gsqg_status s) {
  switch (s) {
    case GSQG_OK: return kOk;
    case GSQG_ERR_CONFIG:
    case GSQG_ERR_INVALID_ARGUMENT: return kConfig;
    case GSQG_ERR_BLOWUP:
    case GSQG_ERR_REGIME_EXIT:
    case GSQG_ERR_LOCALIZATION: return kRuntime;
    case GSQG_ERR_VERIFICATION: return kVerification;
    default: return kFailure;
  }
}

int report(gsqg_status s, const char* command) {
  if (s != GSQG_OK)
    std::fprintf(stderr, "gsqg %s: %s error: %s\n", command, gsqg_status_name(s), gsqg_last_error());
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gSQG patch interface simulator and verification lab"};
  app.set_version_flag("--version", std::string(gsqg_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::string resume;
  auto* sim = app.add_subcommand("simulate", "Evolve the interface and write diagnostics, phase series and checkpoints");
  sim->add_option("--config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  sim->add_option("--output", output_dir, "Output directory; overrides output_dir in the config");
  sim->add_option("--resume", resume, "Continue from this checkpoint")->check(CLI::ExistingFile);

  gsqg_symbols_options sym;
  gsqg_symbols_defaults(&sym);
  std::string sym_out;
  auto* symbols = app.add_subcommand("symbols", "Tabulate m1 by two integral formulas and c_tilde on a log grid");
  symbols->add_option("--alpha", sym.alpha, "Order alpha in (1, 2)")->required();
  symbols->add_option("--triples", sym.triples, "Random (l1, l2, l3) triples")->capture_default_str();
  symbols->add_option("--seed", sym.seed, "Seed for the triples")->capture_default_str();
  symbols->add_option("--xi-points", sym.xi_points, "Points of the c_tilde grid")->capture_default_str();
  symbols->add_option("--xi-min", sym.xi_min, "Smallest xi")->capture_default_str();
  symbols->add_option("--xi-max", sym.xi_max, "Largest xi")->capture_default_str();
  symbols->add_option("--output", sym_out, "Output directory")->required();

  gsqg_dispersive_options disp;
  gsqg_dispersive_defaults(&disp);
  std::string disp_out;
  auto* dispersive = app.add_subcommand("dispersive", "Linear sup-norm decay of one Littlewood-Paley band");
  dispersive->add_option("--alpha", disp.alpha, "Order alpha in (1, 2)")->required();
  dispersive->add_option("--band", disp.band, "Band index k")->required();
  dispersive->add_option("--t-min", disp.t_min, "First sample time")->capture_default_str();
  dispersive->add_option("--t-max", disp.t_max, "Last sample time")->capture_default_str();
  dispersive->add_option("--samples", disp.samples, "Log-spaced sample times")->capture_default_str();
  dispersive->add_option("--output", disp_out, "Output directory")->required();

  double res_alpha = 1.5;
  std::vector<double> res_xi;
  std::string res_out;
  auto* resonances = app.add_subcommand("resonances", "Search the cubic phase for space-time resonances");
  resonances->add_option("--alpha", res_alpha, "Order alpha in (1, 2)")->required();
  resonances->add_option("--xi", res_xi, "Output frequencies")->required()->delimiter(',');
  resonances->add_option("--output", res_out, "Output directory")->required();

  double const_alpha = 1.5;
  auto* constants = app.add_subcommand("constants", "Print the constants derived from alpha");
  constants->add_option("--alpha", const_alpha, "Order alpha in (1, 2)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  if (sim->parsed()) {
    gsqg_config* cfg = nullptr;
    gsqg_status s = gsqg_config_load(config_path.c_str(), &cfg);
    if (s == GSQG_OK && !output_dir.empty()) s = gsqg_config_set_output_dir(cfg, output_dir.c_str());
    gsqg_simulate_summary summary{};
    if (s == GSQG_OK) s = gsqg_simulate(cfg, resume.c_str(), &summary);
    gsqg_config_destroy(cfg);
    if (s == GSQG_OK)
      std::printf("simulate: t = %.17g after %lld steps, %lld records, energetic band %d\n", summary.final_t,
                  static_cast<long long>(summary.steps), static_cast<long long>(summary.records),
                  summary.energetic_band);
    return report(s, "simulate");
  }
  if (symbols->parsed()) {
    sym.output_dir = sym_out.c_str();
    double worst = 0.0;
    const gsqg_status s = gsqg_symbols(&sym, &worst);
    if (s == GSQG_OK || s == GSQG_ERR_VERIFICATION) std::printf("symbols: max rel_diff %.3e\n", worst);
    return report(s, "symbols");
  }
  if (dispersive->parsed()) {
    disp.output_dir = disp_out.c_str();
    double slope = 0.0;
    double prefactor = 0.0;
    const gsqg_status s = gsqg_dispersive(&disp, &slope, &prefactor);
    if (s == GSQG_OK || s == GSQG_ERR_VERIFICATION)
      std::printf("dispersive: band %d slope %.6f prefactor %.6g\n", disp.band, slope, prefactor);
    return report(s, "dispersive");
  }
  if (resonances->parsed()) {
    int unexpected = 0;
    const gsqg_status s = gsqg_resonances(res_alpha, res_xi.data(), res_xi.size(), res_out.c_str(), &unexpected);
    if (s == GSQG_OK || s == GSQG_ERR_VERIFICATION)
      std::printf("resonances: %zu frequencies, %d unexpected clusters\n", res_xi.size(), unexpected);
    return report(s, "resonances");
  }
  gsqg_params* params = nullptr;
  gsqg_status s = gsqg_params_create(const_alpha, &params);
  if (s == GSQG_OK) {
    gsqg_constants c{};
    double ct = 0.0;
    s = gsqg_params_constants(params, &c);
    if (s == GSQG_OK) s = gsqg_c_tilde(params, 1.0, &ct);
    if (s == GSQG_OK)
      std::printf("alpha %.17g\ngamma %.17g\nbeta %.17g\np0 %.17g\nn0 %d\nn1 %d\nn2 %d\nd1 %.17g\nk_alpha %.17g\n"
                  "c_tilde(1) %.17g\n",
                  c.alpha, c.gamma, c.beta, c.p0, c.n0, c.n1, c.n2, c.d1, c.k_alpha, ct);
  }
  gsqg_params_destroy(params);
  return s == GSQG_ERR_DOMAIN ? kConfig : report(s, "constants");
}
