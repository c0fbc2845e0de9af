#include "gsqg/run_config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gsqg/errors.hpp"

namespace gsqg {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ConfigError("config field '" + field + "': " + why);
}

void only_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where.empty() ? "<root>" : where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
  }
}

const json& need(const json& obj, const std::string& where, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(field, "must be finite");
  return d;
}

std::int64_t integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<std::int64_t>();
}

std::string text(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

InitialKind parse_kind(const std::string& s) {
  if (s == "gaussian_bump") return InitialKind::kGaussianBump;
  if (s == "multi_mode") return InitialKind::kMultiMode;
  if (s == "from_file") return InitialKind::kFromFile;
  fail("initial_data.kind", "expected gaussian_bump, multi_mode or from_file, got '" + s + "'");
}

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open initial data file " + path);
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double v = 0.0;
    if (!(ls >> v) || !std::isfinite(v)) throw IoError("bad sample '" + line + "' in " + path);
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::string initial_kind_name(InitialKind kind) {
  switch (kind) {
    case InitialKind::kGaussianBump: return "gaussian_bump";
    case InitialKind::kMultiMode: return "multi_mode";
    case InitialKind::kFromFile: return "from_file";
  }
  return "";
}

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(root, "", {"alpha", "grid", "initial_data", "stepper", "nl_mode", "diagnostics_cadence",
                       "output_dir"});
  RunConfig cfg;
  cfg.alpha = number(need(root, "", "alpha"), "alpha");

  const json& g = need(root, "", "grid");
  only_keys(g, "grid", {"period_l", "n_modes"});
  cfg.grid.period_l = number(need(g, "grid", "period_l"), "grid.period_l");
  const std::int64_t n = integer(need(g, "grid", "n_modes"), "grid.n_modes");
  if (n <= 0) fail("grid.n_modes", "must be positive");
  cfg.grid.n_modes = static_cast<std::size_t>(n);

  const json& id = need(root, "", "initial_data");
  only_keys(id, "initial_data", {"kind", "amplitude", "width", "seed", "path"});
  cfg.initial_data.kind = parse_kind(text(need(id, "initial_data", "kind"), "initial_data.kind"));
  cfg.initial_data.amplitude = number(need(id, "initial_data", "amplitude"), "initial_data.amplitude");
  cfg.initial_data.width = number(need(id, "initial_data", "width"), "initial_data.width");
  if (id.contains("seed")) {
    const std::int64_t seed = integer(id["seed"], "initial_data.seed");
    if (seed < 0) fail("initial_data.seed", "must be >= 0");
    cfg.initial_data.seed = static_cast<std::uint64_t>(seed);
  }
  if (id.contains("path")) cfg.initial_data.path = text(id["path"], "initial_data.path");

  if (root.contains("stepper")) {
    const json& s = root["stepper"];
    only_keys(s, "stepper", {"dt_init", "scheme", "safety", "max_t", "checkpoint_every"});
    if (s.contains("dt_init")) cfg.stepper.dt_init = number(s["dt_init"], "stepper.dt_init");
    if (s.contains("scheme") && text(s["scheme"], "stepper.scheme") != "if_rk4")
      fail("stepper.scheme", "only if_rk4 is available");
    if (s.contains("safety")) cfg.stepper.safety = number(s["safety"], "stepper.safety");
    if (s.contains("max_t")) cfg.stepper.max_t = number(s["max_t"], "stepper.max_t");
    if (s.contains("checkpoint_every")) {
      const std::int64_t c = integer(s["checkpoint_every"], "stepper.checkpoint_every");
      if (c < 0 || c > 1'000'000'000) fail("stepper.checkpoint_every", "must be in [0, 1e9]");
      cfg.stepper.checkpoint_every = static_cast<int>(c);
    }
  }

  cfg.nl_mode = NonlinearMode::parse(text(need(root, "", "nl_mode"), "nl_mode"));
  const std::int64_t cad = integer(need(root, "", "diagnostics_cadence"), "diagnostics_cadence");
  if (cad < 1 || cad > 1'000'000'000) fail("diagnostics_cadence", "must be in [1, 1e9]");
  cfg.diagnostics_cadence = static_cast<int>(cad);
  cfg.output_dir = text(need(root, "", "output_dir"), "output_dir");
  validate(cfg);
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

void validate(const RunConfig& cfg) {
  try {
    make_alpha_params(cfg.alpha);
  } catch (const DomainError& e) {
    fail("alpha", e.what());
  }
  try {
    Grid(cfg.grid.period_l, cfg.grid.n_modes);
  } catch (const DomainError& e) {
    fail("grid", e.what());
  }
  try {
    validate(cfg.stepper);
  } catch (const DomainError& e) {
    fail("stepper", e.what());
  }
  if (!std::isfinite(cfg.initial_data.amplitude)) fail("initial_data.amplitude", "must be finite");
  if (!(cfg.initial_data.width > 0.0)) fail("initial_data.width", "must be > 0");
  if (cfg.initial_data.kind == InitialKind::kFromFile && cfg.initial_data.path.empty())
    fail("initial_data.path", "required for kind from_file");
  if (cfg.initial_data.kind != InitialKind::kFromFile && !cfg.initial_data.path.empty())
    fail("initial_data.path", "only allowed for kind from_file");
  if (cfg.diagnostics_cadence < 1) fail("diagnostics_cadence", "must be >= 1");
  if (cfg.output_dir.empty()) fail("output_dir", "must not be empty");
  NonlinearMode::parse(cfg.nl_mode.name());
}

std::string to_json(const RunConfig& cfg) {
  json id = {{"kind", initial_kind_name(cfg.initial_data.kind)},
             {"amplitude", cfg.initial_data.amplitude},
             {"width", cfg.initial_data.width},
             {"seed", cfg.initial_data.seed}};
  if (cfg.initial_data.kind == InitialKind::kFromFile) id["path"] = cfg.initial_data.path;
  const json root = {
      {"alpha", cfg.alpha},
      {"grid", {{"period_l", cfg.grid.period_l}, {"n_modes", cfg.grid.n_modes}}},
      {"initial_data", id},
      {"stepper",
       {{"dt_init", cfg.stepper.dt_init},
        {"scheme", "if_rk4"},
        {"safety", cfg.stepper.safety},
        {"max_t", cfg.stepper.max_t},
        {"checkpoint_every", cfg.stepper.checkpoint_every}}},
      {"nl_mode", cfg.nl_mode.name()},
      {"diagnostics_cadence", cfg.diagnostics_cadence},
      {"output_dir", cfg.output_dir}};
  return root.dump(2);
}

SpectralField make_initial_data(const InitialData& data, const GridPtr& grid) {
  const std::size_t n = grid->size();
  std::vector<double> s(n, 0.0);
  const auto envelope = [&](double x) {
    const double u = x / data.width;
    return std::exp(-u * u);
  };
  switch (data.kind) {
    case InitialKind::kGaussianBump:
      for (std::size_t j = 0; j < n; ++j) s[j] = data.amplitude * envelope(grid->nodes()[j]);
      break;
    case InitialKind::kMultiMode: {
      std::mt19937_64 rng(data.seed);
      std::array<double, 3> a{}, xi{}, ph{};
      for (int m = 0; m < 3; ++m) {
        a[m] = 0.5 + 0.5 * unit_draw(rng);
        xi[m] = 0.5 + 1.5 * unit_draw(rng);
        ph[m] = 2.0 * std::numbers::pi * unit_draw(rng);
      }
      double peak = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double x = grid->nodes()[j];
        double v = 0.0;
        for (int m = 0; m < 3; ++m) v += a[m] * std::cos(xi[m] * x + ph[m]);
        s[j] = envelope(x) * v;
        peak = std::max(peak, std::fabs(s[j]));
      }
      if (peak > 0.0)
        for (double& v : s) v *= data.amplitude / peak;
      break;
    }
    case InitialKind::kFromFile: {
      const std::vector<double> f = read_samples(data.path);
      if (f.size() != n) {
        std::ostringstream msg;
        msg << data.path << " holds " << f.size() << " samples, the grid has " << n << " nodes";
        throw ConfigError(msg.str());
      }
      for (std::size_t j = 0; j < n; ++j) s[j] = data.amplitude * f[j];
      break;
    }
  }
  SpectralField h = SpectralField::from_samples(grid, s);
  h.enforce_reality();
  return h;
}

}  // namespace gsqg
