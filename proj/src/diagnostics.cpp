#include "gsqg/diagnostics.hpp"

#include <cmath>
#include <sstream>

#include "gsqg/csv.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/scattering.hpp"

namespace gsqg {

namespace {

double smooth_step(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

double sample_l2(const std::vector<double>& v, double dx) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc * dx);
}

}  // namespace

double sobolev_norm(const SpectralField& f, double s) {
  if (!(s >= 0.0)) throw DomainError("Sobolev exponent must be >= 0");
  const Grid& grid = f.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double xi = grid.freqs()[i];
    acc += std::pow(1.0 + xi * xi, s) * std::norm(f[i]);
  }
  return std::sqrt(acc / grid.period());
}

double z_norm(const AlphaParams& params, const SpectralField& v_hat) {
  const Grid& grid = v_hat.grid();
  const double low = 0.5 + params.beta;
  const double high = params.n2 * params.alpha + 1.0;
  double z = 0.0;
  for (std::size_t i = 0; i < v_hat.size(); ++i) {
    const double a = std::fabs(grid.freqs()[i]);
    if (a == 0.0) continue;
    z = std::max(z, (std::pow(a, low) + std::pow(a, high)) * std::abs(v_hat[i]));
  }
  return z;
}

double localization_window(double x, double period) {
  const double a = std::fabs(x);
  const double inner = 0.25 * period;
  const double outer = 15.0 / 32.0 * period;
  if (a <= inner) return 1.0;
  if (a >= outer) return 0.0;
  const double s = (a - inner) / (outer - inner);
  const double up = smooth_step(1.0 - s);
  return up / (up + smooth_step(s));
}

SpectralField windowed_x_dx(const SpectralField& v, double* discarded_fraction) {
  const Grid& grid = v.grid();
  const std::vector<double> vx = v.derivative().samples();
  std::vector<double> kept(vx.size());
  std::vector<double> lost(vx.size());
  for (std::size_t j = 0; j < vx.size(); ++j) {
    const double x = grid.nodes()[j];
    const double w = localization_window(x, grid.period());
    kept[j] = w * x * vx[j];
    lost[j] = (1.0 - w) * x * vx[j];
  }
  if (discarded_fraction) {
    const double total = std::hypot(sample_l2(kept, grid.dx()), sample_l2(lost, grid.dx()));
    *discarded_fraction = total > 0.0 ? sample_l2(lost, grid.dx()) / total : 0.0;
  }
  return SpectralField::from_samples(v.grid_ptr(), kept);
}

ScalingNorms scaling_norms(const AlphaParams& params, const SimState& state,
                           const NonlinearityEvaluator& nl) {
  ScalingNorms out;
  const SpectralField xv = windowed_x_dx(state.v_hat, &out.discarded_fraction);
  if (out.discarded_fraction > kMaxWindowDiscard) {
    std::ostringstream msg;
    msg << "profile not localized at t = " << state.t << ": " << out.discarded_fraction
        << " of x v_x lies outside the central half-cell window";
    throw LocalizationError(msg.str());
  }
  out.weighted_profile = xv.l2_norm();
  SpectralField sh = propagate(params, xv, state.t);
  if (state.t != 0.0 && nl.mode().kind != NonlinearMode::Kind::kLinear)
    sh += (params.alpha * state.t) * nl(physical_field(params, state));
  out.s_norm = sobolev_norm(sh, params.n1 * params.alpha);
  return out;
}

std::map<int, double> band_sup_norms(const LPBandSet& bands, const SpectralField& h) {
  std::map<int, double> out;
  for (int k = bands.k_min(); k <= bands.k_max(); ++k)
    out[k] = max_abs(lp_project(bands, h, k).samples());
  return out;
}

double decay_weight(const AlphaParams& params, int k) {
  return std::pow(2.0, 0.5 * k) + std::pow(2.0, params.n2 * params.alpha * k);
}

std::map<int, double> decay_monitor(const AlphaParams& params, const LPBandSet& bands,
                                    const SpectralField& h) {
  std::map<int, double> out = band_sup_norms(bands, h);
  for (auto& [k, v] : out) v *= decay_weight(params, k);
  return out;
}

DiagnosticsRecord compute_record(const AlphaParams& params, const LPBandSet& bands,
                                 const SimState& state, const NonlinearityEvaluator& nl) {
  DiagnosticsRecord r;
  r.t = state.t;
  const SpectralField h = physical_field(params, state);
  r.sobolev_h_n0alpha = sobolev_norm(h, params.n0 * params.alpha);
  const ScalingNorms sn = scaling_norms(params, state, nl);
  r.s_norm_h_n1alpha = sn.s_norm;
  r.weighted_profile_norm = sn.weighted_profile;
  r.z_norm = z_norm(params, state.v_hat);
  r.band_sup = band_sup_norms(bands, h);
  r.linf_hx = max_abs(h.derivative().samples());
  r.l2_h = h.l2_norm();
  r.bootstrap = std::pow(1.0 + state.t, -params.p0) *
                    (r.sobolev_h_n0alpha + r.s_norm_h_n1alpha + r.weighted_profile_norm) +
                r.z_norm;
  return r;
}

std::vector<std::string> record_columns(const LPBandSet& bands) {
  std::vector<std::string> c = {"t", "sobolev_h_n0alpha", "s_norm_h_n1alpha",
                                "weighted_profile_norm", "z_norm"};
  for (int k = bands.k_min(); k <= bands.k_max(); ++k) c.push_back("band_sup_k" + std::to_string(k));
  c.insert(c.end(), {"linf_hx", "l2_h", "bootstrap"});
  return c;
}

std::vector<double> record_row(const DiagnosticsRecord& r, const LPBandSet& bands) {
  std::vector<double> row = {r.t, r.sobolev_h_n0alpha, r.s_norm_h_n1alpha,
                             r.weighted_profile_norm, r.z_norm};
  for (int k = bands.k_min(); k <= bands.k_max(); ++k) {
    const auto it = r.band_sup.find(k);
    row.push_back(it == r.band_sup.end() ? 0.0 : it->second);
  }
  row.insert(row.end(), {r.linf_hx, r.l2_h, r.bootstrap});
  return row;
}

int energetic_band(const LPBandSet& bands, const SpectralField& v_hat) {
  const Grid& grid = v_hat.grid();
  int best = bands.k_min();
  double best_energy = -1.0;
  for (int k = bands.k_min(); k <= bands.k_max(); ++k) {
    double e = 0.0;
    for (std::size_t i = 0; i < v_hat.size(); ++i)
      e += std::norm(bands.band(k, grid.freqs()[i]) * v_hat[i]);
    if (e > best_energy) {
      best_energy = e;
      best = k;
    }
  }
  return best;
}

std::vector<std::size_t> band_plateau_indices(const LPBandSet& bands, int k, const Grid& grid) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < grid.nyquist_index(); ++i)
    if (bands.band(k, grid.freqs()[i]) == 1.0) out.push_back(i);
  return out;
}

PhaseTracker::PhaseTracker(const Grid& grid, const std::vector<std::size_t>& indices)
    : indices_(indices) {
  for (std::size_t i : indices) {
    if (i >= grid.size()) throw RangeError("phase probe index outside the grid");
    Series s;
    s.xi = grid.freqs()[i];
    series_.push_back(std::move(s));
  }
}

void PhaseTracker::record(const SimState& state) {
  for (std::size_t q = 0; q < indices_.size(); ++q) {
    const Complex v = state.v_hat[indices_[q]];
    const Complex vs = v * std::polar(1.0, state.phase_l[indices_[q]]);
    Series& s = series_[q];
    s.t.push_back(state.t);
    s.abs_v.push_back(std::abs(v));
    s.arg_v.push_back(std::arg(v));
    s.arg_v_star.push_back(std::arg(vs));
  }
}

double PhaseTracker::variance_ratio(const Series& s, double t_lo, double t_hi) {
  std::vector<double> a;
  std::vector<double> b;
  const std::vector<double> ua = unwrap_phase(s.arg_v);
  const std::vector<double> ub = unwrap_phase(s.arg_v_star);
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    if (s.t[i] < t_lo || s.t[i] > t_hi) continue;
    a.push_back(ua[i]);
    b.push_back(ub[i]);
  }
  const double va = unwrapped_phase_variance(a);
  const double vb = unwrapped_phase_variance(b);
  if (va == 0.0) return vb == 0.0 ? 0.0 : INFINITY;
  return vb / va;
}

void PhaseTracker::write_csv(const std::string& path) const {
  csv::Writer w(path, "phase", 1, {"t", "xi", "abs_v", "arg_v", "arg_v_star"});
  for (const Series& s : series_) {
    const std::vector<double> ua = unwrap_phase(s.arg_v);
    const std::vector<double> ub = unwrap_phase(s.arg_v_star);
    for (std::size_t i = 0; i < s.t.size(); ++i) w.row({s.t[i], s.xi, s.abs_v[i], ua[i], ub[i]});
  }
  w.flush();
}

}  // namespace gsqg
