#include "gsqg/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gsqg/csv.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/littlewood_paley.hpp"
#include "gsqg/nonlinearity.hpp"

namespace gsqg {

namespace {

constexpr std::size_t kMaxDecayModes = std::size_t{1} << 22;
constexpr double kNodesPerWavelength = 16.0;

// Neumaier compensated sum.
double compensated_sum(std::initializer_list<double> terms) {
  double sum = 0.0;
  double carry = 0.0;
  for (double x : terms) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  return sum + carry;
}

double dispersion_second(const AlphaParams& p, double xi) {
  if (xi == 0.0) return 0.0;
  const double mag = p.gamma * p.alpha * (p.alpha - 1.0) * std::pow(std::fabs(xi), p.alpha - 2.0);
  return xi > 0 ? mag : -mag;
}

struct Residual {
  std::array<double, 3> r{};
  double norm() const { return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]); }
};

// (Phi / (|xi| Lambda'(xi)), d1 Phi / Lambda'(xi), d2 Phi / Lambda'(xi))
Residual residual(const AlphaParams& p, double xi, double e1, double e2) {
  const double scale = dispersion_derivative(p, xi);
  const auto g = phase_phi_gradient(p, xi, e1, e2);
  return {{phase_phi(p, xi, e1, e2) / (std::fabs(xi) * scale), g[0] / scale, g[1] / scale}};
}

double merit(const AlphaParams& p, double xi, double e1, double e2) {
  const Residual res = residual(p, xi, e1, e2);
  return std::fabs(res.r[0]) + std::fabs(res.r[1]) + std::fabs(res.r[2]);
}

// Gauss-Newton on the overdetermined system; returns false on divergence.
bool refine(const AlphaParams& p, double xi, double& e1, double& e2) {
  const double scale = dispersion_derivative(p, xi);
  const double cap = 0.25 * std::fabs(xi);
  for (int it = 0; it < 60; ++it) {
    const Residual res = residual(p, xi, e1, e2);
    const double sigma = xi - e1 - e2;
    const auto g = phase_phi_gradient(p, xi, e1, e2);
    const double a1 = dispersion_second(p, e1);
    const double a2 = dispersion_second(p, e2);
    const double as = dispersion_second(p, sigma);
    const double j[3][2] = {{g[0] / (std::fabs(xi) * scale), g[1] / (std::fabs(xi) * scale)},
                            {(a1 + as) / scale, as / scale},
                            {as / scale, (a2 + as) / scale}};
    double m00 = 0, m01 = 0, m11 = 0, b0 = 0, b1 = 0;
    for (int r = 0; r < 3; ++r) {
      m00 += j[r][0] * j[r][0];
      m01 += j[r][0] * j[r][1];
      m11 += j[r][1] * j[r][1];
      b0 -= j[r][0] * res.r[r];
      b1 -= j[r][1] * res.r[r];
    }
    const double det = m00 * m11 - m01 * m01;
    if (!(std::fabs(det) > 0.0) || !std::isfinite(det)) return false;
    double d0 = (m11 * b0 - m01 * b1) / det;
    double d1 = (m00 * b1 - m01 * b0) / det;
    const double len = std::hypot(d0, d1);
    if (!std::isfinite(len)) return false;
    if (len > cap) {
      d0 *= cap / len;
      d1 *= cap / len;
    }
    e1 += d0;
    e2 += d1;
    if (len < 1e-15 * std::fabs(xi)) break;
  }
  return std::isfinite(e1) && std::isfinite(e2);
}

ResonancePoint make_point(const AlphaParams& p, double xi, double e1, double e2) {
  const auto g = phase_phi_gradient(p, xi, e1, e2);
  return {xi, e1, e2, phase_phi(p, xi, e1, e2), std::hypot(g[0], g[1])};
}

std::vector<double> axis(const SearchBox& box) {
  if (box.cells < 2 || !(box.half_width > 0.0))
    throw DomainError("search box needs half_width > 0 and at least 2 cells");
  std::vector<double> a(static_cast<std::size_t>(box.cells) + 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = -box.half_width + 2.0 * box.half_width * static_cast<double>(i) / box.cells;
  return a;
}

void require_nonzero(double xi) {
  if (xi == 0.0 || !std::isfinite(xi)) throw DomainError("xi must be finite and nonzero");
}

}  // namespace

double phase_phi(const AlphaParams& params, double xi, double eta1, double eta2) {
  return compensated_sum({-dispersion(params, xi), dispersion(params, eta1),
                          dispersion(params, eta2), dispersion(params, xi - eta1 - eta2)});
}

std::array<double, 2> phase_phi_gradient(const AlphaParams& params, double xi, double eta1,
                                         double eta2) {
  const double ds = dispersion_derivative(params, xi - eta1 - eta2);
  return {dispersion_derivative(params, eta1) - ds, dispersion_derivative(params, eta2) - ds};
}

std::vector<ResonancePoint> expected_resonances(const AlphaParams& params, double xi) {
  return {make_point(params, xi, xi, xi), make_point(params, xi, xi, -xi),
          make_point(params, xi, -xi, xi)};
}

std::vector<ResonancePoint> find_resonances(const AlphaParams& params, double xi,
                                            const SearchBox& box, double tol) {
  require_nonzero(xi);
  const std::vector<double> a = axis(box);
  const std::size_t n = a.size();
  std::vector<double> f(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f[i * n + j] = merit(params, xi, a[i], a[j]);

  std::vector<ResonancePoint> found;
  const double cluster = tol * std::max(1.0, std::fabs(xi));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    for (std::size_t j = 1; j + 1 < n; ++j) {
      const double v = f[i * n + j];
      bool is_min = std::isfinite(v);
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1; ++dj)
          if ((di || dj) && f[(i + di) * n + (j + dj)] < v) {
            is_min = false;
            break;
          }
      if (!is_min) continue;
      double e1 = a[i];
      double e2 = a[j];
      if (!refine(params, xi, e1, e2)) continue;
      if (residual(params, xi, e1, e2).norm() > 1e-8) continue;
      const ResonancePoint pt = make_point(params, xi, e1, e2);
      const bool dup = std::any_of(found.begin(), found.end(), [&](const ResonancePoint& q) {
        return std::hypot(q.eta1 - e1, q.eta2 - e2) < cluster;
      });
      if (!dup) found.push_back(pt);
    }
  }
  std::sort(found.begin(), found.end(), [](const ResonancePoint& l, const ResonancePoint& r) {
    return l.eta1 != r.eta1 ? l.eta1 > r.eta1 : l.eta2 > r.eta2;
  });
  return found;
}

double resonance_gap(const AlphaParams& params, double xi, const SearchBox& box,
                     double radius) {
  require_nonzero(xi);
  const std::vector<double> a = axis(box);
  const auto centers = expected_resonances(params, xi);
  double gap = INFINITY;
  for (double e1 : a) {
    for (double e2 : a) {
      bool near = false;
      for (const auto& c : centers)
        if (std::hypot(e1 - c.eta1, e2 - c.eta2) <= radius * std::fabs(xi)) near = true;
      if (!near) gap = std::min(gap, merit(params, xi, e1, e2));
    }
  }
  return gap;
}

double c_tilde(const AlphaParams& params, const M1Evaluator& m1, double xi) {
  require_nonzero(xi);
  const double sum = m1(xi, xi, -xi) + m1(xi, -xi, xi) + m1(-xi, xi, xi);
  return -params.k_alpha * std::pow(std::fabs(xi), 2.0 - params.alpha) * sum;
}

double c_tilde(const AlphaParams& params, double xi) {
  return c_tilde(
      params,
      [&params](double l1, double l2, double l3) { return m1_closed_form(params, {l1, l2, l3}); },
      xi);
}

double resonant_coefficient(const AlphaParams& params, double xi) {
  if (xi == 0.0) return 0.0;
  return c_tilde(params, xi) / 3.0;
}

CorrectedProfile corrected_profile(const SpectralField& v_hat, std::span<const double> phase_l,
                                   double t) {
  if (phase_l.size() != v_hat.size())
    throw DomainError("phase_l and v_hat differ in length");
  CorrectedProfile out;
  out.t = t;
  out.v_star_hat.resize(v_hat.size());
  for (std::size_t i = 0; i < v_hat.size(); ++i)
    out.v_star_hat[i] = v_hat[i] * std::polar(1.0, phase_l[i]);
  return out;
}

std::vector<double> unwrap_phase(std::span<const double> phase) {
  std::vector<double> out(phase.begin(), phase.end());
  double shift = 0.0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double jump = phase[i] - phase[i - 1];
    shift -= 2.0 * std::numbers::pi * std::round(jump / (2.0 * std::numbers::pi));
    out[i] = phase[i] + shift;
  }
  return out;
}

double unwrapped_phase_variance(std::span<const double> phase) {
  if (phase.empty()) return 0.0;
  const std::vector<double> u = unwrap_phase(phase);
  double mean = 0.0;
  for (double x : u) mean += x;
  mean /= static_cast<double>(u.size());
  double var = 0.0;
  for (double x : u) var += (x - mean) * (x - mean);
  return var / static_cast<double>(u.size());
}

double LogLogFit::prefactor() const { return std::exp(intercept); }

LogLogFit fit_log_log(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("log-log fit needs >= 2 pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  LogLogFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

DispersiveResult dispersive_decay_experiment(const AlphaParams& params, int k,
                                             std::span<const double> t_list) {
  if (t_list.empty()) throw DomainError("t_list is empty");
  double t_max = 0.0;
  for (double t : t_list) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("t_list entries must be positive");
    t_max = std::max(t_max, t);
  }
  const double s = std::ldexp(1.0, k);
  const double lo = 0.625 * s;
  const double hi = 1.6 * s;
  const double spread = dispersion_derivative(params, hi) - dispersion_derivative(params, lo);
  const double width = 64.0 / s;
  const double period = 1.25 * (spread * t_max + width);
  const double needed = period * kNodesPerWavelength * hi / (2.0 * std::numbers::pi);
  std::size_t n = Grid::kMinModes;
  while (static_cast<double>(n) < needed) {
    n *= 2;
    if (n > kMaxDecayModes) {
      std::ostringstream msg;
      msg << "band " << k << " up to t = " << t_max << " needs more than 2^22 nodes";
      throw ResolutionError(msg.str());
    }
  }
  const GridPtr grid = make_grid(period, n);

  std::vector<double> f(n);
  double l1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = grid->nodes()[j];
    const double z = 0.5 * s * x;
    f[j] = std::exp(-0.5 * z * z) * std::cos(s * x);
    l1 += std::fabs(f[j]) * grid->dx();
  }
  const SpectralField pf =
      lp_project(LPBandSet(k, k), SpectralField::from_samples(grid, f), k);

  auto sup = [](const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < v.size(); ++j)
      if (std::fabs(v[j]) > std::fabs(v[best])) best = j;
    const std::size_t m = v.size();
    const double y0 = std::fabs(v[best]);
    const double ym = std::fabs(v[(best + m - 1) % m]);
    const double yp = std::fabs(v[(best + 1) % m]);
    const double curv = yp - 2.0 * y0 + ym;
    return curv < 0.0 ? y0 - (yp - ym) * (yp - ym) / (8.0 * curv) : y0;
  };

  DispersiveResult out;
  out.band = k;
  out.period = period;
  out.n_modes = n;
  out.l1_norm = l1;
  out.sup_at_zero = sup(pf.samples());
  std::vector<double> scaled;
  double log_sum = 0.0;
  for (double t : t_list) {
    const double value = sup(propagate(params, pf, t).samples());
    out.t.push_back(t);
    out.sup_norm.push_back(value);
    scaled.push_back(value / l1);
    log_sum += std::log(value * std::sqrt(t) / l1);
  }
  out.prefactor = std::exp(log_sum / static_cast<double>(t_list.size()));
  if (out.t.size() >= 2) out.fit = fit_log_log(out.t, scaled);
  return out;
}

void write_decay_csv(const std::string& path, std::span<const DispersiveResult> runs) {
  csv::Writer w(path, "decay", 1, {"t", "band", "sup_norm"});
  for (const auto& r : runs)
    for (std::size_t i = 0; i < r.t.size(); ++i)
      w.row({r.t[i], static_cast<double>(r.band), r.sup_norm[i]});
  w.flush();
}

}  // namespace gsqg
