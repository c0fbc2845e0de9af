#include "gsqg/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gsqg/errors.hpp"
#include "gsqg/fft.hpp"
#include "gsqg/quadrature.hpp"

namespace gsqg {

namespace {

constexpr double kQuadratureBudget = 1e-7;
constexpr int kMaxSeriesOrder = 6;
constexpr int kImageCells = 3;

struct Node {
  double y;
  double w;
};

int inner_cells(const QuadratureSpec& quad, const Grid& grid) {
  return std::max(1, static_cast<int>(std::lround(quad.inner_cut / grid.dx())));
}

// Positive Gauss nodes covering (0, top]: unit panels down to dx, geometric
// panels below.
std::vector<Node> inner_nodes(double alpha, double dx, double top, int n) {
  const auto& rule = quad::gauss_legendre(static_cast<std::size_t>(n));
  std::vector<quad::Panel> panels;
  const int cells = static_cast<int>(std::ceil(top / dx - 1e-9));
  for (int m = 1; m < cells; ++m) panels.push_back({m * dx, (m + 1) * dx});
  // paired integrand is O(y^(2 - alpha)); drop [0, floor] below 1e-14 relative
  const double floor_value = top * std::pow(1e-14, 1.0 / (3.0 - alpha));
  for (const auto& p : quad::graded_panels(dx, 0.25, floor_value)) panels.push_back(p);
  std::vector<Node> nodes;
  nodes.reserve(panels.size() * rule.nodes.size());
  for (const auto& p : panels) {
    const double mid = 0.5 * (p.lo + p.hi);
    const double half = 0.5 * (p.hi - p.lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      nodes.push_back({mid + half * rule.nodes[i], half * rule.weights[i]});
  }
  return nodes;
}

// Unit trapezoid weights with Gregory corrections at the far end only; the
// integrand vanishes to roundoff at the near end.
std::vector<double> far_end_weights(std::size_t count, int order) {
  auto w = quad::corrected_trapezoid_weights(count, static_cast<std::size_t>(order));
  for (std::size_t i = 0; i < static_cast<std::size_t>(order); ++i) w[i] = 1.0;
  return w;
}

// Smooth split of the y-axis: window(y) ~ 1 for |y| << cut, ~ 0 for |y| >> cut.
struct Window {
  double cut;
  double width;
  double operator()(double y) const { return 0.5 * std::erfc((std::fabs(y) - cut) / width); }
  double reach() const { return cut + 6.0 * width; }
  double start() const { return cut - 6.0 * width; }
};

double max_slope(const SpectralField& h) {
  return max_abs(h.derivative().samples());
}

void require_graph_regime(const SpectralField& h) {
  const double slope = max_slope(h);
  if (!(slope < 1.0)) {
    std::ostringstream msg;
    msg << "max |h_x| = " << slope << " is not below 1";
    throw RegimeError(msg.str(), slope);
  }
}

double top_third_fraction(const SpectralField& f) {
  double total = 0.0;
  double removed = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double e = std::norm(f[i]);
    total += e;
    if (!f.grid().survives_dealiasing(i)) removed += e;
  }
  return total > 0.0 ? std::sqrt(removed / total) : 0.0;
}

SpectralField finish(SpectralField f, DealiasMode mode, EvalReport* report) {
  if (report) report->dealias_residual = top_third_fraction(f);
  if (mode == DealiasMode::kTwoThirds) f.dealias();
  return f;
}

// Direct quadrature of int k(E, D, y) dy at every node, where
// E = h_x(x) - h_x(x - y) and D = h(x) - h(x - y).
template <class Kernel>
SpectralField direct_route(const AlphaParams& params, const QuadratureSpec& quad,
                           const SpectralField& h, Kernel kernel, EvalReport* report) {
  const Grid& grid = h.grid();
  validate(quad, grid);
  require_graph_regime(h);
  const std::size_t n = grid.size();
  const double dx = grid.dx();

  const auto hs = h.samples();
  const auto hxs = h.derivative().samples();

  // packed coefficients of h + i h_x, scaled for coeffs_to_samples
  std::vector<Complex> packed(n);
  const double inv_l = 1.0 / grid.period();
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = (grid.wavenumber(i) % 2 == 0) ? inv_l : -inv_l;
    packed[i] = h[i] * (1.0 - grid.freqs()[i]) * sign;
  }
  packed[grid.nyquist_index()] = 0.0;

  const double cut = inner_cells(quad, grid) * dx;
  const Window fine_window{cut, cut / 8.0};
  const Window coarse_window{cut, 0.75 * cut / 8.0};
  const bool check = quad.error_check;

  std::vector<Complex> buf(n);
  auto inner_sum = [&](int points, const Window& window) {
    std::vector<double> acc(n, 0.0);
    for (const auto& node : inner_nodes(params.alpha, dx, window.reach(), points)) {
      const double w = node.w * window(node.y);
      for (double sgn : {1.0, -1.0}) {
        const double ys = sgn * node.y;
        for (std::size_t i = 0; i < n; ++i) buf[i] = packed[i] * std::polar(1.0, -grid.freqs()[i] * ys);
        fft::backward(buf, buf);
        for (std::size_t j = 0; j < n; ++j)
          acc[j] += w * kernel(hxs[j] - buf[j].imag(), hs[j] - buf[j].real(), ys);
      }
    }
    return acc;
  };
  std::vector<double> fine = inner_sum(quad.n_inner, fine_window);
  std::vector<double> coarse =
      check ? inner_sum(quad.n_inner - 4, coarse_window) : std::vector<double>{};

  // outer range on grid points m = first .. m_max, weighted by 1 - window
  const long first = std::max(1L, static_cast<long>(std::floor(fine_window.start() / dx)));
  const long half = static_cast<long>(n / 2);
  const long m_max = quad.tail_rule == TailRule::kTruncateAtHalfPeriod
                         ? half
                         : half + kImageCells * static_cast<long>(n);
  const std::size_t count = static_cast<std::size_t>(m_max - first + 1);
  const auto w_fine = far_end_weights(count, quad.n_outer);
  const auto w_coarse = check ? far_end_weights(count, quad.n_outer - 2) : std::vector<double>{};
  const long nl = static_cast<long>(n);
  for (std::size_t c = 0; c < count; ++c) {
    const long m = first + static_cast<long>(c);
    const double y = static_cast<double>(m) * dx;
    const double wf = dx * w_fine[c] * (1.0 - fine_window(y));
    const double wc = check ? dx * w_coarse[c] * (1.0 - coarse_window(y)) : 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const long jl = static_cast<long>(j);
      const std::size_t back = static_cast<std::size_t>(((jl - m) % nl + nl) % nl);
      const std::size_t fwd = static_cast<std::size_t>((jl + m) % nl);
      const double v = kernel(hxs[j] - hxs[back], hs[j] - hs[back], y) +
                       kernel(hxs[j] - hxs[fwd], hs[j] - hs[fwd], -y);
      fine[j] += wf * v;
      if (check) coarse[j] += wc * v;
    }
  }

  if (check) {
    const double scale = max_abs(fine);
    double worst = 0.0;
    std::size_t worst_j = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double e = std::fabs(fine[j] - coarse[j]);
      if (e > worst) {
        worst = e;
        worst_j = j;
      }
    }
    const double rel = scale > 0.0 ? worst / scale : 0.0;
    if (report) {
      report->error_estimate = rel;
      report->worst_x = grid.nodes()[worst_j];
    }
    if (rel > kQuadratureBudget) {
      std::ostringstream msg;
      msg << "quadrature error estimate " << rel << " exceeds " << kQuadratureBudget
          << " at x = " << grid.nodes()[worst_j];
      throw QuadratureError(msg.str(), grid.nodes()[worst_j], rel);
    }
  }
  return finish(SpectralField::from_samples(h.grid_ptr(), fine), quad.dealias, report);
}

// Signed wavenumber of index i in an FFT-ordered array of length m.
long signed_wavenumber(std::size_t i, std::size_t m) {
  return i < m / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(m);
}

SpectralField spectral_kernel_route(const AlphaParams& params, const QuadratureSpec& quad,
                                    const SpectralField& h, int order, EvalReport* report) {
  const Grid& grid = h.grid();
  require_graph_regime(h);
  const std::size_t n = grid.size();
  const bool pad = quad.dealias == DealiasMode::kTwoThirds && order <= 2;
  const std::size_t m = pad ? n * static_cast<std::size_t>(order + 1) : n;
  const double period = grid.period();
  const double dxi = 2.0 * std::numbers::pi / period;

  // samples of h + i h_x on the (padded) grid x_j = j L / m - L / 2
  std::vector<Complex> buf(m, Complex{});
  for (std::size_t i = 0; i < n; ++i) {
    if (i == grid.nyquist_index()) continue;
    const long k = grid.wavenumber(i);
    const std::size_t dst = k >= 0 ? static_cast<std::size_t>(k) : m - static_cast<std::size_t>(-k);
    const double sign = (k % 2 == 0) ? 1.0 / period : -1.0 / period;
    buf[dst] = h[i] * (1.0 - grid.freqs()[i]) * sign;
  }
  fft::backward(buf, buf);
  std::vector<double> hv(m);
  std::vector<double> hxv(m);
  for (std::size_t j = 0; j < m; ++j) {
    hv[j] = buf[j].real();
    hxv[j] = buf[j].imag();
  }

  const double s = params.alpha + 2.0 * order;
  std::vector<double> kernel(m);
  for (std::size_t i = 0; i < m; ++i) {
    const long k = signed_wavenumber(i, m);
    kernel[i] = (i == m / 2) ? 0.0
                             : power_kernel_multiplier(s, dxi * static_cast<double>(k)) /
                                   static_cast<double>(m);
  }

  const int two_n = 2 * order;
  std::vector<std::vector<double>> powers(static_cast<std::size_t>(two_n + 1), std::vector<double>(m, 1.0));
  for (int p = 1; p <= two_n; ++p)
    for (std::size_t j = 0; j < m; ++j) powers[p][j] = powers[p - 1][j] * hv[j];

  std::vector<double> acc(m, 0.0);
  double binom = 1.0;
  for (int jj = 0; jj <= two_n; ++jj) {
    if (jj > 0) binom = binom * static_cast<double>(two_n - jj + 1) / static_cast<double>(jj);
    for (std::size_t j = 0; j < m; ++j) buf[j] = Complex(powers[jj][j], hxv[j] * powers[jj][j]);
    fft::forward(buf, buf);
    for (std::size_t i = 0; i < m; ++i) buf[i] *= kernel[i];
    fft::backward(buf, buf);
    const double c = (jj % 2 == 0) ? binom : -binom;
    for (std::size_t j = 0; j < m; ++j)
      acc[j] += c * powers[two_n - jj][j] * (hxv[j] * buf[j].real() - buf[j].imag());
  }

  const double dn = binomial_coefficient(params.alpha, order);
  for (std::size_t j = 0; j < m; ++j) buf[j] = dn * acc[j];
  fft::forward(buf, buf);
  std::vector<Complex> out(n, Complex{});
  const double scale = period / static_cast<double>(m);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == grid.nyquist_index()) continue;
    const long k = grid.wavenumber(i);
    const std::size_t src = k >= 0 ? static_cast<std::size_t>(k) : m - static_cast<std::size_t>(-k);
    out[i] = buf[src] * ((k % 2 == 0) ? scale : -scale);
  }
  return finish(SpectralField(h.grid_ptr(), std::move(out)), quad.dealias, report);
}

void check_order(int order) {
  if (order < 1 || order > kMaxSeriesOrder)
    throw DomainError("series order must lie in 1..6, got " + std::to_string(order));
}

}  // namespace

QuadratureSpec default_quadrature(const Grid& grid) {
  QuadratureSpec q;
  q.inner_cut = 16.0 * grid.dx();
  return q;
}

void validate(const QuadratureSpec& quad, const Grid& grid) {
  if (!(quad.inner_cut >= 8.0 * grid.dx()) || !(quad.inner_cut < grid.dx() * 1e4))
    throw DomainError("inner_cut must lie in [8 dx, 1e4 dx)");
  if (quad.inner_cut > 0.25 * grid.period())
    throw DomainError("inner_cut must not exceed a quarter period");
  if (quad.n_inner < 8 || quad.n_outer < 8)
    throw DomainError("quadrature node counts must be at least 8");
  if (quad.n_outer > 20) throw DomainError("n_outer (Gregory order) must not exceed 20");
  const long outer = static_cast<long>(grid.size() / 2) - inner_cells(quad, grid) / 4;
  if (outer < 2L * quad.n_outer) throw DomainError("outer range too short for the Gregory order");
}

double power_kernel_multiplier(double s, double xi) {
  if (xi == 0.0) return 0.0;
  return 2.0 * std::tgamma(1.0 - s) * std::sin(0.5 * std::numbers::pi * s) *
         std::pow(std::fabs(xi), s - 1.0);
}

SpectralField eval_full(const AlphaParams& params, const QuadratureSpec& quad,
                        const SpectralField& h, EvalReport* report) {
  const double alpha = params.alpha;
  auto kernel = [alpha](double e, double d, double y) {
    const double r = d / y;
    return e * std::pow(std::fabs(y), -alpha) * std::expm1(-0.5 * alpha * std::log1p(r * r));
  };
  return direct_route(params, quad, h, kernel, report);
}

SpectralField eval_order_n(const AlphaParams& params, const QuadratureSpec& quad,
                           const SpectralField& h, int n, SeriesRoute route,
                           EvalReport* report) {
  check_order(n);
  if (route == SeriesRoute::kSpectralKernel) return spectral_kernel_route(params, quad, h, n, report);
  const double alpha = params.alpha;
  const double dn = binomial_coefficient(alpha, n);
  auto kernel = [alpha, dn, n](double e, double d, double y) {
    const double r = d / y;
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= r * r;
    return dn * e * std::pow(std::fabs(y), -alpha) * p;
  };
  return direct_route(params, quad, h, kernel, report);
}

SpectralField eval_series(const AlphaParams& params, const QuadratureSpec& quad,
                          const SpectralField& h, int n_max) {
  check_order(n_max);
  SpectralField sum(h.grid_ptr());
  for (int n = 1; n <= n_max; ++n) sum += eval_order_n(params, quad, h, n);
  return sum;
}

}  // namespace gsqg
