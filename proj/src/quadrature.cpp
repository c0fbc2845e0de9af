#include "gsqg/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace gsqg::quad {

namespace {

GaussRule compute_gauss(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    long double x = std::cos(std::numbers::pi_v<long double> *
                             (static_cast<long double>(i) + 0.75L) /
                             (static_cast<long double>(n) + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const long double pk =
            ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    long double p0 = 1.0L;
    long double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const long double pk = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0L);
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.nodes[i] = static_cast<double>(-x);
    rule.nodes[n - 1 - i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(w);
    rule.weights[n - 1 - i] = static_cast<double>(w);
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// B_{2k} for k = 1..10.
constexpr long double kBernoulliEven[] = {
    1.0L / 6.0L,        -1.0L / 30.0L,         1.0L / 42.0L,
    -1.0L / 30.0L,      5.0L / 66.0L,          -691.0L / 2730.0L,
    7.0L / 6.0L,        -3617.0L / 510.0L,     43867.0L / 798.0L,
    -174611.0L / 330.0L};

std::vector<double> compute_gregory(std::size_t p) {
  // Solve sum_j c_j j^q = B_{q+1}/(q+1) for odd q, 0 for even q, q < p.
  std::vector<std::vector<long double>> a(p, std::vector<long double>(p + 1));
  for (std::size_t q = 0; q < p; ++q) {
    for (std::size_t j = 0; j < p; ++j)
      a[q][j] = std::pow(static_cast<long double>(j), static_cast<long double>(q));
    if (q == 0) a[q][0] = 1.0L;
    a[q][p] = (q % 2 == 1) ? kBernoulliEven[(q - 1) / 2] / (q + 1.0L) : 0.0L;
  }
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < p; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == col) continue;
      const long double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= p; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> c(p);
  for (std::size_t j = 0; j < p; ++j) c[j] = static_cast<double>(a[j][p] / a[j][j]);
  return c;
}

std::mutex g_cache_mutex;

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  static std::map<std::size_t, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(g_cache_mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(compute_gauss(n));
  return *slot;
}

const std::vector<double>& gregory_corrections(std::size_t order) {
  if (order == 0 || order > 20)
    throw std::invalid_argument("gregory_corrections: order must be in [1, 20]");
  static std::map<std::size_t, std::unique_ptr<std::vector<double>>> cache;
  std::lock_guard lock(g_cache_mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<std::vector<double>>(compute_gregory(order));
  return *slot;
}

std::vector<double> corrected_trapezoid_weights(std::size_t count,
                                                std::size_t order) {
  if (count < 2 * order)
    throw std::invalid_argument("corrected_trapezoid_weights: too few nodes");
  std::vector<double> w(count, 1.0);
  w.front() = 0.5;
  w.back() = 0.5;
  const auto& c = gregory_corrections(order);
  for (std::size_t j = 0; j < order; ++j) {
    w[j] += c[j];
    w[count - 1 - j] += c[j];
  }
  return w;
}

std::vector<Panel> graded_panels(double top, double ratio, double floor_value) {
  std::vector<Panel> panels;
  double hi = top;
  while (hi * ratio > floor_value && panels.size() < 200) {
    panels.push_back({hi * ratio, hi});
    hi *= ratio;
  }
  panels.push_back({floor_value, hi});
  return panels;
}

double compensated_sum(std::span<const double> terms) {
  double sum = 0.0;
  double comp = 0.0;
  for (double t : terms) {
    const double s = sum + t;
    if (std::fabs(sum) >= std::fabs(t))
      comp += (sum - s) + t;
    else
      comp += (t - s) + sum;
    sum = s;
  }
  return sum + comp;
}

}  // namespace gsqg::quad
