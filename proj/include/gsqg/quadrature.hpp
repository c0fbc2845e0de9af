#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gsqg::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point Gauss-Legendre rule (n >= 1).
const GaussRule& gauss_legendre(std::size_t n);

/// Correction weights c_0..c_{p-1} added to the unit-spacing trapezoid
/// weights at the first p nodes of a sampled interval so that the rule is
/// exact for polynomials of degree < p (Gregory end correction). The same
/// weights apply mirrored at the other end.
const std::vector<double>& gregory_corrections(std::size_t order);

/// Unit-spacing weights for nodes 0..count-1 of a closed interval, with
/// Gregory corrections of the given order at both ends. Requires
/// count >= 2 * order.
std::vector<double> corrected_trapezoid_weights(std::size_t count,
                                                std::size_t order);

/// Geometric panels [lo_i, hi_i] covering (floor, top], shrinking toward the
/// floor by `ratio`. The last panel ends at `floor` (which may be 0).
struct Panel {
  double lo;
  double hi;
};
std::vector<Panel> graded_panels(double top, double ratio, double floor_value);

/// Integrates f over [a, b] with a composite n-point Gauss rule on `panels`
/// equal subintervals.
template <class F>
double composite_gauss(F&& f, double a, double b, std::size_t panels,
                       std::size_t n) {
  const auto& rule = gauss_legendre(n);
  const double width = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + width * static_cast<double>(p);
    const double mid = lo + 0.5 * width;
    double panel_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      panel_sum += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    sum += 0.5 * width * panel_sum;
  }
  return sum;
}

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> terms);

}  // namespace gsqg::quad
