#include "gsqg/alpha_params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gsqg/errors.hpp"
#include "gsqg/quadrature.hpp"

namespace gsqg {

AlphaParams make_alpha_params(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " is outside the admissible interval (1, 2)";
    throw DomainError(msg.str());
  }
  AlphaParams p;
  p.alpha = alpha;
  p.gamma = 2.0 * std::tgamma(2.0 - alpha) *
            std::sin(alpha * std::numbers::pi / 2.0) / (alpha - 1.0);
  p.beta = (2.0 - alpha) / 10.0;
  p.p0 = 1e-6 * p.beta;
  p.d1 = -alpha / 2.0;
  p.k_alpha = 2.0 * std::numbers::pi / (p.gamma * alpha * (alpha - 1.0));
  return p;
}

double binomial_coefficient(double alpha, int n) {
  double d = 1.0;
  for (int j = 0; j < n; ++j) d *= (-alpha / 2.0 - j) / (j + 1.0);
  return d;
}

double gamma_by_quadrature(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw DomainError("gamma_by_quadrature: alpha must lie in (1, 2)");
  constexpr double kCut = 2.0 * std::numbers::pi * 40.0;
  // 1 - cos y = 2 sin^2(y/2) avoids cancellation near the origin.
  auto integrand = [alpha](double y) {
    const double s = std::sin(0.5 * y);
    return 2.0 * s * s * std::pow(y, -alpha);
  };
  double near = 0.0;
  for (const auto& panel : quad::graded_panels(1.0, 0.25, 1e-14)) {
    near += quad::composite_gauss(integrand, panel.lo, panel.hi, 1, 16);
  }
  const double body = quad::composite_gauss(integrand, 1.0, kCut, 160, 24);

  // int_A^inf cos(y) y^-alpha dy with sin A = 0, cos A = 1:
  //   alpha A^(-alpha-1) - alpha(alpha+1)(alpha+2) A^(-alpha-3) + ...
  double tail_cos = 0.0;
  double coeff = alpha;
  double power = std::pow(kCut, -alpha - 1.0);
  for (int k = 0; k < 30; ++k) {
    const double term = coeff * power;
    tail_cos += (k % 2 == 0) ? term : -term;
    if (std::fabs(term) < 1e-22) break;
    coeff *= (alpha + 2.0 * k + 1.0) * (alpha + 2.0 * k + 2.0);
    power /= kCut * kCut;
  }
  const double tail_power = std::pow(kCut, 1.0 - alpha) / (alpha - 1.0);
  return 2.0 * (near + body + tail_power - tail_cos);
}

double dispersion(const AlphaParams& params, double xi) {
  if (xi == 0.0) return 0.0;
  return params.gamma * xi * std::pow(std::fabs(xi), params.alpha - 1.0);
}

double dispersion_derivative(const AlphaParams& params, double xi) {
  if (xi == 0.0) return 0.0;
  return params.gamma * params.alpha * std::pow(std::fabs(xi), params.alpha - 1.0);
}

}  // namespace gsqg
