#pragma once

namespace gsqg {

/// The fractional order alpha in (1, 2) together with every constant derived
/// from it. Construct through make_alpha_params.
struct AlphaParams {
  double alpha = 0.0;
  double gamma = 0.0;    // dispersion constant: Lambda(xi) = gamma xi |xi|^(alpha-1)
  double beta = 0.0;     // (2 - alpha) / 10
  double p0 = 0.0;       // 1e-6 * beta
  int n0 = 20;
  int n1 = 4;
  int n2 = 8;
  double d1 = 0.0;       // first binomial coefficient of (1 + rho)^(-alpha/2)
  double k_alpha = 0.0;  // 2 pi / (gamma alpha (alpha - 1))
};

/// Throws DomainError unless 1 < alpha < 2.
AlphaParams make_alpha_params(double alpha);

/// n-th coefficient of (1 + rho)^(-alpha/2) = 1 + sum_n d_n rho^n (n >= 1).
double binomial_coefficient(double alpha, int n);

/// gamma = int_R (1 - cos y) / |y|^alpha dy evaluated by quadrature: graded
/// Gauss panels near the origin, composite Gauss on [1, A] and an
/// integrated-by-parts asymptotic series for the oscillatory tail beyond A.
double gamma_by_quadrature(double alpha);

/// Lambda(xi) = gamma xi |xi|^(alpha - 1).
double dispersion(const AlphaParams& params, double xi);

/// Lambda'(xi) = gamma alpha |xi|^(alpha - 1), the group velocity magnitude.
double dispersion_derivative(const AlphaParams& params, double xi);

}  // namespace gsqg
