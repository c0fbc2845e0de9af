#pragma once

#include <array>
#include <string>
#include <vector>

#include "gsqg/alpha_params.hpp"
#include "gsqg/spectral_field.hpp"

namespace gsqg {

enum class TailRule { kTruncateAtHalfPeriod, kPeriodicImageSum };

enum class DealiasMode {
  kTwoThirds,  // zero the top third of output modes
  kNone,       // keep every mode except Nyquist
};

/// Quadrature controls for the singular y-integrals.
///
/// The inner window |y| <= inner_cut (snapped to a whole number of grid
/// spacings) is covered by unit-spacing Gauss panels and, below one spacing,
/// by geometric panels graded toward y = 0, each with n_inner nodes. The
/// outer range is sampled on the grid and integrated by the trapezoid rule
/// with Gregory end corrections of order n_outer.
struct QuadratureSpec {
  double inner_cut = 0.0;
  int n_inner = 12;
  int n_outer = 8;
  TailRule tail_rule = TailRule::kTruncateAtHalfPeriod;
  DealiasMode dealias = DealiasMode::kTwoThirds;
  bool error_check = true;
};

/// inner_cut = 16 dx, other fields at their defaults.
QuadratureSpec default_quadrature(const Grid& grid);

/// Throws DomainError when the quadrature settings cannot be used on this grid.
void validate(const QuadratureSpec& quad, const Grid& grid);

/// Side information from an evaluation.
struct EvalReport {
  double error_estimate = 0.0;    // max_x |fine - coarse| / max_x |result|
  double worst_x = 0.0;           // node where the estimate is attained
  double dealias_residual = 0.0;  // relative L2 mass in the removed modes
};

/// Full nonlinearity
///   N(x) = int [h_x(x) - h_x(x-y)] [(|h(x)-h(x-y)|^2 + y^2)^(-alpha/2) - |y|^-alpha] dy
/// by direct quadrature at every grid node. Requires ||h_x||_inf < 1.
SpectralField eval_full(const AlphaParams& params, const QuadratureSpec& quad,
                        const SpectralField& h, EvalReport* report = nullptr);

enum class SeriesRoute {
  kSpectralKernel,  // binomial expansion, exact Fourier kernel of |y|^(-alpha-2n)
  kDirect,          // same quadrature as eval_full
};

/// Order-n term
///   N_n(x) = d_n int [h_x(x) - h_x(x-y)] |y|^-alpha ((h(x)-h(x-y))/y)^(2n) dy,
/// 1 <= n <= 6. The spectral-kernel route integrates over the whole line (the
/// periodic extension of h); products are zero-padded by n + 1 for n <= 2.
SpectralField eval_order_n(const AlphaParams& params, const QuadratureSpec& quad,
                           const SpectralField& h, int n,
                           SeriesRoute route = SeriesRoute::kSpectralKernel,
                           EvalReport* report = nullptr);

/// sum_{n <= n_max} N_n through the spectral-kernel route.
SpectralField eval_series(const AlphaParams& params, const QuadratureSpec& quad,
                          const SpectralField& h, int n_max);

/// Fourier multiplier of the finite-part kernel |y|^-s (s > 1, not an odd
/// integer): 2 Gamma(1 - s) sin(pi s / 2) |xi|^(s - 1).
double power_kernel_multiplier(double s, double xi);

enum class SymbolMethod { kCubeIntegral, kOscillatoryIntegral };

struct SymbolQuery {
  std::array<double, 3> lambdas{};
  SymbolMethod method = SymbolMethod::kCubeIntegral;
};

/// Cubic multiplier m_1 through one of two independent integral formulas.
double eval_symbol_m1(const AlphaParams& params, const SymbolQuery& q);

/// Cubic multiplier m_1 in closed form (third-order finite difference of
/// |u|^(alpha+1) over the vertices of the unit cube).
double m1_closed_form(const AlphaParams& params, const std::array<double, 3>& lambdas);

/// m_1 tabulated on the l1 unit sphere and extended by oddness and
/// homogeneity of degree 2 + alpha. Directions (u, v) = (l1, l2) / |l|_1 with
/// l3 >= 0 are sampled on a square grid with bilinear interpolation.
class SymbolTable {
 public:
  SymbolTable() = default;
  static SymbolTable build(const AlphaParams& params, int points = 2501);
  static SymbolTable load(const std::string& path);
  void save(const std::string& path) const;

  double alpha() const noexcept { return alpha_; }
  int points() const noexcept { return points_; }
  bool empty() const noexcept { return values_.empty(); }
  double operator()(double l1, double l2, double l3) const;

 private:
  double alpha_ = 0.0;
  int points_ = 0;
  std::vector<double> values_;
};

/// N_1 via the double frequency convolution with kernel (i/3) m_1, summed
/// over the modes of h above 1e-14 of its largest coefficient. The output
/// keeps the modes that survive the 2/3 rule.
SpectralField eval_cubic_spectral(const AlphaParams& params, const SpectralField& h,
                                  const SymbolTable& table);

}  // namespace gsqg
