#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gsqg/alpha_params.hpp"
#include "gsqg/spectral_field.hpp"

namespace gsqg {

/// Cubic interaction phase -Lambda(xi) + Lambda(eta1) + Lambda(eta2) + Lambda(xi - eta1 - eta2),
/// summed with error-free transformations.
double phase_phi(const AlphaParams& params, double xi, double eta1, double eta2);

/// (d/d eta1, d/d eta2) of phase_phi.
std::array<double, 2> phase_phi_gradient(const AlphaParams& params, double xi, double eta1,
                                         double eta2);

struct ResonancePoint {
  double xi = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double phi_value = 0.0;
  double grad_norm = 0.0;
};

/// Brute-force window [-half_width, half_width]^2 in (eta1, eta2), cells^2 samples.
struct SearchBox {
  double half_width = 3.0;
  int cells = 400;
};

/// Joint zeros of (Phi, d1 Phi, d2 Phi): grid search over the box, Gauss-Newton
/// refinement from every discrete local minimum of |Phi| + |grad Phi|, then
/// clustering of the converged points within tol * |xi|. Throws DomainError
/// for xi = 0.
std::vector<ResonancePoint> find_resonances(const AlphaParams& params, double xi,
                                            const SearchBox& box, double tol = 1e-6);

/// min of (|Phi| + |grad Phi|) / |Lambda'(xi)| over the grid samples of the box
/// farther than radius * |xi| from the three points (xi,xi), (xi,-xi), (-xi,xi).
double resonance_gap(const AlphaParams& params, double xi, const SearchBox& box,
                     double radius);

/// Exact positions (xi,xi), (xi,-xi), (-xi,xi).
std::vector<ResonancePoint> expected_resonances(const AlphaParams& params, double xi);

using M1Evaluator = std::function<double(double, double, double)>;

/// -K_alpha |xi|^(2-alpha) [m1(xi,xi,-xi) + m1(xi,-xi,xi) + m1(-xi,xi,xi)].
double c_tilde(const AlphaParams& params, const M1Evaluator& m1, double xi);
/// Same with m1 in closed form.
double c_tilde(const AlphaParams& params, double xi);

/// Coefficient r(xi) of the resonant part of the profile equation,
///   d/dt v^(xi) ~ -i r(xi) |v^(xi)|^2 v^(xi) / (t + 1),
/// for the cubic term (i/3) int m1 v v v: r = c_tilde / 3.
double resonant_coefficient(const AlphaParams& params, double xi);

struct CorrectedProfile {
  std::vector<Complex> v_star_hat;  // v^(xi, t) e^{i L(xi, t)}
  double t = 0.0;
};

CorrectedProfile corrected_profile(const SpectralField& v_hat, std::span<const double> phase_l,
                                   double t);

/// Unwraps a phase sequence by removing 2 pi jumps between neighbours.
std::vector<double> unwrap_phase(std::span<const double> phase);
/// Population variance of the unwrapped sequence.
double unwrapped_phase_variance(std::span<const double> phase);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;  // log of the prefactor
  double prefactor() const;
};

/// Least-squares line through (log x, log y).
LogLogFit fit_log_log(std::span<const double> x, std::span<const double> y);

struct DispersiveResult {
  int band = 0;
  double period = 0.0;
  std::size_t n_modes = 0;
  double l1_norm = 0.0;    // ||f||_{L^1} of the test function
  double sup_at_zero = 0.0;
  std::vector<double> t;
  std::vector<double> sup_norm;  // ||e^{it Lambda} P_k f||_inf
  LogLogFit fit;                 // of sup_norm / l1_norm against t
  double prefactor = 0.0;        // geometric mean of sup_norm sqrt(t) / l1_norm
};

/// Linear decay of a Gaussian modulated to band k, f(x) = exp(-(2^k x / 2)^2 / 2)
/// cos(2^k x), projected by P_k. The grid is sized so that the packet never
/// meets its periodic image up to max(t_list) and each wavelength of the band
/// carries at least 16 nodes. Throws ResolutionError when that grid would
/// exceed 2^22 nodes, DomainError for an empty or non-positive t_list.
DispersiveResult dispersive_decay_experiment(const AlphaParams& params, int k,
                                             std::span<const double> t_list);

/// Header "t,band,sup_norm" followed by one row per sample.
void write_decay_csv(const std::string& path, std::span<const DispersiveResult> runs);

}  // namespace gsqg
