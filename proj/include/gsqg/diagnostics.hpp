#pragma once

#include <map>
#include <string>
#include <vector>

#include "gsqg/alpha_params.hpp"
#include "gsqg/evolution.hpp"
#include "gsqg/littlewood_paley.hpp"
#include "gsqg/spectral_field.hpp"

namespace gsqg {

/// (sum_k (1 + xi_k^2)^s |f^(xi_k)|^2 / L)^(1/2); s = 0 is the L^2 norm.
/// Throws DomainError for s < 0.
double sobolev_norm(const SpectralField& f, double s);

/// sup over nonzero xi of (|xi|^(1/2 + beta) + |xi|^(N2 alpha + 1)) |v^(xi)|.
double z_norm(const AlphaParams& params, const SpectralField& v_hat);

/// Smooth cutoff equal to 1 on the central half-cell |x| <= L/4 and 0 for
/// |x| >= 15 L / 32.
double localization_window(double x, double period);

struct ScalingNorms {
  double s_norm = 0.0;             // ||S h||_{H^(N1 alpha)}
  double weighted_profile = 0.0;   // ||x d_x v||_{L^2}
  double discarded_fraction = 0.0; // ||(1 - window) x v_x|| / ||x v_x||
};

/// Largest ||(1 - window) x v_x|| / ||x v_x|| accepted by scaling_norms.
inline constexpr double kMaxWindowDiscard = 1e-3;

/// x d_x v with the window applied to x; discarded mass reported.
SpectralField windowed_x_dx(const SpectralField& v, double* discarded_fraction = nullptr);

/// S h = e^{it Lambda}(x d_x v) + alpha t N[h], with N from the evaluator.
/// Throws LocalizationError when more than kMaxWindowDiscard of x v_x lies
/// outside the window.
ScalingNorms scaling_norms(const AlphaParams& params, const SimState& state,
                           const NonlinearityEvaluator& nl);

/// k -> (2^(k/2) + 2^(N2 alpha k)) ||P_k h||_inf for every band of the set.
std::map<int, double> decay_monitor(const AlphaParams& params, const LPBandSet& bands,
                                    const SpectralField& h);

/// k -> ||P_k h||_inf.
std::map<int, double> band_sup_norms(const LPBandSet& bands, const SpectralField& h);

/// (2^(k/2) + 2^(N2 alpha k)).
double decay_weight(const AlphaParams& params, int k);

struct DiagnosticsRecord {
  double t = 0.0;
  double sobolev_h_n0alpha = 0.0;
  double s_norm_h_n1alpha = 0.0;
  double weighted_profile_norm = 0.0;
  double z_norm = 0.0;
  std::map<int, double> band_sup;
  double linf_hx = 0.0;
  double l2_h = 0.0;
  /// <t>^(-p0) [sobolev + s_norm + weighted] + z_norm with <t> = 1 + t.
  double bootstrap = 0.0;
};

DiagnosticsRecord compute_record(const AlphaParams& params, const LPBandSet& bands,
                                 const SimState& state, const NonlinearityEvaluator& nl);

/// Column names in CSV order: t, the scalar norms, band_sup_k<k> per band,
/// linf_hx, l2_h, bootstrap.
std::vector<std::string> record_columns(const LPBandSet& bands);
std::vector<double> record_row(const DiagnosticsRecord& r, const LPBandSet& bands);

/// Band with the largest ||P_k v||_2.
int energetic_band(const LPBandSet& bands, const SpectralField& v_hat);

/// Positive grid frequencies where phi_k = 1.
std::vector<std::size_t> band_plateau_indices(const LPBandSet& bands, int k, const Grid& grid);

/// Records |v^|, arg v^ and arg v^* at fixed frequencies along a run.
class PhaseTracker {
 public:
  struct Series {
    double xi = 0.0;
    std::vector<double> t;
    std::vector<double> abs_v;
    std::vector<double> arg_v;
    std::vector<double> arg_v_star;
  };

  PhaseTracker(const Grid& grid, const std::vector<std::size_t>& indices);

  void record(const SimState& state);
  const std::vector<Series>& series() const noexcept { return series_; }

  /// var(arg v^*) / var(arg v^) over samples with t in [t_lo, t_hi], after unwrapping.
  static double variance_ratio(const Series& s, double t_lo, double t_hi);

  /// Header t,xi,abs_v,arg_v,arg_v_star; arguments unwrapped along t.
  void write_csv(const std::string& path) const;

 private:
  std::vector<std::size_t> indices_;
  std::vector<Series> series_;
};

}  // namespace gsqg
