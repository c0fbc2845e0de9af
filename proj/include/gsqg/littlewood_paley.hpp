#pragma once

#include "gsqg/spectral_field.hpp"

namespace gsqg {

/// Even bump: 1 on [-5/4, 5/4], 0 outside [-8/5, 8/5], with an
/// exp(-1/s) mollifier ramp in between.
double lp_bump(double xi);

/// Smooth dyadic bands phi_k(xi) = phi(xi / 2^k) - phi(xi / 2^(k-1)) for
/// k in [k_min, k_max].
class LPBandSet {
 public:
  /// Throws RangeError if k_min > k_max.
  LPBandSet(int k_min, int k_max);

  /// Smallest band range whose union covers every nonzero frequency of
  /// the grid up to Nyquist.
  static LPBandSet covering(const Grid& grid);

  int k_min() const noexcept { return k_min_; }
  int k_max() const noexcept { return k_max_; }
  bool contains(int k) const noexcept { return k >= k_min_ && k <= k_max_; }

  double band(int k, double xi) const;        // phi_k(xi)
  double low_pass(int k, double xi) const;    // phi(xi / 2^k), symbol of P_{<=k}
  double high_pass(int k, double xi) const;   // 1 - phi(xi / 2^(k-1)), symbol of P_{>=k}

  /// True when sum_{k_min..k_max} phi_k(xi) = 1, i.e.
  /// 2^(k_min-1) * 8/5 <= |xi| <= 2^k_max * 5/4.
  bool covers(double xi) const noexcept;

 private:
  void require(int k) const;
  int k_min_;
  int k_max_;
};

enum class ProjectionKind { kBand, kLowPass, kHighPass };

/// P_k f (or P_{<=k} f, P_{>=k} f). Throws RangeError when k lies outside the
/// configured band range.
SpectralField lp_project(const LPBandSet& bands, const SpectralField& field, int k,
                         ProjectionKind kind = ProjectionKind::kBand);

}  // namespace gsqg
