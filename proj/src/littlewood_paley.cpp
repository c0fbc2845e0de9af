#include "gsqg/littlewood_paley.hpp"

#include <cmath>
#include <sstream>

#include "gsqg/errors.hpp"

namespace gsqg {

namespace {

constexpr double kPlateau = 1.25;
constexpr double kSupport = 1.6;

double mollifier_step(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

}  // namespace

double lp_bump(double xi) {
  const double a = std::fabs(xi);
  if (a <= kPlateau) return 1.0;
  if (a >= kSupport) return 0.0;
  const double s = (a - kPlateau) / (kSupport - kPlateau);
  const double up = mollifier_step(1.0 - s);
  const double down = mollifier_step(s);
  return up / (up + down);
}

LPBandSet::LPBandSet(int k_min, int k_max) : k_min_(k_min), k_max_(k_max) {
  if (k_min > k_max) {
    std::ostringstream msg;
    msg << "band range [" << k_min << ", " << k_max << "] is empty";
    throw RangeError(msg.str());
  }
}

LPBandSet LPBandSet::covering(const Grid& grid) {
  const double xi_min = grid.dxi();
  const double xi_max = grid.dxi() * static_cast<double>(grid.size() / 2);
  // Need 2^(k_min-1) * 8/5 <= xi_min and 2^k_max * 5/4 >= xi_max.
  const int k_min = static_cast<int>(std::floor(std::log2(xi_min / kSupport))) + 1;
  const int k_max = static_cast<int>(std::ceil(std::log2(xi_max / kPlateau)));
  return LPBandSet(k_min, k_max);
}

void LPBandSet::require(int k) const {
  if (!contains(k)) {
    std::ostringstream msg;
    msg << "band index " << k << " outside configured range [" << k_min_ << ", "
        << k_max_ << "]";
    throw RangeError(msg.str());
  }
}

double LPBandSet::band(int k, double xi) const {
  require(k);
  return lp_bump(std::ldexp(xi, -k)) - lp_bump(std::ldexp(xi, 1 - k));
}

double LPBandSet::low_pass(int k, double xi) const {
  require(k);
  return lp_bump(std::ldexp(xi, -k));
}

double LPBandSet::high_pass(int k, double xi) const {
  require(k);
  return 1.0 - lp_bump(std::ldexp(xi, 1 - k));
}

bool LPBandSet::covers(double xi) const noexcept {
  const double a = std::fabs(xi);
  return a >= std::ldexp(kSupport, k_min_ - 1) && a <= std::ldexp(kPlateau, k_max_);
}

SpectralField lp_project(const LPBandSet& bands, const SpectralField& field, int k,
                         ProjectionKind kind) {
  if (!bands.contains(k)) {
    std::ostringstream msg;
    msg << "band index " << k << " outside configured range [" << bands.k_min()
        << ", " << bands.k_max() << "]";
    throw RangeError(msg.str());
  }
  std::vector<Complex> c(field.coeffs());
  const auto& xi = field.grid().freqs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    double w = 0.0;
    switch (kind) {
      case ProjectionKind::kBand: w = bands.band(k, xi[i]); break;
      case ProjectionKind::kLowPass: w = bands.low_pass(k, xi[i]); break;
      case ProjectionKind::kHighPass: w = bands.high_pass(k, xi[i]); break;
    }
    c[i] *= w;
  }
  return SpectralField(field.grid_ptr(), std::move(c));
}

}  // namespace gsqg
