#include "gsqg/grid.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "gsqg/errors.hpp"

namespace gsqg {

Grid::Grid(double period_l, std::size_t n_modes) : period_(period_l), n_(n_modes) {
  if (!(period_l > 0.0) || !std::isfinite(period_l)) {
    std::ostringstream msg;
    msg << "grid period must be positive and finite, got " << period_l;
    throw DomainError(msg.str());
  }
  if (n_modes < kMinModes || !std::has_single_bit(n_modes)) {
    std::ostringstream msg;
    msg << "grid n_modes must be a power of two >= " << kMinModes << ", got "
        << n_modes;
    throw DomainError(msg.str());
  }
  nodes_.resize(n_);
  freqs_.resize(n_);
  const double h = dx();
  for (std::size_t j = 0; j < n_; ++j) {
    nodes_[j] = static_cast<double>(j) * h - 0.5 * period_;
    freqs_[j] = 2.0 * std::numbers::pi * static_cast<double>(wavenumber(j)) / period_;
  }
}

double Grid::dxi() const noexcept { return 2.0 * std::numbers::pi / period_; }

std::size_t Grid::index_of(long k) const noexcept {
  const long n = static_cast<long>(n_);
  long r = k % n;
  if (r < 0) r += n;
  return static_cast<std::size_t>(r);
}

bool Grid::survives_dealiasing(std::size_t i) const noexcept {
  const long k = wavenumber(i);
  return 3 * std::labs(k) < static_cast<long>(n_);
}

GridPtr make_grid(double period_l, std::size_t n_modes) {
  return std::make_shared<const Grid>(period_l, n_modes);
}

}  // namespace gsqg
