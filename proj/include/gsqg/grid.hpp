#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace gsqg {

using Complex = std::complex<double>;

/// Periodic cell [-L/2, L/2) standing in for the real line.
///
/// Nodes are x_j = j L / N - L / 2. Frequencies are stored in FFT order:
/// index i carries the integer wavenumber k = i for i < N/2 and k = i - N
/// otherwise, with xi_k = 2 pi k / L. Index N/2 is the Nyquist mode.
class Grid {
 public:
  /// Throws DomainError unless period > 0 and n_modes is a power of two
  /// >= kMinModes.
  Grid(double period_l, std::size_t n_modes);

  static constexpr std::size_t kMinModes = 64;

  double period() const noexcept { return period_; }
  std::size_t size() const noexcept { return n_; }
  double dx() const noexcept { return period_ / static_cast<double>(n_); }
  double dxi() const noexcept;
  std::size_t nyquist_index() const noexcept { return n_ / 2; }

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& freqs() const noexcept { return freqs_; }

  /// Signed integer wavenumber of FFT-order index i.
  long wavenumber(std::size_t i) const noexcept {
    return i < n_ / 2 ? static_cast<long>(i)
                      : static_cast<long>(i) - static_cast<long>(n_);
  }
  /// FFT-order index of integer wavenumber k (taken modulo N).
  std::size_t index_of(long k) const noexcept;

  /// Largest retained frequency under the 2/3 rule: modes with
  /// |k| < N/3 survive dealiasing.
  bool survives_dealiasing(std::size_t i) const noexcept;

  bool operator==(const Grid& other) const noexcept {
    return n_ == other.n_ && period_ == other.period_;
  }

 private:
  double period_;
  std::size_t n_;
  std::vector<double> nodes_;
  std::vector<double> freqs_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(double period_l, std::size_t n_modes);

}  // namespace gsqg
