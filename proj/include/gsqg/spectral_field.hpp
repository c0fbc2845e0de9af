#pragma once

#include <span>
#include <vector>

#include "gsqg/alpha_params.hpp"
#include "gsqg/grid.hpp"

namespace gsqg {

/// A real-valued function on a Grid, held by its spectral coefficients.
///
/// Coefficients approximate the Fourier transform on the line,
///   f^(xi_k) = dx * sum_j f(x_j) e^{-i xi_k x_j},
/// with inverse f(x_j) = (1/L) sum_k f^(xi_k) e^{i xi_k x_j}. The Nyquist
/// coefficient is kept at zero so that reality reduces to conjugate symmetry.
class SpectralField {
 public:
  SpectralField() = default;
  /// Zero field.
  explicit SpectralField(GridPtr grid);
  /// Takes coefficients in FFT order; zeroes the Nyquist entry.
  SpectralField(GridPtr grid, std::vector<Complex> coeffs);

  static SpectralField from_samples(GridPtr grid, std::span<const double> samples);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  std::vector<Complex>& mutable_coeffs() noexcept { return coeffs_; }
  Complex operator[](std::size_t i) const noexcept { return coeffs_[i]; }

  std::vector<double> samples() const;

  /// Samples of f(x_j - shift) for every node (exact band-limited shift).
  std::vector<double> shifted_samples(double shift) const;

  /// Spectral derivative d/dx.
  SpectralField derivative() const;

  /// max_k |f^(xi_k) - conj(f^(-xi_k))| / max_k |f^(xi_k)| (0 for the zero field).
  double reality_defect() const;
  /// Replaces coefficients by their Hermitian part and zeroes the Nyquist mode.
  void enforce_reality();
  void zero_nyquist() noexcept;
  /// Zeroes the modes removed by the 2/3 rule.
  void dealias();

  /// L^2 norm on the line, (1/L sum_k |f^|^2)^(1/2) = (dx sum_j f_j^2)^(1/2).
  double l2_norm() const;
  double max_abs_coeff() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  GridPtr grid_;
  std::vector<Complex> coeffs_;
};

/// Coefficients (FFT order, line-normalized) of real samples.
std::vector<Complex> samples_to_coeffs(const Grid& grid, std::span<const double> samples);
/// Real samples of line-normalized coefficients (imaginary residue dropped).
std::vector<double> coeffs_to_samples(const Grid& grid, std::span<const Complex> coeffs);

/// Max-norm of samples.
double max_abs(std::span<const double> values);

/// Free propagator: multiplies every coefficient by e^{i t Lambda(xi)}.
SpectralField propagate(const AlphaParams& params, const SpectralField& field, double t);

/// e^{i t Lambda(xi_k)} for every grid frequency (FFT order).
std::vector<Complex> propagator_phases(const AlphaParams& params, const Grid& grid, double t);

}  // namespace gsqg
