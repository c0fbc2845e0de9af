#include "gsqg/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gsqg/fft.hpp"

namespace gsqg {

namespace {

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid()))
    throw std::invalid_argument("spectral fields live on different grids");
}

}  // namespace

std::vector<Complex> samples_to_coeffs(const Grid& grid, std::span<const double> samples) {
  const std::size_t n = grid.size();
  if (samples.size() != n) throw std::invalid_argument("sample count does not match grid");
  std::vector<Complex> buf(samples.begin(), samples.end());
  fft::forward(buf, buf);
  // e^{-i xi_k x_j} = e^{-2 pi i k j / N} (-1)^k since x_0 = -L/2.
  const double h = grid.dx();
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = (grid.wavenumber(i) % 2 == 0) ? h : -h;
    buf[i] *= sign;
  }
  buf[grid.nyquist_index()] = 0.0;
  return buf;
}

std::vector<double> coeffs_to_samples(const Grid& grid, std::span<const Complex> coeffs) {
  const std::size_t n = grid.size();
  if (coeffs.size() != n) throw std::invalid_argument("coefficient count does not match grid");
  std::vector<Complex> buf(n);
  const double inv_l = 1.0 / grid.period();
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = (grid.wavenumber(i) % 2 == 0) ? inv_l : -inv_l;
    buf[i] = coeffs[i] * sign;
  }
  buf[grid.nyquist_index()] = 0.0;
  fft::backward(buf, buf);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = buf[j].real();
  return out;
}

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

SpectralField::SpectralField(GridPtr grid)
    : grid_(std::move(grid)), coeffs_(grid_->size(), Complex{}) {}

SpectralField::SpectralField(GridPtr grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_->size())
    throw std::invalid_argument("coefficient count does not match grid");
  zero_nyquist();
}

SpectralField SpectralField::from_samples(GridPtr grid, std::span<const double> samples) {
  auto c = samples_to_coeffs(*grid, samples);
  return SpectralField(std::move(grid), std::move(c));
}

std::vector<double> SpectralField::samples() const { return coeffs_to_samples(*grid_, coeffs_); }

std::vector<double> SpectralField::shifted_samples(double shift) const {
  std::vector<Complex> c(coeffs_.size());
  const auto& xi = grid_->freqs();
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = coeffs_[i] * std::polar(1.0, -xi[i] * shift);
  return coeffs_to_samples(*grid_, c);
}

SpectralField SpectralField::derivative() const {
  SpectralField out(grid_);
  const auto& xi = grid_->freqs();
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    out.coeffs_[i] = Complex(0.0, xi[i]) * coeffs_[i];
  out.zero_nyquist();
  return out;
}

double SpectralField::reality_defect() const {
  const double scale = max_abs_coeff();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  const std::size_t n = coeffs_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t mirror = (n - i) % n;
    worst = std::max(worst, std::abs(coeffs_[i] - std::conj(coeffs_[mirror])));
  }
  return worst / scale;
}

void SpectralField::enforce_reality() {
  const std::size_t n = coeffs_.size();
  coeffs_[0] = coeffs_[0].real();
  for (std::size_t i = 1; i < n / 2; ++i) {
    const Complex avg = 0.5 * (coeffs_[i] + std::conj(coeffs_[n - i]));
    coeffs_[i] = avg;
    coeffs_[n - i] = std::conj(avg);
  }
  zero_nyquist();
}

void SpectralField::zero_nyquist() noexcept {
  if (grid_) coeffs_[grid_->nyquist_index()] = 0.0;
}

void SpectralField::dealias() {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!grid_->survives_dealiasing(i)) coeffs_[i] = 0.0;
}

double SpectralField::l2_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s / grid_->period());
}

double SpectralField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

std::vector<Complex> propagator_phases(const AlphaParams& params, const Grid& grid, double t) {
  std::vector<Complex> ph(grid.size());
  const auto& xi = grid.freqs();
  for (std::size_t i = 0; i < ph.size(); ++i)
    ph[i] = std::polar(1.0, t * dispersion(params, xi[i]));
  ph[grid.nyquist_index()] = 0.0;
  return ph;
}

SpectralField propagate(const AlphaParams& params, const SpectralField& field, double t) {
  if (t == 0.0) return field;
  const auto ph = propagator_phases(params, field.grid(), t);
  std::vector<Complex> c(field.coeffs());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= ph[i];
  return SpectralField(field.grid_ptr(), std::move(c));
}

}  // namespace gsqg
