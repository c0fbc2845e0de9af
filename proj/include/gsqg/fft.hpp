#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace gsqg::fft {

/// Unnormalized complex DFTs of length n through FFTW (estimate planning,
/// unaligned plans, so results are reproducible run to run).
///   forward:  out_k = sum_j in_j e^{-2 pi i j k / n}
///   backward: out_j = sum_k in_k e^{+2 pi i j k / n}
/// In-place use (in.data() == out.data()) is allowed.
void forward(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out);
void backward(std::span<const std::complex<double>> in,
              std::span<std::complex<double>> out);

}  // namespace gsqg::fft
