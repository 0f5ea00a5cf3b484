#pragma once

// FFTW wrappers shared by the transform code. Plans are cached per size and
// direction behind a mutex; execution uses the new-array interface so any
// number of threads may transform concurrently.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace deepwave::detail {

using Spectrum = std::vector<std::complex<double>>;

/// Half spectrum (n/2 + 1 coefficients) of real data, unnormalized.
Spectrum rfft(std::span<const double> v);
/// Inverse of rfft including the 1/n factor. The spectrum is consumed.
std::vector<double> irfft(Spectrum s, std::size_t n);

/// Odd-even principal value sum (2/pi) * sum_{i-j odd} v_j / (i - j),
/// evaluated as a linear convolution through a zero-padded FFT.
std::vector<double> pv_odd_even(std::span<const double> v);

}  // namespace deepwave::detail
