#pragma once

#include <complex>
#include <functional>
#include <limits>

#include "deepwave/grid.hpp"

namespace deepwave {

enum class HilbertMethod {
  /// Treat [-L, L) as one period and apply the periodic multiplier.
  periodized,
  /// Odd-even trapezoid for the principal value integral: nodes of opposite
  /// parity to the evaluation node, step 2h, so the singular node never enters.
  pv_quadrature,
};

struct LineOptions {
  HilbertMethod method = HilbertMethod::pv_quadrature;
  /// Maximum |v| at the two outermost nodes relative to max |v|. Infinity
  /// disables the check.
  double tail_threshold = 1e-6;

  static LineOptions unchecked(HilbertMethod m = HilbertMethod::pv_quadrature) {
    return {m, std::numeric_limits<double>::infinity()};
  }
};

/// Multiplier -i sgn(k); the mean and the Nyquist mode map to zero.
Profile hilbert_periodic(const Profile& v);
Profile hilbert_line(const Profile& v, const LineOptions& opts = {});
/// hilbert_periodic or hilbert_line according to the grid kind.
Profile hilbert(const Profile& v, const LineOptions& opts = {});

/// Spectral derivative, multiplier i*xi with the Nyquist mode zeroed.
Profile derivative(const Profile& v);

/// Derivative of a line profile that tends to different constants at the two
/// ends (arctan-like). A smooth tanh step matched to the endpoint values is
/// removed before differentiating and its exact derivative added back.
Profile derivative_detrended(const Profile& v);

/// H(v'). Periodic grids: multiplier |xi| (Nyquist kept). Line grids:
/// hilbert_line(derivative(v)).
Profile conjugate_derivative(const Profile& v, const LineOptions& opts = {});

/// Apply a Fourier multiplier m(xi) on the grid's period. m must satisfy
/// m(-xi) = conj(m(xi)) for the result to be real; at the Nyquist mode only
/// the real part of m(xi_{n/2}) is used.
Profile fourier_multiplier(const Profile& v, const std::function<std::complex<double>(double)>& m);

/// Throws decay_violation when an endpoint sample exceeds threshold * max|v|.
void check_decay(const Profile& v, double threshold, const char* what = "profile");

}  // namespace deepwave
