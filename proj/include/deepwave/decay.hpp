#pragma once

#include <optional>

#include "deepwave/grid.hpp"

namespace deepwave {

struct DecayFit {
  double rho = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  /// RMS of the log-log linear fit.
  double fit_residual = 0.0;
  bool superalgebraic = false;
  /// True when the fit used local maxima of |v| because v changes sign or
  /// vanishes in the window.
  bool envelope = false;
  std::size_t points = 0;
};

struct FitWindow {
  double lo;
  double hi;
};

/// Least-squares slope of log|v| against log|x| over both tails
/// lo <= |x| <= hi. Default window [L/4, 3L/4]; the outermost 5% of nodes on
/// each side are always excluded. rho = -slope. superalgebraic is set when the
/// slope over the outer half of the window is steeper than -6.
DecayFit decay_rate_fit(const Profile& v, std::optional<FitWindow> window = std::nullopt);

/// Discrete weighted Holder norm of order k + alpha with weight <x>^rho:
/// sum_{j<=k} sup <x>^rho |v^(j)| plus the weighted seminorm of v^(k) over node
/// pairs at distance <= 1. When more than max_offsets offsets fit in a unit
/// distance, a geometric subset of offsets is used.
double weighted_holder_norm(const Profile& v, int k, double alpha, double rho, std::size_t max_offsets = 64);

}  // namespace deepwave
