#pragma once

#include <vector>

#include "deepwave/grid.hpp"
#include "deepwave/linearized.hpp"
#include "deepwave/steady.hpp"
#include "deepwave/transforms.hpp"

namespace deepwave {

/// Samples of a function in the lower half plane on levels y < 0.
struct HalfPlaneField {
  Grid x_grid;
  std::vector<double> y_levels;
  /// level-major: values[k * n + i] is the sample at (x_i, y_k)
  std::vector<double> values;

  double at(std::size_t level, std::size_t i) const { return values[level * x_grid.size() + i]; }
  /// Samples of one level as a profile.
  Profile level(std::size_t k) const;
};

/// Poisson integral of v at each level. Periodic grids use the multiplier
/// exp(|xi| y); line grids use direct quadrature per level with the local
/// value subtracted and the kernel mass over [x_0, x_{n-1}] added exactly.
HalfPlaneField poisson_extend(const Profile& v, const std::vector<double>& y_levels);

struct HarmonicityCheck {
  double defect = 0.0;  // max |5-point Laplacian| over interior stencils
  double budget = 0.0;  // (hx^2 + hy^2) / 12 * sup |v''''|, times a safety factor of 2
  bool passed = false;
};

/// Needs at least three levels; uneven level spacing is allowed.
HarmonicityCheck harmonicity_defect(const HalfPlaneField& f, const Profile& boundary);

/// dV/dy at y = 0 for the Poisson extension. Periodic grids: multiplier |xi|.
/// Line grids: -(1/pi) f.p. int (v(t) - v(x)) / (t - x)^2 dt with the first two
/// Taylor terms subtracted and their finite-part integrals added in closed form.
Profile dirichlet_to_neumann(const Profile& v);

/// 1 / ((w')^2 + (1 + Hw')^2) + 2 mu w - 1.
ResidualReport bvp_residual(const WaveState& state, const LineOptions& opts = {});

/// Trace of zeta' = 1 + Hw' + i w' (shift alpha = 0).
BoundaryTrace conformal_trace(const Profile& w, const LineOptions& opts = {});

}  // namespace deepwave
