#pragma once

#include <string>
#include <vector>

#include "deepwave/grid.hpp"
#include "deepwave/transforms.hpp"

namespace deepwave {

enum class ResidualForm { pseudodifferential, bernoulli, bvp };

const char* to_string(ResidualForm f) noexcept;

struct ResidualReport {
  Profile residual;
  double l2_norm;
  double sup_norm;
  ResidualForm form;
};

ResidualReport make_report(Profile residual, ResidualForm form);

/// F(w; mu) = Hw' - mu (w + w Hw' + H(w w')).
ResidualReport residual_deep(const WaveState& state, const LineOptions& opts = {});
/// B(w; mu) = (1 - 2 mu w)((1 + Hw')^2 + (w')^2) - 1.
ResidualReport residual_bernoulli(const WaveState& state, const LineOptions& opts = {});

/// min over nodes of 1 + Hw'.
double injectivity_margin(const Profile& w, const LineOptions& opts = {});

struct SurfaceCurve {
  std::vector<double> abscissa;  // x + Hw(x)
  std::vector<double> ordinate;  // w(x)
  double shift = 0.0;
  bool monotone = false;
};

SurfaceCurve surface_curve(const Profile& w, const LineOptions& opts = {});

}  // namespace deepwave
