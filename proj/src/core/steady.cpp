#include "deepwave/steady.hpp"

#include <algorithm>

namespace deepwave {

const char* to_string(ResidualForm f) noexcept {
  switch (f) {
    case ResidualForm::pseudodifferential: return "pseudodifferential";
    case ResidualForm::bernoulli: return "bernoulli";
    case ResidualForm::bvp: return "bvp";
  }
  return "unknown";
}

ResidualReport make_report(Profile residual, ResidualForm form) {
  const double l2 = l2_norm(residual);
  const double sup = sup_norm(residual);
  return {std::move(residual), l2, sup, form};
}

ResidualReport residual_deep(const WaveState& state, const LineOptions& opts) {
  const Profile& w = state.profile;
  const double mu = state.mu;
  const Profile wp = derivative(w);
  const Profile hwp = hilbert(wp, opts);
  const Profile hwwp = hilbert(w * wp, opts);
  std::vector<double> f(w.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = hwp[i] - mu * (w[i] + w[i] * hwp[i] + hwwp[i]);
  return make_report(Profile(w.grid(), std::move(f)), ResidualForm::pseudodifferential);
}

ResidualReport residual_bernoulli(const WaveState& state, const LineOptions& opts) {
  const Profile& w = state.profile;
  const double mu = state.mu;
  const Profile wp = derivative(w);
  const Profile hwp = hilbert(wp, opts);
  std::vector<double> b(w.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double a = 1.0 + hwp[i];
    b[i] = (1.0 - 2.0 * mu * w[i]) * (a * a + wp[i] * wp[i]) - 1.0;
  }
  return make_report(Profile(w.grid(), std::move(b)), ResidualForm::bernoulli);
}

double injectivity_margin(const Profile& w, const LineOptions& opts) {
  const Profile hwp = hilbert(derivative(w), opts);
  const auto v = hwp.values();
  return 1.0 + *std::min_element(v.begin(), v.end());
}

SurfaceCurve surface_curve(const Profile& w, const LineOptions& opts) {
  const Profile hw = hilbert(w, opts);
  SurfaceCurve c;
  c.abscissa.resize(w.size());
  c.ordinate.assign(w.values().begin(), w.values().end());
  for (std::size_t i = 0; i < w.size(); ++i) c.abscissa[i] = w.grid().node(i) + hw[i] + c.shift;
  c.monotone = injectivity_margin(w, opts) > 0.0;
  return c;
}

}  // namespace deepwave
