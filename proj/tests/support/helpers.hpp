#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "deepwave/grid.hpp"

namespace testing {

inline double max_error(const deepwave::Profile& p, const std::function<double(double)>& f) {
  double e = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) e = std::max(e, std::abs(p[i] - f(p.grid().node(i))));
  return e;
}

inline double max_diff(const deepwave::Profile& a, const deepwave::Profile& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

// Random trigonometric polynomial with modes 1..kmax (band-limited).
template <typename Rng>
deepwave::Profile random_trig(const deepwave::Grid& g, int kmax, Rng& rng, double scale = 1.0) {
  std::vector<double> a(kmax + 1), b(kmax + 1);
  for (int k = 1; k <= kmax; ++k) {
    a[k] = scale * rng.uniform(-1.0, 1.0) / k;
    b[k] = scale * rng.uniform(-1.0, 1.0) / k;
  }
  const double w = 2.0 * 3.14159265358979323846 / g.period();
  return deepwave::Profile::sample(g, [&](double x) {
    double s = 0.0;
    for (int k = 1; k <= kmax; ++k) s += a[k] * std::cos(k * w * x) + b[k] * std::sin(k * w * x);
    return s;
  });
}

}  // namespace testing

namespace testing {

// Trig polynomial with known coefficients on a 2 pi / omega period, with the
// Hilbert transform and derivatives evaluated from the coefficients
// (H cos = sin, H sin = -cos).
struct TrigSeries {
  double omega = 1.0;
  std::vector<double> a, b;  // cos and sin coefficients, index = mode

  template <typename Rng>
  static TrigSeries random(int kmax, Rng& rng, double scale, double omega = 1.0) {
    TrigSeries s;
    s.omega = omega;
    s.a.assign(kmax + 1, 0.0);
    s.b.assign(kmax + 1, 0.0);
    for (int k = 1; k <= kmax; ++k) {
      s.a[k] = scale * rng.uniform(-1.0, 1.0) / (k * k);
      s.b[k] = scale * rng.uniform(-1.0, 1.0) / (k * k);
    }
    return s;
  }
  // d-th derivative of the series (hilbert = true: of its Hilbert transform)
  double eval(double x, int d = 0, bool hilbert = false) const {
    double s = 0.0;
    for (std::size_t k = 1; k < a.size(); ++k) {
      const double kw = k * omega;
      double c = a[k], sn = b[k];
      if (hilbert) {
        const double t = c;
        c = -sn;
        sn = t;
      }
      for (int j = 0; j < d; ++j) {
        const double t = c;
        c = kw * sn;
        sn = -kw * t;
      }
      s += c * std::cos(kw * x) + sn * std::sin(kw * x);
    }
    return s;
  }
  deepwave::Profile sample(const deepwave::Grid& g, int d = 0, bool hilbert = false) const {
    return deepwave::Profile::sample(g, [&](double x) { return eval(x, d, hilbert); });
  }
};

}  // namespace testing
