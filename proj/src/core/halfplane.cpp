#include "deepwave/halfplane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "deepwave/error.hpp"

namespace deepwave {

namespace {

constexpr double kPi = std::numbers::pi;

// Trapezoid weights over the nodes of a line grid.
double trap_weight(std::size_t j, std::size_t n, double h) { return (j == 0 || j == n - 1) ? 0.5 * h : h; }

std::vector<double> poisson_line_level(const Profile& v, double y) {
  const Grid& g = v.grid();
  const std::size_t n = g.size();
  const double h = g.spacing();
  const double a = g.node(0), b = g.node(n - 1);
  const double ay = std::abs(y);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.node(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = x - g.node(j);
      s += trap_weight(j, n, h) * (v[j] - v[i]) * ay / (d * d + y * y);
    }
    const double mass = std::atan((b - x) / ay) + std::atan((x - a) / ay);
    out[i] = (s + v[i] * mass) / kPi;
  }
  return out;
}

}  // namespace

Profile HalfPlaneField::level(std::size_t k) const {
  const std::size_t n = x_grid.size();
  return Profile(x_grid, std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(k * n),
                                             values.begin() + static_cast<std::ptrdiff_t>((k + 1) * n)));
}

HalfPlaneField poisson_extend(const Profile& v, const std::vector<double>& y_levels) {
  for (double y : y_levels) {
    if (!(y < 0.0)) {
      std::ostringstream os;
      os << "poisson_extend levels must be negative, got " << y;
      throw Error(ErrorCode::domain, os.str());
    }
  }
  HalfPlaneField f{v.grid(), y_levels, {}};
  f.values.reserve(y_levels.size() * v.size());
  for (double y : y_levels) {
    std::vector<double> lv;
    if (v.grid().is_periodic()) {
      lv = fourier_multiplier(v, [y](double xi) { return std::complex<double>(std::exp(std::abs(xi) * y)); }).vector();
    } else {
      lv = poisson_line_level(v, y);
    }
    f.values.insert(f.values.end(), lv.begin(), lv.end());
  }
  return f;
}

HarmonicityCheck harmonicity_defect(const HalfPlaneField& f, const Profile& boundary) {
  const std::size_t m = f.y_levels.size();
  if (m < 3) throw Error(ErrorCode::insufficient_data, "harmonicity check needs at least three levels");
  const Grid& g = f.x_grid;
  const std::size_t n = g.size();
  const double hx = g.spacing();
  const bool wrap = g.is_periodic();
  HarmonicityCheck c;
  double hy_max = 0.0;
  for (std::size_t k = 1; k + 1 < m; ++k) {
    const double dm = f.y_levels[k] - f.y_levels[k - 1];
    const double dp = f.y_levels[k + 1] - f.y_levels[k];
    if (dm == 0.0 || dp == 0.0 || (dm > 0) != (dp > 0))
      throw Error(ErrorCode::invalid_argument, "harmonicity check needs strictly monotone levels");
    hy_max = std::max({hy_max, std::abs(dm), std::abs(dp)});
    for (std::size_t i = wrap ? 0 : 1; i < (wrap ? n : n - 1); ++i) {
      const std::size_t ip = (i + 1) % n, im = (i + n - 1) % n;
      const double vxx = (f.at(k, ip) - 2.0 * f.at(k, i) + f.at(k, im)) / (hx * hx);
      const double vyy = 2.0 * ((f.at(k + 1, i) - f.at(k, i)) / dp - (f.at(k, i) - f.at(k - 1, i)) / dm) / (dm + dp);
      c.defect = std::max(c.defect, std::abs(vxx + vyy));
    }
  }
  const Profile d4 = derivative(derivative(derivative(derivative(boundary))));
  c.budget = 2.0 * (hx * hx + hy_max * hy_max) / 12.0 * sup_norm(d4);
  c.passed = c.defect <= c.budget;
  return c;
}

Profile dirichlet_to_neumann(const Profile& v) {
  const Grid& g = v.grid();
  if (g.is_periodic())
    return fourier_multiplier(v, [](double xi) { return std::complex<double>(std::abs(xi)); });
  const std::size_t n = g.size();
  const double h = g.spacing();
  const double a = g.node(0), b = g.node(n - 1);
  const Profile d1 = derivative(v);
  const Profile d2 = derivative(d1);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.node(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double gij;
      if (j == i) {
        gij = 0.5 * d2[i];
      } else {
        const double d = g.node(j) - x;
        gij = (v[j] - v[i] - d1[i] * d) / (d * d);
      }
      s += trap_weight(j, n, h) * gij;
    }
    // finite-part integrals of 1/(t-x)^2 and 1/(t-x) over [a, b]
    // (one-sided at the two end nodes, where the log term is dropped)
    double fp2 = 0.0, pv1 = 0.0;
    if (i == 0) {
      fp2 = -1.0 / (b - x);
    } else if (i == n - 1) {
      fp2 = -1.0 / (x - a);
    } else {
      fp2 = -1.0 / (b - x) - 1.0 / (x - a);
      pv1 = std::log((b - x) / (x - a));
    }
    out[i] = -(s + v[i] * fp2 + d1[i] * pv1) / kPi;
  }
  return Profile(g, std::move(out));
}

ResidualReport bvp_residual(const WaveState& state, const LineOptions& opts) {
  const Profile& w = state.profile;
  const Profile wp = derivative(w);
  const Profile hwp = hilbert(wp, opts);
  std::vector<double> r(w.size());
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double a = 1.0 + hwp[i];
    const double d = wp[i] * wp[i] + a * a;
    // |W| below about 1e3 machine epsilons counts as zero
    if (!(d > 1e-24)) {
      bad.push_back(i);
      continue;
    }
    r[i] = 1.0 / d + 2.0 * state.mu * w[i] - 1.0;
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "bvp denominator vanishes at nodes";
    for (std::size_t k = 0; k < std::min<std::size_t>(bad.size(), 8); ++k) os << ' ' << bad[k];
    if (bad.size() > 8) os << " ... (" << bad.size() << " total)";
    throw Error(ErrorCode::singular, os.str());
  }
  return make_report(Profile(w.grid(), std::move(r)), ResidualForm::bvp);
}

BoundaryTrace conformal_trace(const Profile& w, const LineOptions& opts) { return boundary_trace(w, opts); }

}  // namespace deepwave
