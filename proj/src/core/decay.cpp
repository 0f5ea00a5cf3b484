#include "deepwave/decay.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "deepwave/error.hpp"
#include "deepwave/transforms.hpp"

namespace deepwave {

namespace {

struct Line {
  double slope;
  double rms;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxx > 0 ? sxy / sxx : 0.0;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (my + slope * (x[i] - mx));
    ss += r * r;
  }
  return {slope, std::sqrt(ss / m)};
}

// Indices of one tail, ordered by increasing |x|.
std::vector<std::size_t> tail_indices(const Grid& g, double lo, double hi, std::size_t skip, bool right) {
  std::vector<std::size_t> idx;
  const std::size_t n = g.size();
  if (right) {
    for (std::size_t i = n / 2; i + skip < n; ++i)
      if (g.node(i) >= lo && g.node(i) <= hi) idx.push_back(i);
  } else {
    for (std::size_t i = n / 2; i-- > skip;)
      if (-g.node(i) >= lo && -g.node(i) <= hi) idx.push_back(i);
  }
  return idx;
}

bool needs_envelope(const Profile& v, const std::vector<std::size_t>& idx) {
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (v[idx[k]] == 0.0) return true;
    if (k > 0 && (v[idx[k]] > 0) != (v[idx[k - 1]] > 0)) return true;
  }
  return false;
}

// Local maxima of |v| along one tail (interior points of the ordered list).
std::vector<std::size_t> envelope_points(const Profile& v, const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
    const double a = std::abs(v[idx[k - 1]]), b = std::abs(v[idx[k]]), c = std::abs(v[idx[k + 1]]);
    if (b > 0 && b >= a && b >= c && (b > a || b > c)) out.push_back(idx[k]);
  }
  return out;
}

}  // namespace

DecayFit decay_rate_fit(const Profile& v, std::optional<FitWindow> window) {
  const Grid& g = v.grid();
  if (g.is_periodic()) throw Error(ErrorCode::domain, "decay_rate_fit requires a line grid");
  const std::size_t n = g.size();
  const double L = g.half_width();
  const std::size_t skip = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(n))));
  // largest |x| still inside the retained nodes on both sides
  const double x_max = std::min(-g.node(skip), g.node(n - 1 - skip));
  FitWindow w = window.value_or(FitWindow{L / 4.0, 3.0 * L / 4.0});
  if (!(w.lo > 0.0) || !(w.hi > w.lo)) {
    std::ostringstream os;
    os << "invalid fit window [" << w.lo << ", " << w.hi << "]";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  w.hi = std::min(w.hi, x_max);

  DecayFit fit;
  fit.x_lo = w.lo;
  fit.x_hi = w.hi;
  std::vector<std::size_t> used;
  for (bool right : {false, true}) {
    auto idx = tail_indices(g, w.lo, w.hi, skip, right);
    if (needs_envelope(v, idx)) {
      fit.envelope = true;
      idx = envelope_points(v, idx);
    }
    used.insert(used.end(), idx.begin(), idx.end());
  }
  if (used.size() < 8) {
    std::ostringstream os;
    os << "decay fit on [" << w.lo << ", " << w.hi << "] has only " << used.size() << " usable points";
    throw Error(ErrorCode::insufficient_data, os.str());
  }
  std::vector<double> lx, ly, ox, oy;
  const double mid = 0.5 * (w.lo + w.hi);
  for (std::size_t i : used) {
    const double ax = std::abs(g.node(i));
    lx.push_back(std::log(ax));
    ly.push_back(std::log(std::abs(v[i])));
    if (ax >= mid) {
      ox.push_back(lx.back());
      oy.push_back(ly.back());
    }
  }
  const Line all = least_squares(lx, ly);
  fit.rho = -all.slope;
  fit.fit_residual = all.rms;
  fit.points = used.size();
  if (ox.size() >= 2) fit.superalgebraic = least_squares(ox, oy).slope < -6.0;
  return fit;
}

double weighted_holder_norm(const Profile& v, int k, double alpha, double rho, std::size_t max_offsets) {
  if (k < 0 || k > 1) throw Error(ErrorCode::invalid_argument, "holder order k must be 0 or 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::invalid_argument, "holder exponent must lie in (0, 1)");
  const Grid& g = v.grid();
  const std::size_t n = g.size();
  std::vector<double> weight(n);
  for (std::size_t i = 0; i < n; ++i) weight[i] = std::pow(1.0 + g.node(i) * g.node(i), 0.5 * rho);

  double norm = 0.0;
  Profile dj = v;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) dj = derivative(dj);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s = std::max(s, weight[i] * std::abs(dj[i]));
    norm += s;
  }

  const double h = g.spacing();
  const auto reach = static_cast<std::size_t>(std::floor(1.0 / h + 1e-12));
  std::set<std::size_t> offsets;
  if (reach <= max_offsets) {
    for (std::size_t d = 1; d <= reach; ++d) offsets.insert(d);
  } else {
    const double ratio = std::pow(static_cast<double>(reach), 1.0 / static_cast<double>(max_offsets - 1));
    double d = 1.0;
    for (std::size_t m = 0; m < max_offsets; ++m, d *= ratio)
      offsets.insert(std::min(reach, static_cast<std::size_t>(std::llround(d))));
    offsets.insert(reach);
  }
  double semi = 0.0;
  for (std::size_t d : offsets) {
    if (d >= n) break;
    const double denom = std::pow(static_cast<double>(d) * h, alpha);
    for (std::size_t i = 0; i < n; ++i) {
      const double diff_plus = i + d < n ? std::abs(dj[i] - dj[i + d]) : 0.0;
      const double diff_minus = i >= d ? std::abs(dj[i] - dj[i - d]) : 0.0;
      semi = std::max(semi, weight[i] * std::max(diff_plus, diff_minus) / denom);
    }
  }
  return norm + semi;
}

}  // namespace deepwave
