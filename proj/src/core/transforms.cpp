#include "deepwave/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "deepwave/error.hpp"
#include "spectral.hpp"

namespace deepwave {

namespace {

// m(xi) applied on the half spectrum; keep_nyquist selects whether the n/2
// coefficient is multiplied by Re m(xi_{n/2}) or dropped.
Profile apply_half(const Profile& v, const std::function<std::complex<double>(double)>& m, bool keep_nyquist) {
  const Grid& g = v.grid();
  const std::size_t n = g.size();
  detail::Spectrum s = detail::rfft(v.values());
  for (std::size_t k = 0; k < n / 2; ++k) s[k] *= m(g.angular_wavenumber(static_cast<int>(k)));
  const double xi_nyq = g.angular_wavenumber(static_cast<int>(n / 2));
  s[n / 2] = keep_nyquist ? s[n / 2] * m(xi_nyq).real() : 0.0;
  return Profile(g, detail::irfft(std::move(s), n));
}

}  // namespace

void check_decay(const Profile& v, double threshold, const char* what) {
  if (!(threshold < std::numeric_limits<double>::infinity())) return;
  const double peak = sup_norm(v);
  const double left = std::abs(v[0]);
  const double right = std::abs(v[v.size() - 1]);
  const double limit = threshold * peak;
  if (left > limit || right > limit) {
    std::ostringstream os;
    os.precision(6);
    os << what << " does not decay toward the endpoints: |v(" << v.grid().node(0) << ")| = " << left << ", |v("
       << v.grid().node(v.size() - 1) << ")| = " << right << ", limit " << limit << " (" << threshold
       << " * max|v|)";
    throw Error(ErrorCode::decay_violation, os.str());
  }
}

Profile hilbert_periodic(const Profile& v) {
  if (!v.grid().is_periodic()) throw Error(ErrorCode::domain, "hilbert_periodic requires a periodic grid");
  return apply_half(
      v, [](double xi) { return xi > 0 ? std::complex<double>(0, -1) : std::complex<double>(0); }, false);
}

Profile hilbert_line(const Profile& v, const LineOptions& opts) {
  if (v.grid().is_periodic()) throw Error(ErrorCode::domain, "hilbert_line requires a line grid");
  check_decay(v, opts.tail_threshold);
  if (opts.method == HilbertMethod::periodized) {
    return apply_half(
        v, [](double xi) { return xi > 0 ? std::complex<double>(0, -1) : std::complex<double>(0); }, false);
  }
  return Profile(v.grid(), detail::pv_odd_even(v.values()));
}

Profile hilbert(const Profile& v, const LineOptions& opts) {
  return v.grid().is_periodic() ? hilbert_periodic(v) : hilbert_line(v, opts);
}

Profile derivative(const Profile& v) {
  return apply_half(v, [](double xi) { return std::complex<double>(0, xi); }, false);
}

Profile derivative_detrended(const Profile& v) {
  const Grid& g = v.grid();
  if (g.is_periodic()) return derivative(v);
  const std::size_t n = g.size();
  const double lo = v[0];
  const double hi = v[n - 1];
  const double sigma = g.half_width() / 8.0;
  const double t_lo = std::tanh(g.node(0) / sigma);
  const double t_hi = std::tanh(g.node(n - 1) / sigma);
  // S(x) = m + d tanh(x / sigma) passes through both endpoint samples
  const double d = (hi - lo) / (t_hi - t_lo);
  const double m = lo - d * t_lo;
  std::vector<double> rest(n), slope(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = std::tanh(g.node(i) / sigma);
    rest[i] = v[i] - (m + d * t);
    slope[i] = d * (1.0 - t * t) / sigma;
  }
  Profile dr = derivative(Profile(g, std::move(rest)));
  return dr + Profile(g, std::move(slope));
}

Profile conjugate_derivative(const Profile& v, const LineOptions& opts) {
  if (v.grid().is_periodic()) {
    return apply_half(v, [](double xi) { return std::complex<double>(std::abs(xi)); }, true);
  }
  return hilbert_line(derivative(v), opts);
}

Profile fourier_multiplier(const Profile& v, const std::function<std::complex<double>(double)>& m) {
  return apply_half(v, m, true);
}

}  // namespace deepwave
