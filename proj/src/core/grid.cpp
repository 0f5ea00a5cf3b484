#include "deepwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "deepwave/error.hpp"

namespace deepwave {

namespace {

void check_size(std::size_t n) {
  if (n < 8 || (n & (n - 1)) != 0) {
    std::ostringstream os;
    os << "grid size must be a power of two >= 8, got " << n;
    throw Error(ErrorCode::invalid_argument, os.str());
  }
}

void check_length(double len, const char* what) {
  if (!std::isfinite(len) || len <= 0.0) {
    std::ostringstream os;
    os << what << " must be positive and finite, got " << len;
    throw Error(ErrorCode::invalid_argument, os.str());
  }
}

}  // namespace

Grid Grid::periodic(std::size_t n, double period) {
  check_size(n);
  check_length(period, "period");
  Data d{GridKind::periodic, period, period / static_cast<double>(n), std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) d.nodes[j] = static_cast<double>(j) * d.spacing;
  return Grid(std::make_shared<const Data>(std::move(d)));
}

Grid Grid::line(std::size_t n, double half_width) {
  check_size(n);
  check_length(half_width, "half_width");
  const double period = 2.0 * half_width;
  Data d{GridKind::line, period, period / static_cast<double>(n), std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) d.nodes[j] = -half_width + static_cast<double>(j) * d.spacing;
  // the centre node must be exactly zero so that mirrored samples line up
  d.nodes[n / 2] = 0.0;
  return Grid(std::make_shared<const Data>(std::move(d)));
}

std::vector<int> Grid::wavenumbers() const {
  const int n = static_cast<int>(size());
  std::vector<int> k(size());
  for (int j = 0; j < n; ++j) k[j] = j < n / 2 ? j : j - n;
  return k;
}

double Grid::angular_wavenumber(int k) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / period();
}

std::size_t Grid::mirror(std::size_t i) const noexcept {
  const std::size_t n = size();
  if (is_periodic()) return (n - i) % n;
  if (i == 0) return 0;
  return n - i;
}

Grid Grid::inner_half() const {
  if (is_periodic()) throw Error(ErrorCode::domain, "inner_half requires a line grid");
  return line(size() / 2, 0.5 * half_width());
}

bool Grid::operator==(const Grid& other) const noexcept {
  if (data_ == other.data_) return true;
  return kind() == other.kind() && size() == other.size() && period() == other.period();
}

Profile::Profile(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    std::ostringstream os;
    os << "profile has " << values_.size() << " values for a grid of " << grid_.size() << " nodes";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      std::ostringstream os;
      os << "non-finite profile value " << values_[i] << " at node " << i << " (x = " << grid_.node(i) << ")";
      throw Error(ErrorCode::non_finite, os.str());
    }
  }
}

Profile Profile::zeros(const Grid& grid) { return Profile(grid, std::vector<double>(grid.size(), 0.0)); }

Profile Profile::constant(const Grid& grid, double c) {
  return Profile(grid, std::vector<double>(grid.size(), c));
}

Profile Profile::sample(const Grid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.node(i));
  return Profile(grid, std::move(v));
}

Profile Profile::operator-() const {
  Profile r = *this;
  for (double& x : r.values_) x = -x;
  return r;
}

Profile& Profile::operator+=(const Profile& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

Profile& Profile::operator-=(const Profile& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

Profile& Profile::operator*=(double s) {
  for (double& x : values_) x *= s;
  return *this;
}

Profile operator+(Profile a, const Profile& b) { return a += b; }
Profile operator-(Profile a, const Profile& b) { return a -= b; }
Profile operator*(double s, Profile a) { return a *= s; }

Profile operator*(const Profile& a, const Profile& b) {
  require_same_grid(a, b);
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] * b[i];
  return Profile(a.grid(), std::move(r));
}

Profile times_x(const Profile& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = v.grid().node(i) * v[i];
  return Profile(v.grid(), std::move(r));
}

WaveState::WaveState(Profile w, double m) : profile(std::move(w)), mu(m) {
  if (!std::isfinite(mu)) throw Error(ErrorCode::non_finite, "mu must be finite");
}

void require_same_grid(const Profile& a, const Profile& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::invalid_argument, "profiles live on different grids");
}

double pairing(const Profile& u, const Profile& v) {
  require_same_grid(u, v);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return u.grid().spacing() * s;
}

double integral(const Profile& v) {
  double s = 0.0;
  for (double x : v.values()) s += x;
  return v.grid().spacing() * s;
}

double l2_norm(const Profile& v) { return std::sqrt(pairing(v, v)); }

double sup_norm(const Profile& v) {
  double m = 0.0;
  for (double x : v.values()) m = std::max(m, std::abs(x));
  return m;
}

double mean(const Profile& v) { return integral(v) / v.grid().period(); }

}  // namespace deepwave
