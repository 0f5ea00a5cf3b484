#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace deepwave {

enum class GridKind { periodic, line };

/// Uniform sampling of either one period [0, period) of a periodic function
/// or a truncated real line [-L, L).
///
/// Wavenumbers use the FFT layout {0, 1, ..., n/2-1, -n/2, ..., -1}; the
/// angular wavenumber of integer k is 2*pi*k/period(), where period() is 2L on
/// line grids (the line is treated as one period by every FFT-based transform).
class Grid {
 public:
  static Grid periodic(std::size_t n, double period);
  static Grid line(std::size_t n, double half_width);

  GridKind kind() const noexcept { return data_->kind; }
  bool is_periodic() const noexcept { return data_->kind == GridKind::periodic; }
  std::size_t size() const noexcept { return data_->nodes.size(); }
  double spacing() const noexcept { return data_->spacing; }
  /// Length of the sampled interval: the period, or 2L for line grids.
  double period() const noexcept { return data_->period; }
  /// L for line grids, period/2 for periodic ones.
  double half_width() const noexcept { return 0.5 * data_->period; }
  double node(std::size_t i) const { return data_->nodes[i]; }
  std::span<const double> nodes() const noexcept { return data_->nodes; }

  std::vector<int> wavenumbers() const;
  double angular_wavenumber(int k) const noexcept;

  /// Index of the node at -x_i (periodic wrap). On a line grid node 0 (x = -L)
  /// has no mirror image and maps to itself.
  std::size_t mirror(std::size_t i) const noexcept;

  /// Line grid on the central half of this one: same spacing, n/2 nodes,
  /// half-width L/2. The first retained node has index size()/4.
  Grid inner_half() const;

  bool operator==(const Grid& other) const noexcept;

 private:
  struct Data {
    GridKind kind;
    double period;
    double spacing;
    std::vector<double> nodes;
  };
  explicit Grid(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// Real samples of a function on a grid. Every value is finite.
class Profile {
 public:
  Profile(Grid grid, std::vector<double> values);

  static Profile zeros(const Grid& grid);
  static Profile constant(const Grid& grid, double c);
  static Profile sample(const Grid& grid, const std::function<double(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  Profile operator-() const;
  Profile& operator+=(const Profile& o);
  Profile& operator-=(const Profile& o);
  Profile& operator*=(double s);

 private:
  Grid grid_;
  std::vector<double> values_;
};

Profile operator+(Profile a, const Profile& b);
Profile operator-(Profile a, const Profile& b);
Profile operator*(double s, Profile a);
/// Pointwise product.
Profile operator*(const Profile& a, const Profile& b);
/// Multiplication by the abscissa x.
Profile times_x(const Profile& v);

/// The (w, mu) pair of the steady equation; mu = g/c^2 may take any finite sign.
struct WaveState {
  WaveState(Profile w, double mu);
  Profile profile;
  double mu;
};

void require_same_grid(const Profile& a, const Profile& b);

/// Trapezoid pairing <u, v> = h * sum u_i v_i, used by every module.
double pairing(const Profile& u, const Profile& v);
double integral(const Profile& v);
double l2_norm(const Profile& v);
double sup_norm(const Profile& v);
double mean(const Profile& v);

}  // namespace deepwave
