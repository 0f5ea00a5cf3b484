#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deepwave/grid.hpp"

namespace deepwave {

struct BranchPoint {
  double mu = 0.0;
  /// Half crest-to-trough height, (max w - min w) / 2.
  double amplitude = 0.0;
  Profile profile;
  double residual_norm = 0.0;  // sup |F|
  int newton_iters = 0;
  double mean = 0.0;
};

/// k * 2 pi / period for k = 1, ..., n/2 - 1: the eigenvalues of Hd/dx on the
/// periodic grid other than 0 and the Nyquist value.
std::vector<double> linear_bifurcation_points(const Grid& grid);

enum class Damping { none, backtracking };

struct NewtonOptions {
  int max_iterations = 50;
  double tolerance = 1e-11;
  Damping damping = Damping::none;
  /// Newton corrections with sup norm above this are scaled down to it.
  double max_step = 0.5;
  unsigned threads = 1;
};

struct NewtonResult {
  bool converged = false;
  BranchPoint point;
  std::string diagnostic;
  /// Smallest singular value of the reduced Jacobian, reported when it is
  /// numerically singular.
  std::optional<double> min_singular_value;
};

/// Newton on F(w; mu) = 0 over even periodic profiles. Iterates are
/// symmetrized about x = 0, and the dense Jacobian (from apply_L) is reduced to
/// the n/2 + 1 even degrees of freedom.
NewtonResult newton_solve_periodic(const Profile& w0, double mu, const NewtonOptions& opts = {});

/// Solve for (w, mu) with the signed amplitude (w(0) - w(period/2)) / 2 fixed.
NewtonResult solve_fixed_amplitude(const Profile& w_guess, double mu_guess, double signed_amplitude,
                                   const NewtonOptions& opts = {});

/// Small-amplitude point on the primary branch of a 2 pi-periodic grid, from
/// the guess w = a cos x, mu = 1 - a^2.
NewtonResult onset_point(const Grid& grid, double amplitude, const NewtonOptions& opts = {});

struct Branch {
  std::vector<BranchPoint> points;
  /// Empty when every requested step succeeded.
  std::string diagnostic;
};

/// Follow the branch from start: five amplitude steps, then pseudo-arclength in
/// the (mu, amplitude) plane. Consecutive points are at most step_size apart in
/// that plane.
Branch continue_branch(const BranchPoint& start, int step_count, double step_size, const NewtonOptions& opts = {});

struct OnsetFit {
  double c2 = 0.0;  // mu - 1 = c2 a^2 + c4 a^4
  double c4 = 0.0;
  double rms = 0.0;
};

OnsetFit fit_onset_law(const std::vector<BranchPoint>& points);

}  // namespace deepwave
