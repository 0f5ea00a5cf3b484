#include "deepwave/stokes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "deepwave/error.hpp"
#include "deepwave/linearized.hpp"
#include "deepwave/steady.hpp"

namespace deepwave {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

void require_periodic(const Grid& g, const char* op) {
  if (!g.is_periodic()) throw Error(ErrorCode::domain, std::string(op) + " requires a periodic grid");
}

Profile symmetrize(const Profile& w) {
  const Grid& g = w.grid();
  std::vector<double> s(w.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = 0.5 * (w[i] + w[g.mirror(i)]);
  return Profile(g, std::move(s));
}

// Even profiles are determined by nodes 0..n/2.
VectorXd restrict_even(const Profile& v) {
  const std::size_t m = v.size() / 2 + 1;
  VectorXd r(static_cast<Index>(m));
  for (std::size_t i = 0; i < m; ++i) r(static_cast<Index>(i)) = v[i];
  return r;
}

Profile extend_even(const Grid& g, const VectorXd& r) {
  const std::size_t n = g.size();
  std::vector<double> v(n);
  for (std::size_t i = 0; i <= n / 2; ++i) v[i] = r(static_cast<Index>(i));
  for (std::size_t i = n / 2 + 1; i < n; ++i) v[i] = v[n - i];
  return Profile(g, std::move(v));
}

// Rows 0..n/2 of L restricted to even directions.
MatrixXd reduced_jacobian(const WaveState& s, unsigned threads) {
  const Grid& g = s.profile.grid();
  const std::size_t n = g.size(), m = n / 2 + 1;
  MatrixXd j(static_cast<Index>(m), static_cast<Index>(m));
  auto column = [&](std::size_t c) {
    std::vector<double> e(n, 0.0);
    e[c] = 1.0;
    e[g.mirror(c)] = 1.0;
    const Profile col = apply_L(Profile(g, std::move(e)), s);
    for (std::size_t i = 0; i < m; ++i) j(static_cast<Index>(i), static_cast<Index>(c)) = col[i];
  };
  if (threads <= 1) {
    for (std::size_t c = 0; c < m; ++c) column(c);
  } else {
    const MatrixXd full = assemble_L(s, LineOptions::unchecked(), threads).entries;
    for (std::size_t c = 0; c < m; ++c) {
      const std::size_t mc = g.mirror(c);
      for (std::size_t i = 0; i < m; ++i) {
        double v = full(static_cast<Index>(i), static_cast<Index>(c));
        if (mc != c) v += full(static_cast<Index>(i), static_cast<Index>(mc));
        j(static_cast<Index>(i), static_cast<Index>(c)) = v;
      }
    }
  }
  return j;
}

// N(w) = w + w Hw' + H(w w'), so that dF/dmu = -N.
Profile nonlinear_part(const Profile& w) {
  const Profile wp = derivative(w);
  return w + w * hilbert_periodic(wp) + hilbert_periodic(w * wp);
}

double half_height(const Profile& w) {
  const auto v = w.values();
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return 0.5 * (*hi - *lo);
}

double signed_amplitude(const Profile& w) { return 0.5 * (w[0] - w[w.size() / 2]); }

BranchPoint make_point(const Profile& w, double mu, double residual, int iters) {
  return BranchPoint{mu, half_height(w), w, residual, iters, mean(w)};
}

double smallest_singular_value(const MatrixXd& a) {
  Eigen::JacobiSVD<MatrixXd> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

VectorXd cap_step(VectorXd d, double max_step) {
  const double s = d.cwiseAbs().maxCoeff();
  if (s > max_step) d *= max_step / s;
  return d;
}

// Extra scalar equation g_w . w_even + g_mu mu = rhs appended to F = 0.
struct Constraint {
  VectorXd g_w;
  double g_mu;
  double rhs;
};

NewtonResult bordered_newton(Profile w, double mu, const Constraint& con, const NewtonOptions& opts) {
  const Grid& g = w.grid();
  const auto m = static_cast<Index>(g.size() / 2 + 1);
  w = symmetrize(w);
  double res = 0.0;
  for (int it = 0;; ++it) {
    const WaveState s(w, mu);
    const Profile f = residual_deep(s).residual;
    const VectorXd fr = restrict_even(f);
    const double cr = con.g_w.dot(restrict_even(w)) + con.g_mu * mu - con.rhs;
    res = std::max(sup_norm(f), std::abs(cr));
    if (res <= opts.tolerance) return {true, make_point(w, mu, sup_norm(f), it), {}, std::nullopt};
    if (it >= opts.max_iterations) break;
    MatrixXd a(m + 1, m + 1);
    a.topLeftCorner(m, m) = reduced_jacobian(s, opts.threads);
    a.topRightCorner(m, 1) = -restrict_even(nonlinear_part(w));
    a.bottomLeftCorner(1, m) = con.g_w.transpose();
    a(m, m) = con.g_mu;
    VectorXd rhs(m + 1);
    rhs << -fr, -cr;
    Eigen::PartialPivLU<MatrixXd> lu(a);
    if (!(lu.rcond() > 1e-15)) {
      const double smin = smallest_singular_value(a);
      std::ostringstream os;
      os << "singular bordered Jacobian at iteration " << it << ", smallest singular value " << smin;
      return {false, make_point(w, mu, sup_norm(f), it), os.str(), smin};
    }
    VectorXd d = lu.solve(rhs);
    const double scale = std::min(1.0, opts.max_step / std::max(1e-300, d.head(m).cwiseAbs().maxCoeff()));
    d *= scale;
    w = symmetrize(w + extend_even(g, d.head(m)));
    mu += d(m);
  }
  std::ostringstream os;
  os << "no convergence in " << opts.max_iterations << " iterations, residual " << res;
  return {false, make_point(w, mu, sup_norm(residual_deep(WaveState(w, mu)).residual), opts.max_iterations),
          os.str(), std::nullopt};
}

}  // namespace

std::vector<double> linear_bifurcation_points(const Grid& grid) {
  require_periodic(grid, "linear_bifurcation_points");
  std::vector<double> pts;
  for (int k = 1; k < static_cast<int>(grid.size() / 2); ++k) pts.push_back(grid.angular_wavenumber(k));
  return pts;
}

NewtonResult newton_solve_periodic(const Profile& w0, double mu, const NewtonOptions& opts) {
  require_periodic(w0.grid(), "newton_solve_periodic");
  const Grid& g = w0.grid();
  Profile w = symmetrize(w0);
  double res = 0.0;
  for (int it = 0;; ++it) {
    const WaveState s(w, mu);
    const Profile f = residual_deep(s).residual;
    res = sup_norm(f);
    if (res <= opts.tolerance) return {true, make_point(w, mu, res, it), {}, std::nullopt};
    if (it >= opts.max_iterations) break;
    const MatrixXd j = reduced_jacobian(s, opts.threads);
    Eigen::PartialPivLU<MatrixXd> lu(j);
    if (!(lu.rcond() > 1e-15)) {
      const double smin = smallest_singular_value(j);
      std::ostringstream os;
      os << "singular Jacobian at iteration " << it << ", smallest singular value " << smin;
      return {false, make_point(w, mu, res, it), os.str(), smin};
    }
    const VectorXd d = cap_step(lu.solve(VectorXd(-restrict_even(f))), opts.max_step);
    double t = 1.0;
    Profile trial = symmetrize(w + extend_even(g, d));
    if (opts.damping == Damping::backtracking) {
      const double r0 = l2_norm(f);
      while (t > 1e-6 && l2_norm(residual_deep(WaveState(trial, mu)).residual) > (1.0 - 1e-4 * t) * r0) {
        t *= 0.5;
        trial = symmetrize(w + extend_even(g, t * d));
      }
    }
    w = std::move(trial);
  }
  std::ostringstream os;
  os << "no convergence in " << opts.max_iterations << " iterations, residual " << res;
  return {false, make_point(w, mu, res, opts.max_iterations), os.str(), std::nullopt};
}

NewtonResult solve_fixed_amplitude(const Profile& w_guess, double mu_guess, double a, const NewtonOptions& opts) {
  require_periodic(w_guess.grid(), "solve_fixed_amplitude");
  const auto m = static_cast<Index>(w_guess.size() / 2 + 1);
  VectorXd gw = VectorXd::Zero(m);
  gw(0) = 0.5;
  gw(m - 1) = -0.5;
  return bordered_newton(w_guess, mu_guess, {gw, 0.0, a}, opts);
}

NewtonResult onset_point(const Grid& grid, double amplitude, const NewtonOptions& opts) {
  require_periodic(grid, "onset_point");
  const Profile guess = Profile::sample(grid, [amplitude](double x) { return amplitude * std::cos(x); });
  return solve_fixed_amplitude(guess, 1.0 - amplitude * amplitude, amplitude, opts);
}

Branch continue_branch(const BranchPoint& start, int step_count, double step_size, const NewtonOptions& opts) {
  require_periodic(start.profile.grid(), "continue_branch");
  if (step_count < 0 || !(step_size > 0.0)) throw Error(ErrorCode::invalid_argument, "bad continuation parameters");
  Branch b;
  b.points.push_back(start);
  const int amplitude_steps = 5;
  const double sign = signed_amplitude(start.profile) < 0 ? -1.0 : 1.0;
  double ds = step_size;
  for (int k = 0; k < step_count; ++k) {
    const BranchPoint& cur = b.points.back();
    const double a_cur = sign * signed_amplitude(cur.profile);
    std::optional<NewtonResult> next;
    for (int attempt = 0; attempt < 6 && !next; ++attempt) {
      if (attempt > 0) ds *= 0.5;
      NewtonResult r{false, cur, {}, std::nullopt};
      if (k < amplitude_steps || b.points.size() < 2) {
        // predictor for mu from the secant, when there is one
        double mu_pred = cur.mu;
        if (b.points.size() >= 2) {
          const BranchPoint& prev = b.points[b.points.size() - 2];
          const double da = a_cur - sign * signed_amplitude(prev.profile);
          if (da != 0.0) mu_pred += (cur.mu - prev.mu) / da * ds;
        }
        r = solve_fixed_amplitude(cur.profile, mu_pred, sign * (a_cur + ds), opts);
      } else {
        const BranchPoint& prev = b.points[b.points.size() - 2];
        double tm = cur.mu - prev.mu;
        double ta = a_cur - sign * signed_amplitude(prev.profile);
        const double tn = std::hypot(tm, ta);
        tm /= tn;
        ta /= tn;
        const Profile w_pred = cur.profile + (ds / tn) * (cur.profile - prev.profile);
        const double mu_pred = cur.mu + ds * tm;
        const double a_pred = a_cur + ds * ta;
        const auto m = static_cast<Index>(cur.profile.size() / 2 + 1);
        VectorXd gw = VectorXd::Zero(m);
        gw(0) = 0.5 * sign * ta;
        gw(m - 1) = -0.5 * sign * ta;
        r = bordered_newton(w_pred, mu_pred, {gw, tm, tm * mu_pred + ta * a_pred}, opts);
      }
      if (!r.converged) continue;
      const double chord = std::hypot(r.point.mu - cur.mu, sign * signed_amplitude(r.point.profile) - a_cur);
      if (chord > step_size) continue;
      next = std::move(r);
    }
    if (!next) {
      std::ostringstream os;
      os << "continuation stopped after " << k << " of " << step_count << " steps near mu = " << b.points.back().mu;
      b.diagnostic = os.str();
      break;
    }
    b.points.push_back(next->point);
    ds = std::min(step_size, 2.0 * ds);
  }
  return b;
}

OnsetFit fit_onset_law(const std::vector<BranchPoint>& points) {
  if (points.size() < 2) throw Error(ErrorCode::insufficient_data, "onset fit needs at least two branch points");
  MatrixXd a(static_cast<Index>(points.size()), 2);
  VectorXd y(static_cast<Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double a2 = points[i].amplitude * points[i].amplitude;
    a(static_cast<Index>(i), 0) = a2;
    a(static_cast<Index>(i), 1) = a2 * a2;
    y(static_cast<Index>(i)) = points[i].mu - 1.0;
  }
  const VectorXd c = a.colPivHouseholderQr().solve(y);
  OnsetFit f{c(0), c(1), 0.0};
  f.rms = std::sqrt((a * c - y).squaredNorm() / static_cast<double>(points.size()));
  return f;
}

}  // namespace deepwave
