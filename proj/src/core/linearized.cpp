#include "deepwave/linearized.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "deepwave/error.hpp"
#include "deepwave/steady.hpp"

namespace deepwave {

namespace {

Eigen::Map<const Eigen::VectorXd> as_vector(const Profile& p) {
  return {p.values().data(), static_cast<Eigen::Index>(p.size())};
}

Profile from_vector(const Grid& g, const Eigen::VectorXd& v) {
  return Profile(g, std::vector<double>(v.data(), v.data() + v.size()));
}

void require_positive_margin(const Profile& a, const char* op) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0)) {
      std::ostringstream os;
      os << op << ": 1 + Hw' = " << a[i] << " <= 0 at node " << i << " (x = " << a.grid().node(i) << ")";
      throw Error(ErrorCode::singular, os.str());
    }
  }
}

}  // namespace

BoundaryTrace::BoundaryTrace(Profile r, Profile i) : re(std::move(r)), im(std::move(i)) { require_same_grid(re, im); }

BoundaryTrace boundary_trace(const Profile& w, const LineOptions& opts) {
  Profile wp = derivative(w);
  Profile a = hilbert(wp, opts) + Profile::constant(w.grid(), 1.0);
  return BoundaryTrace(std::move(a), std::move(wp));
}

Profile LinearOperatorMatrix::apply(const Profile& v) const {
  if (!(v.grid() == grid)) throw Error(ErrorCode::invalid_argument, "operator and profile grids differ");
  return from_vector(grid, entries * as_vector(v));
}

Profile apply_L(const Profile& v, const WaveState& state, const LineOptions& opts) {
  const Profile& w = state.profile;
  require_same_grid(v, w);
  const double mu = state.mu;
  const Profile hvp = hilbert(derivative(v), opts);
  const Profile hwp = hilbert(derivative(w), opts);
  const Profile hvw = hilbert(derivative(v * w), opts);
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = hvp[i] - mu * (v[i] + w[i] * hvp[i] + v[i] * hwp[i] + hvw[i]);
  return Profile(v.grid(), std::move(r));
}

Eigen::MatrixXd operator_matrix(const Grid& g, const std::function<Profile(const Profile&)>& op, unsigned threads) {
  const std::size_t n = g.size();
  Eigen::MatrixXd m(n, n);
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> e(n, 0.0);
    for (std::size_t j = begin; j < end; ++j) {
      e[j] = 1.0;
      const Profile col = op(Profile(g, e));
      e[j] = 0.0;
      for (std::size_t i = 0; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    work(0, n);
    return m;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t b = t * chunk, e = std::min(n, b + chunk);
    if (b < e) pool.emplace_back(work, b, e);
  }
  for (auto& th : pool) th.join();
  return m;
}

LinearOperatorMatrix assemble_L(const WaveState& state, const LineOptions& opts, unsigned threads) {
  const Grid& g = state.profile.grid();
  return {g, operator_matrix(g, [&](const Profile& v) { return apply_L(v, state, opts); }, threads), "L"};
}

LinearOperatorMatrix assemble_L_structured(const WaveState& state, const LineOptions& opts) {
  const Grid& g = state.profile.grid();
  const Eigen::MatrixXd hd = operator_matrix(g, [&](const Profile& v) { return hilbert(v, opts); }) *
                             operator_matrix(g, [](const Profile& v) { return derivative(v); });
  const Eigen::VectorXd w = as_vector(state.profile);
  const Eigen::VectorXd hwp = as_vector(hilbert(derivative(state.profile), opts));
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd inner = Eigen::MatrixXd::Identity(n, n);
  inner += w.asDiagonal() * hd;
  inner.diagonal() += hwp;
  inner += hd * w.asDiagonal();
  return {g, hd - state.mu * inner, "L"};
}

Profile plotnikov_forward(const Profile& v, const Profile& w, const LineOptions& opts) {
  require_same_grid(v, w);
  const BoundaryTrace W = boundary_trace(w, opts);
  const Profile hv = hilbert(v, opts);
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = W.re[i] * v[i] + W.im[i] * hv[i];
  return Profile(v.grid(), std::move(r));
}

Profile plotnikov_inverse(const Profile& u, const Profile& w, const LineOptions& opts) {
  require_same_grid(u, w);
  const BoundaryTrace W = boundary_trace(w, opts);
  require_positive_margin(W.re, "plotnikov_inverse");
  const Profile hu = hilbert(u, opts);
  std::vector<double> r(u.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double d = W.re[i] * W.re[i] + W.im[i] * W.im[i];
    r[i] = (W.re[i] * u[i] - W.im[i] * hu[i]) / d;
  }
  return Profile(u.grid(), std::move(r));
}

Profile potential_G(const WaveState& state, const LineOptions& opts) {
  const BoundaryTrace W = boundary_trace(state.profile, opts);
  require_positive_margin(W.re, "potential_G");
  const Profile da = derivative(W.re);
  const Profile db = derivative(W.im);
  std::vector<double> g(W.re.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = W.re[i], b = W.im[i];
    const double d = a * a + b * b;
    g[i] = (db[i] * a - da[i] * b) / d + state.mu * d * a;
  }
  return Profile(state.profile.grid(), std::move(g));
}

IdentityReport conjugation_check(const Profile& u, const Profile& v, const WaveState& state, double tolerance,
                                 const LineOptions& opts) {
  const Profile& w = state.profile;
  const Profile pv = plotnikov_forward(v, w, opts);
  const Profile pu = plotnikov_forward(u, w, opts);
  const double lhs = pairing(apply_L(pv, state, opts), pu);
  const Profile G = potential_G(state, opts);
  const double rhs = pairing(hilbert(derivative(v), opts) - G * v, u);
  return make_identity("conjugation", lhs, rhs, tolerance);
}

LinearOperatorMatrix schrodinger_operator(const Profile& G, double mu) {
  const Grid& g = G.grid();
  const std::size_t n = g.size();
  std::vector<double> e0(n, 0.0);
  e0[0] = 1.0;
  // first column of the circulant |xi| matrix
  const Profile c = fourier_multiplier(Profile(g, e0), [](double xi) { return std::complex<double>(std::abs(xi)); });
  Eigen::MatrixXd m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c[(i + n - j) % n];
  for (std::size_t i = 0; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += mu - G[i];
  return {g, std::move(m), "schrodinger"};
}

SchrodingerSpectrum schrodinger_spectrum(const Profile& G, double mu, bool with_vectors) {
  const LinearOperatorMatrix op = schrodinger_operator(G, mu);
  const Eigen::MatrixXd sym = 0.5 * (op.entries + op.entries.transpose());
  SchrodingerSpectrum s;
  const double norm = op.entries.norm();
  s.asymmetry = norm > 0 ? (0.5 * (op.entries - op.entries.transpose())).norm() / norm : 0.0;
  if (s.asymmetry > 1e-8) {
    std::ostringstream os;
    os << "operator asymmetry " << s.asymmetry << " exceeds 1e-8";
    s.warning = os.str();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, with_vectors ? Eigen::ComputeEigenvectors
                                                                       : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::singular, "eigensolver did not converge");
  s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  if (with_vectors) s.eigenvectors = es.eigenvectors();
  return s;
}

LinearSolveResult solve_linear_inhomogeneous(const Profile& G_rhs, double mu) {
  const Grid& g = G_rhs.grid();
  if (g.is_periodic()) throw Error(ErrorCode::domain, "solve_linear_inhomogeneous requires a line grid");
  if (!(mu > 0.0)) throw Error(ErrorCode::domain, "solve_linear_inhomogeneous requires mu > 0");
  const std::size_t n = g.size();
  const double h = g.spacing();
  const Profile dG = derivative(G_rhs);
  std::vector<double> fc(n), fs(n), dfc(n), dfs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(mu * g.node(i)), s = std::sin(mu * g.node(i));
    fc[i] = c * G_rhs[i];
    fs[i] = s * G_rhs[i];
    dfc[i] = -mu * s * G_rhs[i] + c * dG[i];
    dfs[i] = mu * c * G_rhs[i] + s * dG[i];
  }
  // Ic(x) = int_x^{x_last} cos(mu t) G dt, Is likewise: cumulative trapezoid
  // from the right with the first Euler-Maclaurin end correction
  std::vector<double> ic(n, 0.0), is(n, 0.0);
  for (std::size_t i = n - 1; i-- > 0;) {
    ic[i] = ic[i + 1] + 0.5 * h * (fc[i] + fc[i + 1]);
    is[i] = is[i + 1] + 0.5 * h * (fs[i] + fs[i + 1]);
  }
  const double k = h * h / 12.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    ic[i] -= k * (dfc[n - 1] - dfc[i]);
    is[i] -= k * (dfs[n - 1] - dfs[i]);
  }
  std::vector<double> S(n), dS(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(mu * g.node(i)), s = std::sin(mu * g.node(i));
    S[i] = s * ic[i] - c * is[i];
    dS[i] = mu * (c * ic[i] + s * is[i]);
  }
  const Profile hS = hilbert_line(Profile(g, std::move(dS)), LineOptions::unchecked());
  std::vector<double> V(n);
  for (std::size_t i = 0; i < n; ++i) V[i] = hS[i] / mu + S[i];
  return {Profile(g, std::move(V)), 2.0 * std::abs(G_rhs[n - 1]) / mu};
}

Profile solve_linear_dense(const Profile& G_rhs, double mu) {
  const LinearOperatorMatrix op = schrodinger_operator(Profile::constant(G_rhs.grid(), mu), mu);
  // schrodinger_operator adds mu - G = 0 here; subtract mu for Hd/dx - mu
  Eigen::MatrixXd a = op.entries;
  a.diagonal().array() -= mu;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  if (!(lu.rcond() > 1e-14)) throw Error(ErrorCode::singular, "Hd/dx - mu is singular on this grid");
  return from_vector(G_rhs.grid(), lu.solve(Eigen::VectorXd(as_vector(G_rhs))));
}

}  // namespace deepwave
