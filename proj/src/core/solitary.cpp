#include "deepwave/solitary.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/IterativeSolvers>

#include "deepwave/error.hpp"
#include "deepwave/linearized.hpp"
#include "deepwave/steady.hpp"

namespace deepwave {
namespace {
class JacobianAction;
}
}  // namespace deepwave

namespace Eigen::internal {
template <>
struct traits<deepwave::JacobianAction> : public traits<Eigen::SparseMatrix<double>> {};
}  // namespace Eigen::internal

namespace deepwave {

namespace {

const LineOptions kUnchecked = LineOptions::unchecked();

// Matrix-free L(w; mu) for Eigen's GMRES.
class JacobianAction : public Eigen::EigenBase<JacobianAction> {
 public:
  using Scalar = double;
  using RealScalar = double;
  using StorageIndex = int;
  enum { ColsAtCompileTime = Eigen::Dynamic, MaxColsAtCompileTime = Eigen::Dynamic, IsRowMajor = false };

  explicit JacobianAction(const WaveState& s) : state_(&s) {}
  Eigen::Index rows() const { return static_cast<Eigen::Index>(state_->profile.size()); }
  Eigen::Index cols() const { return rows(); }

  template <typename Rhs>
  Eigen::Product<JacobianAction, Rhs, Eigen::AliasFreeProduct> operator*(const Eigen::MatrixBase<Rhs>& x) const {
    return Eigen::Product<JacobianAction, Rhs, Eigen::AliasFreeProduct>(*this, x.derived());
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    const Profile v(state_->profile.grid(), std::vector<double>(x.data(), x.data() + x.size()));
    const Profile r = apply_L(v, *state_, kUnchecked);
    return Eigen::Map<const Eigen::VectorXd>(r.values().data(), x.size());
  }
  const WaveState& state() const { return *state_; }

 private:
  const WaveState* state_;
};

// (|xi| - mu)^{-1} on the periodized line, with the resonant band clamped.
Profile linear_inverse(const Profile& v, double mu) {
  const double floor = std::numbers::pi / v.grid().half_width();
  return fourier_multiplier(v, [mu, floor](double xi) {
    double d = std::abs(xi) - mu;
    if (std::abs(d) < floor) d = d < 0 ? -floor : floor;
    return std::complex<double>(1.0 / d);
  });
}

class LinearPreconditioner {
 public:
  LinearPreconditioner() = default;
  template <typename M>
  LinearPreconditioner& analyzePattern(const M&) { return *this; }
  template <typename M>
  LinearPreconditioner& factorize(const M& m) { return compute(m); }
  LinearPreconditioner& compute(const JacobianAction& m) {
    grid_ = &m.state().profile.grid();
    mu_ = m.state().mu;
    return *this;
  }
  template <typename Rhs>
  Eigen::VectorXd solve(const Rhs& b) const {
    const Eigen::VectorXd bb = b;
    const Profile p = linear_inverse(Profile(*grid_, std::vector<double>(bb.data(), bb.data() + bb.size())), mu_);
    return Eigen::Map<const Eigen::VectorXd>(p.values().data(), bb.size());
  }
  Eigen::ComputationInfo info() { return Eigen::Success; }

 private:
  const Grid* grid_ = nullptr;
  double mu_ = 0.0;
};

}  // namespace
}  // namespace deepwave

namespace Eigen::internal {
template <typename Rhs>
struct generic_product_impl<deepwave::JacobianAction, Rhs, SparseShape, DenseShape, GemvProduct>
    : generic_product_impl_base<deepwave::JacobianAction, Rhs,
                                generic_product_impl<deepwave::JacobianAction, Rhs>> {
  using Scalar = typename Product<deepwave::JacobianAction, Rhs>::Scalar;
  template <typename Dest>
  static void scaleAndAddTo(Dest& dst, const deepwave::JacobianAction& lhs, const Rhs& rhs, const Scalar& alpha) {
    dst.noalias() += alpha * lhs.apply(rhs);
  }
};
}  // namespace Eigen::internal

namespace deepwave {

const char* to_string(ProbeOutcome o) noexcept {
  switch (o) {
    case ProbeOutcome::collapsed_to_zero: return "collapsed_to_zero";
    case ProbeOutcome::diverged: return "diverged";
    case ProbeOutcome::stagnated: return "stagnated";
    case ProbeOutcome::converged_nontrivial: return "converged_nontrivial";
  }
  return "unknown";
}

namespace {

enum class Step { keep_going, collapsed, converged, diverged };

struct Iterate {
  Profile w;
  Profile f;
  double sup_w;
  double sup_f;
};

Iterate evaluate(const Profile& w, double mu) {
  Profile f = residual_deep(WaveState(w, mu), kUnchecked).residual;
  const double sf = sup_norm(f);
  return {w, std::move(f), sup_norm(w), sf};
}

Step classify(const Iterate& it, double w0_sup, const ProbeOptions& o) {
  if (it.sup_w <= o.collapse_threshold) return Step::collapsed;
  if (it.sup_w > o.divergence_factor * std::max(w0_sup, o.collapse_threshold)) return Step::diverged;
  if (it.sup_f <= o.solve_tolerance) return Step::converged;
  return Step::keep_going;
}

std::optional<Eigen::VectorXd> newton_direction(const Iterate& it, double mu, const ProbeOptions& o) {
  const WaveState s(it.w, mu);
  const Eigen::Map<const Eigen::VectorXd> f(it.f.values().data(), static_cast<Eigen::Index>(it.f.size()));
  if (it.w.size() <= o.dense_limit) {
    const Eigen::MatrixXd j = assemble_L(s, kUnchecked).entries;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(j);
    if (!(lu.rcond() > 1e-15)) return std::nullopt;
    return Eigen::VectorXd(lu.solve(-f));
  }
  JacobianAction a(s);
  Eigen::GMRES<JacobianAction, LinearPreconditioner> gmres;
  gmres.set_restart(o.gmres_restart);
  gmres.setMaxIterations(o.gmres_max_iterations);
  gmres.setTolerance(1e-8);
  gmres.compute(a);
  Eigen::VectorXd d = gmres.solve(-f);
  if (!d.allFinite()) return std::nullopt;
  return d;
}

Profile step_by(const Profile& w, const Eigen::VectorXd& d, double t) {
  std::vector<double> r(w.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = w[i] + t * d(static_cast<Eigen::Index>(i));
  for (double x : r)
    if (!std::isfinite(x)) return w;
  return Profile(w.grid(), std::move(r));
}

}  // namespace

ProbeReport newton_probe_line(const Profile& w0, double mu, const std::string& label, const ProbeOptions& o) {
  if (w0.grid().is_periodic()) throw Error(ErrorCode::domain, "newton_probe_line requires a line grid");
  ProbeReport rep;
  rep.initial_label = label;
  rep.mu = mu;
  const double w0_sup = sup_norm(w0);
  Iterate cur = evaluate(w0, mu);
  Step state = classify(cur, w0_sup, o);

  for (int k = 0; state == Step::keep_going && k < o.max_newton; ++k) {
    auto d = newton_direction(cur, mu, o);
    if (!d) break;
    ++rep.newton_iterations;
    const double r0 = l2_norm(cur.f);
    double t = 1.0;
    bool accepted = false;
    while (t > 1e-6) {
      Iterate trial = evaluate(step_by(cur.w, *d, t), mu);
      if (std::isfinite(trial.sup_f) && l2_norm(trial.f) <= (1.0 - 1e-4 * t) * r0) {
        cur = std::move(trial);
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    state = classify(cur, w0_sup, o);
  }

  // fixed-point fallback: (Hd/dx - mu) w = mu (w Hw' + H(w w'))
  for (int k = 0; state == Step::keep_going && k < o.max_fixed_point; ++k) {
    const Profile& w = cur.w;
    const Profile wp = derivative(w);
    const Profile q = w * hilbert_line(wp, kUnchecked) + hilbert_line(w * wp, kUnchecked);
    std::vector<double> next = linear_inverse(mu * q, mu).vector();
    bool finite = true;
    for (double x : next) finite = finite && std::isfinite(x);
    ++rep.fixed_point_iterations;
    if (!finite) {
      state = Step::diverged;
      break;
    }
    cur = evaluate(Profile(w.grid(), std::move(next)), mu);
    state = classify(cur, w0_sup, o);
  }

  switch (state) {
    case Step::collapsed: rep.outcome = ProbeOutcome::collapsed_to_zero; break;
    case Step::diverged: rep.outcome = ProbeOutcome::diverged; break;
    case Step::converged: rep.outcome = ProbeOutcome::converged_nontrivial; break;
    case Step::keep_going: rep.outcome = ProbeOutcome::stagnated; break;
  }
  rep.final_sup_norm = cur.sup_w;
  rep.final_residual = cur.sup_f;

  DecayFit fit;
  if (cur.sup_w > o.collapse_threshold) {
    try {
      fit = decay_rate_fit(cur.w);
      rep.decay = fit;
    } catch (const Error& e) {
      rep.decay_note = e.what();
    }
  } else {
    rep.decay_note = "profile below collapse threshold";
  }
  rep.certificate = nonexistence_certificate(WaveState(cur.w, mu), fit, o.certificate);
  rep.final_profile = cur.w;
  return rep;
}

}  // namespace deepwave
