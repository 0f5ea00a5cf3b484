#include "deepwave/identities.hpp"

#include <cmath>
#include <numbers>

#include "deepwave/error.hpp"
#include "deepwave/transforms.hpp"

namespace deepwave {

namespace {

void require_line(const Profile& v, const char* op) {
  if (v.grid().is_periodic()) throw Error(ErrorCode::domain, std::string(op) + " requires a line grid");
}

Profile central_half(const Profile& v) {
  const Grid inner = v.grid().inner_half();
  const std::size_t off = v.size() / 4;
  return Profile(inner, std::vector<double>(v.values().begin() + off, v.values().begin() + off + inner.size()));
}

const LineOptions kUnchecked = LineOptions::unchecked();

double commutator_sup(const Profile& v) { return sup_norm(commutator_profile(v)); }

double skew_lhs(const Profile& v) {
  const Profile vp = derivative(v);
  return pairing(times_x(vp), hilbert_line(vp, kUnchecked));
}

double pohozaev_lhs(const WaveState& s) {
  const Profile f = residual_deep(s, kUnchecked).residual;
  return pairing(times_x(derivative(s.profile)), f);
}

}  // namespace

IdentityReport make_identity(std::string name, double lhs, double rhs, double tolerance) {
  IdentityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.defect = std::abs(lhs - rhs);
  r.tolerance = tolerance;
  r.passed = r.defect <= tolerance;
  return r;
}

Profile commutator_profile(const Profile& v) {
  require_line(v, "commutator_profile");
  const Profile vp = derivative_detrended(v);
  return hilbert_line(times_x(vp), kUnchecked) - times_x(hilbert_line(vp, kUnchecked));
}

IdentityReport commutator_defect(const Profile& v, double tolerance) {
  require_line(v, "commutator_defect");
  const double lhs = commutator_sup(v);
  const double rhs = std::abs(integral(derivative_detrended(v))) / std::numbers::pi;
  IdentityReport r = make_identity("commutator", lhs, rhs, tolerance);
  r.tail_estimate = lhs - commutator_sup(central_half(v));
  return r;
}

IdentityReport skew_pairing(const Profile& v, double tolerance) {
  require_line(v, "skew_pairing");
  const double lhs = skew_lhs(v);
  IdentityReport r = make_identity("skew_pairing", lhs, 0.0, tolerance);
  r.tail_estimate = lhs - skew_lhs(central_half(v));
  return r;
}

IdentityReport pohozaev_pairing(const WaveState& state, const LineOptions& opts, double rel_tolerance) {
  const Profile& w = state.profile;
  require_line(w, "pohozaev_pairing");
  check_decay(w, opts.tail_threshold, "w");
  const double w2 = pairing(w, w);
  const double lhs = pohozaev_lhs(state);
  IdentityReport r = make_identity("pohozaev", lhs, 0.5 * state.mu * w2, rel_tolerance * (1.0 + w2));
  r.tail_estimate = lhs - pohozaev_lhs(WaveState(central_half(w), state.mu));
  return r;
}

const char* to_string(CertificateVerdict v) noexcept {
  switch (v) {
    case CertificateVerdict::trivial: return "trivial";
    case CertificateVerdict::not_applicable: return "not_applicable";
    case CertificateVerdict::near_zero_certified: return "near_zero_certified";
    case CertificateVerdict::no_verdict_residual: return "no_verdict_residual";
    case CertificateVerdict::decay_too_slow: return "decay_too_slow";
    case CertificateVerdict::bound_violated: return "bound_violated";
  }
  return "unknown";
}

CertificateReport nonexistence_certificate(const WaveState& state, const DecayFit& decay,
                                           const CertificateOptions& opts) {
  const Profile& w = state.profile;
  require_line(w, "nonexistence_certificate");
  CertificateReport c;
  c.mu = state.mu;
  c.rho = decay.rho;
  c.superalgebraic = decay.superalgebraic;
  const ResidualReport f = residual_deep(state, kUnchecked);
  c.residual_sup = f.sup_norm;
  c.residual_l2 = f.l2_norm;
  c.w_l2_squared = pairing(w, w);
  const Profile xwp = times_x(derivative(w));
  c.xwp_l2 = l2_norm(xwp);
  c.pairing_lhs = pairing(xwp, f.residual);

  if (state.mu != 0.0) {
    const double scale = 2.0 / std::abs(state.mu);
    c.implied_bound = scale * std::abs(c.pairing_lhs);
    c.product_bound = scale * c.xwp_l2 * c.residual_l2;
    c.budget = scale * opts.rel_tolerance * (1.0 + c.w_l2_squared);
    c.bound_holds = c.w_l2_squared <= c.implied_bound + c.budget;
  }
  if (sup_norm(w) <= opts.zero_threshold) {
    c.verdict = CertificateVerdict::trivial;
    return c;
  }
  if (state.mu == 0.0) {
    c.verdict = CertificateVerdict::not_applicable;
    return c;
  }
  if (c.residual_sup > opts.residual_tolerance) {
    c.verdict = CertificateVerdict::no_verdict_residual;
  } else if (!decay.superalgebraic && decay.rho <= opts.rho_min) {
    c.verdict = CertificateVerdict::decay_too_slow;
  } else {
    c.verdict = c.bound_holds ? CertificateVerdict::near_zero_certified : CertificateVerdict::bound_violated;
  }
  return c;
}

}  // namespace deepwave
