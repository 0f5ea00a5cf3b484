#include <doctest.h>

#include <cmath>

#include "deepwave/identities.hpp"
#include "deepwave/solitary.hpp"
#include "deepwave/steady.hpp"
#include "deepwave/templates.hpp"

using namespace deepwave;

namespace {
bool decaying_regime(const ProbeReport& r) {
  return r.outcome == ProbeOutcome::collapsed_to_zero || (r.decay && (r.decay->superalgebraic || r.decay->rho > 1.5));
}

void check_contract(const ProbeReport& r) {
  CAPTURE(r.initial_label);
  CAPTURE(r.mu);
  CAPTURE(std::string(to_string(r.outcome)));
  if (r.outcome == ProbeOutcome::collapsed_to_zero) CHECK(r.final_sup_norm <= 1e-8);
  if (r.mu > 0) {
    const bool certified_regime = r.decay && (r.decay->superalgebraic || r.decay->rho >= 1.6);
    CHECK((r.outcome == ProbeOutcome::collapsed_to_zero || r.final_residual > 1e-8 || !certified_regime));
  }
  // A nontrivial converged profile can only be one that does not decay.
  if (r.outcome == ProbeOutcome::converged_nontrivial) {
    REQUIRE(r.decay.has_value());
    CHECK(r.decay->rho < 1.5);
    CHECK(r.certificate.verdict == CertificateVerdict::decay_too_slow);
  }
  // The certificate inequality rests on the pairing identity, which needs
  // decay; inside that regime it must hold as computed.
  const CertificateReport& c = r.certificate;
  if (c.mu != 0.0) {
    CHECK((c.w_l2_squared <= c.implied_bound + c.budget) == c.bound_holds);
    if (decaying_regime(r)) CHECK(c.bound_holds);
  }
}
}  // namespace

TEST_CASE("zero initial guess collapses immediately") {
  const ProbeReport r = newton_probe_line(Profile::zeros(Grid::line(256, 32)), 1.0, "zero");
  CHECK(r.outcome == ProbeOutcome::collapsed_to_zero);
  CHECK(r.newton_iterations == 0);
  CHECK(r.final_sup_norm == 0.0);
  CHECK(r.certificate.verdict == CertificateVerdict::trivial);
  CHECK(r.initial_label == "zero");
}

TEST_CASE("sech2 guess on a fine grid does not converge to a decaying wave") {
  // On this box Newton can land on a periodic wave with 32 crests filling
  // [-L, L) (wavenumber 2 pi 32 / 200 just above mu). It is a solution of the
  // truncated problem, has rho near 0, and is reported as such.
  const Grid g = Grid::line(1 << 13, 100);
  const ProbeReport r = newton_probe_line(make_template(g, {"sech2", {{"amplitude", 0.3}}}), 1.0, "sech2");
  CHECK((r.outcome == ProbeOutcome::collapsed_to_zero || r.outcome == ProbeOutcome::diverged ||
         r.outcome == ProbeOutcome::converged_nontrivial));
  check_contract(r);
  if (r.outcome == ProbeOutcome::converged_nontrivial) {
    REQUIRE(r.final_profile.has_value());
    // sup |w| is attained across the whole box, not near the origin
    const Profile& w = *r.final_profile;
    double edge = 0.0;
    for (std::size_t i = g.size() / 10; i < g.size() / 5; ++i) edge = std::max(edge, std::abs(w[i]));
    CHECK(edge > 0.5 * r.final_sup_norm);
  }
}

TEST_CASE("oscillatory guess obeys the same contract") {
  const Grid g = Grid::line(1024, 64);
  const ProbeReport r = newton_probe_line(
      make_template(g, {"wavepacket", {{"amplitude", 0.3}, {"width", 5.0}, {"wavenumber", 1.0}}}), 1.0, "packet");
  check_contract(r);
}

TEST_CASE("small campaign across signs and mu") {
  const Grid g = Grid::line(512, 48);
  for (double mu : {0.5, 1.0, 2.0}) {
    for (double A : {0.2, -0.2}) {
      const ProbeReport r = newton_probe_line(make_template(g, {"sech2", {{"amplitude", A}}}), mu);
      check_contract(r);
      if (r.final_profile) CHECK(r.final_profile->size() == g.size());
    }
  }
}

TEST_CASE("collapsed iterates satisfy the certificate as near-zero") {
  const Grid g = Grid::line(512, 48);
  const ProbeReport r = newton_probe_line(make_template(g, {"gaussian", {{"amplitude", 0.1}}}), 1.0);
  REQUIRE(r.outcome == ProbeOutcome::collapsed_to_zero);
  CHECK(r.final_residual <= 1e-8);
  CHECK(std::sqrt(r.certificate.w_l2_squared) <= 1e-6);
}

TEST_CASE("probe outcome names") {
  CHECK(std::string(to_string(ProbeOutcome::collapsed_to_zero)) == "collapsed_to_zero");
  CHECK(std::string(to_string(ProbeOutcome::diverged)) == "diverged");
  CHECK(std::string(to_string(ProbeOutcome::stagnated)) == "stagnated");
  CHECK(std::string(to_string(ProbeOutcome::converged_nontrivial)) == "converged_nontrivial");
}
