#pragma once

#include <optional>
#include <string>

#include "deepwave/decay.hpp"
#include "deepwave/grid.hpp"
#include "deepwave/steady.hpp"

namespace deepwave {

struct IdentityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double defect = 0.0;  // |lhs - rhs|
  double tolerance = 0.0;
  bool passed = false;
  /// lhs(L) - lhs(L/2), from a second evaluation on the central half of a line
  /// grid. Adding it to lhs extrapolates the truncated value.
  std::optional<double> tail_estimate;
};

IdentityReport make_identity(std::string name, double lhs, double rhs, double tolerance);

/// H(x v') - x H(v') on a line grid, odd-even quadrature, v' from
/// derivative_detrended so that non-decaying v such as arctan are admissible.
Profile commutator_profile(const Profile& v);

/// lhs = sup |H(x v') - x H(v')|, rhs = |(1/pi) int v'|.
IdentityReport commutator_defect(const Profile& v, double tolerance = 1e-6);

/// lhs = int x v' Hv', rhs = 0.
IdentityReport skew_pairing(const Profile& v, double tolerance = 1e-6);

/// Relative part of the pohozaev tolerance: defect <= rel * (1 + int w^2).
inline constexpr double kPohozaevRelTolerance = 1e-5;

/// lhs = int x w' F(w; mu), rhs = (mu / 2) int w^2. The tail check on w uses
/// opts.tail_threshold; transforms inside run unchecked on the odd-even rule.
IdentityReport pohozaev_pairing(const WaveState& state, const LineOptions& opts = {},
                                double rel_tolerance = kPohozaevRelTolerance);

enum class CertificateVerdict {
  trivial,  // sup |w| <= zero_threshold
  not_applicable,
  near_zero_certified,
  no_verdict_residual,
  decay_too_slow,
  bound_violated,
};

const char* to_string(CertificateVerdict v) noexcept;

struct CertificateOptions {
  /// sup |F| above which no statement about w is made.
  double residual_tolerance = 1e-8;
  /// Decay exponent required by the theorem's hypothesis.
  double rho_min = 1.5;
  double rel_tolerance = kPohozaevRelTolerance;
  /// sup |w| at or below which the profile counts as zero.
  double zero_threshold = 1e-8;
};

struct CertificateReport {
  double mu = 0.0;
  double residual_sup = 0.0;
  double residual_l2 = 0.0;
  double w_l2_squared = 0.0;
  double xwp_l2 = 0.0;
  double pairing_lhs = 0.0;
  /// (2/|mu|) |int x w' F|; zero when mu = 0.
  double implied_bound = 0.0;
  /// (2/|mu|) ||x w'|| ||F||, the Cauchy-Schwarz form of the bound.
  double product_bound = 0.0;
  /// (2/|mu|) times the pohozaev quadrature tolerance.
  double budget = 0.0;
  double rho = 0.0;
  bool superalgebraic = false;
  /// ||w||^2 <= implied_bound + budget, evaluated as computed.
  bool bound_holds = true;
  CertificateVerdict verdict = CertificateVerdict::trivial;
};

CertificateReport nonexistence_certificate(const WaveState& state, const DecayFit& decay,
                                           const CertificateOptions& opts = {});

}  // namespace deepwave
