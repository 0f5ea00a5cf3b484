#pragma once

#include <optional>
#include <string>

#include "deepwave/decay.hpp"
#include "deepwave/grid.hpp"
#include "deepwave/identities.hpp"

namespace deepwave {

enum class ProbeOutcome {
  collapsed_to_zero,
  diverged,
  stagnated,
  /// Residual below the solve tolerance with a profile above the collapse
  /// threshold. Kept as a separate label so it can never be folded into the
  /// other outcomes.
  converged_nontrivial,
};

const char* to_string(ProbeOutcome o) noexcept;

struct ProbeOptions {
  double collapse_threshold = 1e-8;  // sup |w|
  double divergence_factor = 1e3;    // relative to sup |w0|
  int max_newton = 50;
  int max_fixed_point = 200;
  double solve_tolerance = 1e-10;  // sup |F|
  /// Dense Jacobians up to this many nodes, matrix-free GMRES above.
  std::size_t dense_limit = 2048;
  int gmres_restart = 60;
  int gmres_max_iterations = 600;
  CertificateOptions certificate;
};

struct ProbeReport {
  std::string initial_label;
  double mu = 0.0;
  ProbeOutcome outcome = ProbeOutcome::stagnated;
  double final_sup_norm = 0.0;
  double final_residual = 0.0;  // sup |F|
  int newton_iterations = 0;
  int fixed_point_iterations = 0;
  /// Absent when the final profile is too small or too flat to fit.
  std::optional<DecayFit> decay;
  std::string decay_note;
  CertificateReport certificate;
  std::optional<Profile> final_profile;
};

/// Damped Newton on F(w; mu) = 0 over a line grid; if Newton stalls, a
/// preconditioned fixed-point iteration w <- (Hd/dx - mu)^{-1} mu (w Hw' + H(w w'))
/// continues from the last iterate.
ProbeReport newton_probe_line(const Profile& w0, double mu, const std::string& label = "",
                              const ProbeOptions& opts = {});

}  // namespace deepwave
